// Copyright 2026 The aqored Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AQORED_LINALG_HPP
#define AQORED_LINALG_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace aqored {

/// Dense real symmetric matrix. Writes through set() update both triangles.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim);
  /// Takes a full square matrix; throws InvalidInput unless exactly symmetric.
  explicit SymMatrix(Eigen::MatrixXd m);

  static SymMatrix identity(std::size_t dim);
  static SymMatrix diagonal(const std::vector<double>& d);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  void set(std::size_t i, std::size_t j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  void add(std::size_t i, std::size_t j, double v) {
    m_(i, j) += v;
    if (i != j) m_(j, i) += v;
  }
  const Eigen::MatrixXd& dense() const { return m_; }
  double max_abs() const;

 private:
  Eigen::MatrixXd m_;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Eigen::MatrixXd vectors;     // orthonormal columns
};

/// Full symmetric eigendecomposition. Throws InvalidInput on non-finite entries.
EigenDecomposition eigh(const SymMatrix& m);

/// Eigenvalues only, ascending.
std::vector<double> eigvalsh(const SymMatrix& m);

/// Rank-revealing Cholesky factor of a PSD matrix.
///
/// factor is rank x k with columns in the original ordering, so
/// factor^T factor approximates the input Gram directly. pivots lists the
/// original indices in elimination order.
struct CholFactor {
  Eigen::MatrixXd factor;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  double tolerance = 0.0;
};

inline constexpr double kDefaultCholTol = 1e-12;

/// Diagonal-pivoted Cholesky for positive-semidefinite input.
///
/// Elimination stops once the largest remaining diagonal is at most
/// tol * (largest initial diagonal). A remainder below -10 * tol * maxdiag
/// raises NotPositiveSemidefinite.
CholFactor pivoted_psd_cholesky(const SymMatrix& g, double tol = kDefaultCholTol);

}  // namespace aqored

#endif  // AQORED_LINALG_HPP
