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

#include "aqored/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "aqored/errors.hpp"

namespace aqored {

SymMatrix::SymMatrix(std::size_t dim) : m_(Eigen::MatrixXd::Zero(dim, dim)) {}

SymMatrix::SymMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw InvalidInput("SymMatrix: matrix is not square");
  for (Eigen::Index j = 0; j < m_.cols(); ++j)
    for (Eigen::Index i = 0; i < j; ++i)
      if (m_(i, j) != m_(j, i)) throw InvalidInput("SymMatrix: matrix is not symmetric");
}

SymMatrix SymMatrix::identity(std::size_t dim) {
  return SymMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& d) {
  SymMatrix out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out.m_(i, i) = d[i];
  return out;
}

double SymMatrix::max_abs() const { return m_.size() ? m_.cwiseAbs().maxCoeff() : 0.0; }

namespace {

void check_finite(const SymMatrix& m) {
  if (m.dim() == 0) throw InvalidInput("eigh: empty matrix");
  if (!m.dense().allFinite()) throw InvalidInput("eigh: non-finite matrix entry");
}

}  // namespace

EigenDecomposition eigh(const SymMatrix& m) {
  check_finite(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.dense(), Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw Error("eigh: eigensolver did not converge");
  EigenDecomposition out;
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + m.dim());
  out.vectors = es.eigenvectors();
  return out;
}

std::vector<double> eigvalsh(const SymMatrix& m) {
  check_finite(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.dense(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("eigvalsh: eigensolver did not converge");
  return {es.eigenvalues().data(), es.eigenvalues().data() + m.dim()};
}

CholFactor pivoted_psd_cholesky(const SymMatrix& g, double tol) {
  const std::size_t k = g.dim();
  if (k == 0) throw InvalidInput("pivoted_psd_cholesky: empty matrix");
  if (!g.dense().allFinite()) throw InvalidInput("pivoted_psd_cholesky: non-finite entry");
  if (!(tol > 0)) throw InvalidInput("pivoted_psd_cholesky: tolerance must be positive");

  Eigen::VectorXd d = g.dense().diagonal();
  const double maxdiag = std::max(d.maxCoeff(), 0.0);
  CholFactor out;
  out.tolerance = tol;
  if (d.minCoeff() < -10.0 * tol * std::max(maxdiag, 1.0))
    throw NotPositiveSemidefinite("pivoted_psd_cholesky: negative diagonal entry");
  if (maxdiag == 0.0) {
    out.factor = Eigen::MatrixXd::Zero(0, k);
    return out;
  }

  const double drop = tol * maxdiag;
  std::vector<bool> used(k, false);
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(k, k);
  std::size_t r = 0;
  for (; r < k; ++r) {
    std::size_t p = k;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
      if (used[j]) continue;
      if (d(j) < -10.0 * drop)
        throw NotPositiveSemidefinite("pivoted_psd_cholesky: pivot remainder " +
                                      std::to_string(d(j)) + " below tolerance");
      if (d(j) > best) {
        best = d(j);
        p = j;
      }
    }
    if (p == k || best <= drop) break;
    used[p] = true;
    out.pivots.push_back(p);
    const double piv = std::sqrt(best);
    for (std::size_t j = 0; j < k; ++j) {
      if (used[j] && j != p) continue;
      double v = g(p, j);
      for (std::size_t t = 0; t < r; ++t) v -= rows(t, p) * rows(t, j);
      rows(r, j) = (j == p) ? piv : v / piv;
    }
    for (std::size_t j = 0; j < k; ++j)
      if (!used[j]) d(j) -= rows(r, j) * rows(r, j);
  }
  // Any remaining diagonal must still be non-negative within tolerance.
  for (std::size_t j = 0; j < k; ++j)
    if (!used[j] && d(j) < -10.0 * drop)
      throw NotPositiveSemidefinite("pivoted_psd_cholesky: pivot remainder " +
                                    std::to_string(d(j)) + " below tolerance");
  out.rank = r;
  out.factor = rows.topRows(r);
  // Append the unpivoted indices so pivots is a full permutation.
  for (std::size_t j = 0; j < k; ++j)
    if (!used[j]) out.pivots.push_back(j);
  return out;
}

}  // namespace aqored
