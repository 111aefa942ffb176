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

#ifndef AQORED_REDUCTION_HPP
#define AQORED_REDUCTION_HPP

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "aqored/linalg.hpp"
#include "aqored/signed_log.hpp"

namespace aqored {

/// One degenerate eigenspace of H_A together with the projector data on it.
struct Level {
  double energy = 0.0;
  SignedLogReal degeneracy;  // lambda(E), kept in log form for large n
  std::vector<double> z;     // Z_alpha(E) = |P_E psi_alpha|
  SymMatrix gram;            // <E_alpha|E_beta>, normalized projections
};

/// Level structure of H(s) = a(s) H_A + b(s) H_B at one value of s.
struct LevelDecomposition {
  double s = 0.0;
  double a_coeff = 0.0;
  double b_coeff = 0.0;
  int qubits = 0;                // sum of degeneracies must equal 2^qubits
  std::size_t projector_count = 0;
  std::vector<Level> levels;
};

/// The chi_alpha(s) of H_B = sum_alpha chi_alpha |psi_alpha><psi_alpha|.
struct ProjectorWeights {
  std::size_t count = 0;
  std::function<std::vector<double>(double)> chi;

  std::vector<double> at(double s) const;
};

struct BasisLabel {
  std::size_t level = 0;  // index into LevelDecomposition::levels
  double energy = 0.0;
  std::size_t mu = 0;
};

struct EffectiveHamiltonian {
  SymMatrix matrix;
  std::vector<BasisLabel> basis;
  std::vector<std::size_t> kappa;  // per level
};

struct FactoredLevel {
  double value = 0.0;
  double multiplicity = 0.0;  // lambda(E) - kappa(E); exact integer below 2^53
};

struct SpectrumReconstruction {
  std::vector<double> reduced_eigs;  // ascending
  std::vector<FactoredLevel> factored_levels;

  double total_multiplicity() const;
  /// Every eigenvalue with multiplicity, ascending. Refuses above max_size.
  std::vector<double> expanded(std::size_t max_size = std::size_t{1} << 22) const;
  /// The m smallest eigenvalues with multiplicity, ascending.
  std::vector<double> lowest(std::size_t m) const;
  /// E_1 - E_0 over the whole multiset.
  double gap() const;
};

/// Cholesky factor of one level Gram restricted to the projectors with Z > 0.
/// The returned factor has one column per projector; inactive columns are zero.
std::pair<CholFactor, std::size_t> orthogonalize_level(const SymMatrix& gram,
                                                       const std::vector<double>& z,
                                                       double tol = kDefaultCholTol);

/// Checks the documented invariants of a decomposition; throws ModelError.
void validate_decomposition(const LevelDecomposition& decomp);

EffectiveHamiltonian assemble_effective(const LevelDecomposition& decomp,
                                        const ProjectorWeights& weights);

SpectrumReconstruction reconstruct_full_spectrum(const LevelDecomposition& decomp,
                                                 const EffectiveHamiltonian& eff);

}  // namespace aqored

#endif  // AQORED_REDUCTION_HPP
