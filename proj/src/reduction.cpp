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

#include "aqored/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "aqored/errors.hpp"

namespace aqored {

namespace {

constexpr double kInvariantTol = 1e-10;

double degeneracy_value(const SignedLogReal& d) {
  const double v = d.to_double();
  return v < 9.0e15 ? std::round(v) : v;
}

}  // namespace

std::vector<double> ProjectorWeights::at(double s) const {
  if (!chi) throw InvalidInput("ProjectorWeights: chi is not set");
  auto v = chi(s);
  if (v.size() != count)
    throw InvalidInput("ProjectorWeights: chi returned " + std::to_string(v.size()) +
                       " values, expected " + std::to_string(count));
  for (double x : v)
    if (!std::isfinite(x)) throw InvalidInput("ProjectorWeights: non-finite chi");
  return v;
}

double SpectrumReconstruction::total_multiplicity() const {
  double t = static_cast<double>(reduced_eigs.size());
  for (const auto& f : factored_levels) t += f.multiplicity;
  return t;
}

std::vector<double> SpectrumReconstruction::expanded(std::size_t max_size) const {
  const double total = total_multiplicity();
  if (total > static_cast<double>(max_size))
    throw InvalidInput("SpectrumReconstruction: spectrum too large to expand");
  std::vector<double> out(reduced_eigs);
  for (const auto& f : factored_levels)
    out.insert(out.end(), static_cast<std::size_t>(f.multiplicity), f.value);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> SpectrumReconstruction::lowest(std::size_t m) const {
  std::vector<FactoredLevel> f(factored_levels);
  std::sort(f.begin(), f.end(), [](auto& a, auto& b) { return a.value < b.value; });
  std::vector<double> out;
  out.reserve(m);
  std::size_t i = 0, j = 0;
  double used = 0.0;
  while (out.size() < m) {
    const bool have_r = i < reduced_eigs.size();
    const bool have_f = j < f.size();
    if (!have_r && !have_f) break;
    if (have_f && (!have_r || f[j].value < reduced_eigs[i])) {
      out.push_back(f[j].value);
      if (++used >= f[j].multiplicity) {
        ++j;
        used = 0.0;
      }
    } else {
      out.push_back(reduced_eigs[i++]);
    }
  }
  return out;
}

double SpectrumReconstruction::gap() const {
  auto lo = lowest(2);
  if (lo.size() < 2) throw InvalidInput("SpectrumReconstruction: fewer than two eigenvalues");
  return lo[1] - lo[0];
}

std::pair<CholFactor, std::size_t> orthogonalize_level(const SymMatrix& gram,
                                                       const std::vector<double>& z,
                                                       double tol) {
  const std::size_t k = z.size();
  if (gram.dim() != k) throw InvalidInput("orthogonalize_level: gram/Z size mismatch");
  std::vector<std::size_t> active;
  for (std::size_t a = 0; a < k; ++a)
    if (z[a] > 0.0) active.push_back(a);

  CholFactor full;
  full.tolerance = tol;
  if (active.empty()) {
    full.factor = Eigen::MatrixXd::Zero(0, k);
    for (std::size_t a = 0; a < k; ++a) full.pivots.push_back(a);
    return {full, 0};
  }
  SymMatrix sub(active.size());
  for (std::size_t i = 0; i < active.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) sub.set(i, j, gram(active[i], active[j]));

  CholFactor c;
  try {
    c = pivoted_psd_cholesky(sub, tol);
  } catch (const NotPositiveSemidefinite& e) {
    throw ModelError(std::string("level Gram matrix: ") + e.what());
  }
  full.rank = c.rank;
  full.factor = Eigen::MatrixXd::Zero(c.rank, k);
  for (std::size_t i = 0; i < active.size(); ++i) full.factor.col(active[i]) = c.factor.col(i);
  for (std::size_t p : c.pivots) full.pivots.push_back(active[p]);
  for (std::size_t a = 0; a < k; ++a)
    if (z[a] <= 0.0) full.pivots.push_back(a);
  return {full, c.rank};
}

void validate_decomposition(const LevelDecomposition& d) {
  const std::size_t k = d.projector_count;
  if (k == 0) throw ModelError("decomposition has no projectors");
  if (d.levels.empty()) throw ModelError("decomposition has no levels");
  if (!std::isfinite(d.a_coeff) || !std::isfinite(d.b_coeff))
    throw ModelError("non-finite a(s) or b(s)");
  std::vector<double> completeness(k, 0.0);
  std::vector<SignedLogReal> degs;
  for (std::size_t l = 0; l < d.levels.size(); ++l) {
    const Level& lv = d.levels[l];
    const std::string where = "level " + std::to_string(l) + ": ";
    if (lv.z.size() != k || lv.gram.dim() != k)
      throw ModelError(where + "Z or Gram size differs from projector count");
    if (lv.degeneracy.sign <= 0) throw ModelError(where + "degeneracy must be positive");
    if (!std::isfinite(lv.energy)) throw ModelError(where + "non-finite energy");
    for (std::size_t a = 0; a < k; ++a) {
      if (!(lv.z[a] >= 0.0) || !std::isfinite(lv.z[a])) throw ModelError(where + "bad Z value");
      completeness[a] += lv.z[a] * lv.z[a];
      for (std::size_t b = 0; b < k; ++b) {
        if (lv.z[a] > 0.0 && lv.z[b] > 0.0 && std::fabs(lv.gram(a, b)) > 1.0 + kInvariantTol)
          throw ModelError(where + "Gram entry exceeds 1 in magnitude");
      }
      if (lv.z[a] > 0.0 && std::fabs(lv.gram(a, a) - 1.0) > kInvariantTol)
        throw ModelError(where + "Gram diagonal differs from 1");
    }
    degs.push_back(lv.degeneracy);
  }
  for (std::size_t a = 0; a < k; ++a)
    if (std::fabs(completeness[a] - 1.0) > kInvariantTol)
      throw ModelError("projector " + std::to_string(a) + ": sum of Z^2 is " +
                       std::to_string(completeness[a]));
  const SignedLogReal total = signed_logsumexp(degs);
  if (std::fabs(total.logmag - d.qubits * std::numbers::ln2) > kInvariantTol * (1.0 + d.qubits))
    throw ModelError("level degeneracies do not sum to 2^n");
}

EffectiveHamiltonian assemble_effective(const LevelDecomposition& decomp,
                                        const ProjectorWeights& weights) {
  if (weights.count != decomp.projector_count)
    throw InvalidInput("assemble_effective: projector count mismatch between Z and chi");
  validate_decomposition(decomp);
  const std::vector<double> chi = weights.at(decomp.s);
  const std::size_t k = decomp.projector_count;

  EffectiveHamiltonian eff;
  std::vector<Eigen::MatrixXd> blocks;  // rows of W per level
  std::size_t dim = 0;
  for (std::size_t l = 0; l < decomp.levels.size(); ++l) {
    const Level& lv = decomp.levels[l];
    auto [t, kappa] = orthogonalize_level(lv.gram, lv.z);
    if (static_cast<double>(kappa) > degeneracy_value(lv.degeneracy))
      throw ModelError("level " + std::to_string(l) + ": rank exceeds degeneracy");
    eff.kappa.push_back(kappa);
    Eigen::MatrixXd w = t.factor;
    for (std::size_t a = 0; a < k; ++a) w.col(a) *= lv.z[a];
    blocks.push_back(std::move(w));
    for (std::size_t mu = 0; mu < kappa; ++mu) eff.basis.push_back({l, lv.energy, mu});
    dim += kappa;
  }
  if (dim == 0) throw ModelError("assemble_effective: effective subspace is empty");

  Eigen::MatrixXd w(dim, k);
  Eigen::VectorXd diag_a(dim);
  std::size_t row = 0;
  for (std::size_t l = 0; l < blocks.size(); ++l) {
    const auto r = static_cast<Eigen::Index>(blocks[l].rows());
    if (r == 0) continue;
    w.middleRows(static_cast<Eigen::Index>(row), r) = blocks[l];
    diag_a.segment(static_cast<Eigen::Index>(row), r).setConstant(decomp.a_coeff *
                                                                  decomp.levels[l].energy);
    row += static_cast<std::size_t>(r);
  }
  Eigen::VectorXd bchi(k);
  for (std::size_t a = 0; a < k; ++a) bchi(a) = decomp.b_coeff * chi[a];
  Eigen::MatrixXd h = w * bchi.asDiagonal() * w.transpose();
  h = 0.5 * (h + h.transpose()).eval();
  h.diagonal() += diag_a;
  eff.matrix = SymMatrix(std::move(h));
  return eff;
}

SpectrumReconstruction reconstruct_full_spectrum(const LevelDecomposition& decomp,
                                                 const EffectiveHamiltonian& eff) {
  if (eff.kappa.size() != decomp.levels.size())
    throw InvalidInput("reconstruct_full_spectrum: effective Hamiltonian from another decomposition");
  SpectrumReconstruction out;
  out.reduced_eigs = eigvalsh(eff.matrix);
  for (std::size_t l = 0; l < decomp.levels.size(); ++l) {
    const double mult =
        degeneracy_value(decomp.levels[l].degeneracy) - static_cast<double>(eff.kappa[l]);
    if (mult > 0.0) out.factored_levels.push_back({decomp.a_coeff * decomp.levels[l].energy, mult});
  }
  return out;
}

}  // namespace aqored
