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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "aqored/errors.hpp"
#include "aqored/models.hpp"
#include "aqored/oracle.hpp"
#include "aqored/reduction.hpp"
#include "doctest.h"

using namespace aqored;

namespace {

Level make_level(double energy, double degeneracy, std::vector<double> z, SymMatrix gram) {
  Level l;
  l.energy = energy;
  l.degeneracy = SignedLogReal::from_double(degeneracy);
  l.z = std::move(z);
  l.gram = std::move(gram);
  return l;
}

ProjectorWeights constant_weights(std::vector<double> chi) {
  ProjectorWeights w;
  w.count = chi.size();
  w.chi = [chi](double) { return chi; };
  return w;
}

// Random H_A levels and random projector vectors in an explicit 2^n space.
// The decomposition is computed straight from the vectors and the full
// Hamiltonian a diag(E) + b sum chi |psi><psi| is diagonalized densely.
struct Synthetic {
  LevelDecomposition decomp;
  ProjectorWeights weights;
  std::vector<double> full;
};

Synthetic synthetic_case(int n, std::size_t levels, std::size_t k, std::mt19937_64& rng) {
  const std::size_t dim = std::size_t{1} << n;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::size_t> level_of(dim);
  for (std::size_t x = 0; x < dim; ++x) level_of[x] = x < levels ? x : rng() % levels;
  std::shuffle(level_of.begin(), level_of.end(), rng);
  // level 0 keeps a single state so that its projections are collinear
  const std::size_t single = std::find(level_of.begin(), level_of.end(), 0) - level_of.begin();
  for (std::size_t x = 0; x < dim; ++x)
    if (level_of[x] == 0 && x != single) level_of[x] = 1 + rng() % (levels - 1);

  std::vector<double> energy(levels);
  for (double& e : energy) e = 2.0 * u(rng);
  Eigen::MatrixXd psi(dim, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t x = 0; x < dim; ++x) psi(x, a) = u(rng);
  // the last projector avoids level 1 entirely
  for (std::size_t x = 0; x < dim; ++x)
    if (level_of[x] == 1) psi(x, k - 1) = 0.0;
  psi.colwise().normalize();
  std::vector<double> chi(k);
  for (double& c : chi) c = u(rng);
  const double a = 0.7, b = 0.45;

  Synthetic out;
  out.decomp.s = 0.3;
  out.decomp.a_coeff = a;
  out.decomp.b_coeff = b;
  out.decomp.qubits = n;
  out.decomp.projector_count = k;
  for (std::size_t l = 0; l < levels; ++l) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, k);
    double count = 0;
    for (std::size_t x = 0; x < dim; ++x)
      if (level_of[x] == l) {
        p.row(x) = psi.row(x);
        ++count;
      }
    std::vector<double> z(k);
    for (std::size_t i = 0; i < k; ++i) z[i] = p.col(i).norm();
    SymMatrix g = SymMatrix::identity(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (z[i] > 0 && z[j] > 0) g.set(i, j, p.col(i).dot(p.col(j)) / (z[i] * z[j]));
    out.decomp.levels.push_back(make_level(energy[l], count, z, g));
  }
  out.weights = constant_weights(chi);

  Eigen::MatrixXd h = b * psi * Eigen::VectorXd::Map(chi.data(), k).asDiagonal() * psi.transpose();
  for (std::size_t x = 0; x < dim; ++x) h(x, x) += a * energy[level_of[x]];
  h = 0.5 * (h + h.transpose()).eval();
  out.full = eigvalsh(SymMatrix(h));
  return out;
}

}  // namespace

TEST_CASE("orthogonalize_level") {
  SUBCASE("single projector") {
    const auto [f, kappa] = orthogonalize_level(SymMatrix::identity(1), {1.0});
    CHECK(kappa == 1);
    CHECK(f.factor(0, 0) == doctest::Approx(1.0));
  }
  SUBCASE("identical projections have rank one") {
    SymMatrix g(5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) g.set(i, j, 1.0);
    CHECK(orthogonalize_level(g, std::vector<double>(5, 0.3)).second == 1);
  }
  SUBCASE("tunneling weight-one level at tan theta = 1 is full rank") {
    const auto d = tunneling_level_data(4, 1, std::numbers::pi / 4);
    SymMatrix g = SymMatrix::identity(4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) g.set(i, j, d.overlap_offdiag);
    CHECK(orthogonalize_level(g, std::vector<double>(4, d.z)).second == 4);
  }
  SUBCASE("inactive projectors get zero columns") {
    SymMatrix g = SymMatrix::identity(3);
    g.set(0, 2, 0.5);
    const auto [f, kappa] = orthogonalize_level(g, {0.4, 0.0, 0.6});
    CHECK(kappa == 2);
    CHECK(f.factor.col(1).norm() == 0.0);
  }
}

TEST_CASE("assemble_effective on a one-level, one-projector decomposition") {
  LevelDecomposition d;
  d.a_coeff = 0.25;
  d.b_coeff = 2.0;
  d.qubits = 1;
  d.projector_count = 1;
  d.levels.push_back(make_level(3.0, 2.0, {1.0}, SymMatrix::identity(1)));
  const auto eff = assemble_effective(d, constant_weights({-0.5}));
  REQUIRE(eff.matrix.dim() == 1);
  CHECK(eff.matrix(0, 0) == doctest::Approx(0.25 * 3.0 - 2.0 * 0.5));
  const auto spec = reconstruct_full_spectrum(d, eff);
  CHECK(spec.total_multiplicity() == 2.0);
  CHECK(spec.expanded() == std::vector<double>{-0.25, 0.75});
}

TEST_CASE("Grover n=2 at s=1/2") {
  const BuiltModel b = build(GroverPlain{Driver::Grover, 2, 1.0}, 0.5);
  const auto eff = assemble_effective(b.decomposition, b.weights);
  const auto spec = reconstruct_full_spectrum(b.decomposition, eff);
  CHECK(spec.reduced_eigs.size() == 2);
  double factored = 0;
  for (const auto& f : spec.factored_levels) factored += f.multiplicity;
  CHECK(factored == 2.0);
  CHECK(spec.gap() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("reduced spectra agree with dense diagonalization") {
  SUBCASE("noisy standard driver") {
    const ModelSpec m = GroverNoiseStd{4, 1.0, 1, 0.0};
    const auto red = reduced_spectrum(m, 0.3);
    CHECK(compare_spectra(red, full_hamiltonian(m, 0.3)).max_abs_deviation < 1e-10);
  }
  SUBCASE("tunneling") {
    const ModelSpec m = Tunneling{{0.3, 1.7, 0.9}};
    const auto red = reduced_spectrum(m, 0.4);
    const auto cmp = compare_spectra(red, full_hamiltonian(m, 0.4));
    CHECK(cmp.max_abs_deviation < 1e-10);
    CHECK(cmp.gap_deviation < 1e-10);
  }
  SUBCASE("multiplicities sum to 2^n") {
    const auto red = reduced_spectrum(GroverNoiseStd{10, 0.7, 3, 0.0}, 0.55);
    CHECK(red.total_multiplicity() == 1024.0);
    CHECK(red.expanded().size() == 1024);
  }
}

TEST_CASE("random explicit decompositions") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 4;
    const std::size_t levels = 2 + trial % 4;
    const std::size_t k = 1 + trial % 5;
    const Synthetic c = synthetic_case(n, levels, k, rng);
    const auto eff = assemble_effective(c.decomp, c.weights);
    CHECK(eff.matrix.dim() <= levels * k);
    // level 0 holds one state, so it contributes at most one basis vector
    CHECK(eff.kappa[0] <= 1);
    const auto red = reconstruct_full_spectrum(c.decomp, eff);
    CHECK(compare_spectra(red, c.full).max_abs_deviation < 1e-12);
  }
}

TEST_CASE("spectrum reconstruction accessors") {
  SpectrumReconstruction r;
  r.reduced_eigs = {-1.0, 0.5};
  r.factored_levels = {{0.0, 3.0}, {-1.0, 1.0}};
  CHECK(r.total_multiplicity() == 6.0);
  CHECK(r.expanded() == std::vector<double>{-1.0, -1.0, 0.0, 0.0, 0.0, 0.5});
  CHECK(r.lowest(3) == std::vector<double>{-1.0, -1.0, 0.0});
  CHECK(r.gap() == 0.0);
}

TEST_CASE("decomposition validation") {
  LevelDecomposition d;
  d.qubits = 2;
  d.projector_count = 1;
  d.a_coeff = d.b_coeff = 1.0;
  d.levels.push_back(make_level(0.0, 3.0, {1.0}, SymMatrix::identity(1)));
  CHECK_THROWS_AS(validate_decomposition(d), ModelError);  // degeneracies sum to 3
  d.levels.push_back(make_level(1.0, 1.0, {0.5}, SymMatrix::identity(1)));
  CHECK_THROWS_AS(validate_decomposition(d), ModelError);  // sum Z^2 = 1.25
  d.levels[0].z = {std::sqrt(0.75)};
  CHECK_NOTHROW(validate_decomposition(d));
  CHECK_THROWS_AS(assemble_effective(d, constant_weights({1.0, 2.0})), InvalidInput);
}
