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

#include <cmath>
#include <random>

#include "aqored/errors.hpp"
#include "aqored/oracle.hpp"
#include "doctest.h"

using namespace aqored;

TEST_CASE("explicit Hamiltonians") {
  SUBCASE("single qubit transverse field") {
    const DenseHamiltonian h = full_hamiltonian(GroverPlain{Driver::Standard, 1, 1.0}, 0.0);
    CHECK(h.matrix(0, 0) == 0.0);
    CHECK(h.matrix(1, 1) == 0.0);
    CHECK(h.matrix(0, 1) == -1.0);
    const auto e = full_spectrum(h);
    REQUIRE(e.size() == 2);
    CHECK(e[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(e[1] == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("Grover driver n = 2 at s = 1/2") {
    const auto e = full_spectrum(full_hamiltonian(GroverPlain{Driver::Grover, 2, 1.0}, 0.5));
    REQUIRE(e.size() == 4);
    CHECK(e[1] - e[0] == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("size limit") {
    CHECK_THROWS_AS(full_hamiltonian(GroverPlain{Driver::Standard, kOracleMaxQubits + 1, 1.0}, 0.5), InvalidInput);
  }
}

TEST_CASE("spectrum does not depend on the target or noise-sign realization") {
  std::mt19937_64 rng(11);
  const std::vector<ModelSpec> models{GroverNoiseStd{6, 0.9, 2, 0.0}, GroverNoiseGrv{5, 1.3, 3, 0.0},
                                      MultiSolution{5, {"10110", "00011"}}};
  for (const auto& m : models) {
    const auto ref = full_spectrum(full_hamiltonian(m, 0.37, default_realization(m)));
    for (int i = 0; i < 3; ++i) {
      const auto e = full_spectrum(full_hamiltonian(m, 0.37, random_realization(m, rng)));
      for (std::size_t j = 0; j < e.size(); ++j) CHECK(e[j] == doctest::Approx(ref[j]).epsilon(1e-11));
    }
  }
}

TEST_CASE("tunneling spectrum at s = 1") {
  // -sum sigma^z + sum V_a |a><a|: target at -3, neighbours at -1 + V_a
  const auto red = reduced_spectrum(Tunneling{{0.5, 1.0, 2.0}}, 1.0);
  const auto low = red.lowest(4);
  CHECK(low == std::vector<double>{-3.0, -0.5, 0.0, 1.0});
}

TEST_CASE("verification protocol") {
  ProtocolOptions o;
  o.n_min = 3;
  o.n_max = 5;
  o.draws = 3;
  o.s_points = 5;
  o.seed = 3;
  const ProtocolReport ok = run_protocol(o);
  CHECK(ok.passed());
  CHECK(ok.per_model.size() == protocol_model_kinds().size());
  for (const auto& m : ok.per_model) {
    CHECK(m.cases == 3u * 3u * 5u);
    CHECK(m.max_deviation < 1e-10);
  }
  o.flip_chi_sign = true;
  const ProtocolReport bad = run_protocol(o);
  CHECK_FALSE(bad.passed());
  CHECK(bad.failures.front().deviation > 1e-3);
}

TEST_CASE("random models are valid and reproducible") {
  for (const auto& kind : protocol_model_kinds()) {
    std::mt19937_64 a(5), b(5);
    const ModelSpec x = random_model(kind, 6, a), y = random_model(kind, 6, b);
    CHECK_NOTHROW(validate(x));
    CHECK(qubits(x) == 6);
    CHECK(full_spectrum(full_hamiltonian(x, 0.5)) == full_spectrum(full_hamiltonian(y, 0.5)));
  }
}
