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

#ifndef AQORED_ORACLE_HPP
#define AQORED_ORACLE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "aqored/linalg.hpp"
#include "aqored/models.hpp"
#include "aqored/reduction.hpp"

namespace aqored {

inline constexpr int kOracleMaxQubits = 10;

/// Explicit, unrotated data for a model: target bits and noise signs, plus
/// the basis-state assignment of MLevelGrover energies.
struct Realization {
  std::vector<int> target;       // bit per qubit
  std::vector<int> noise_signs;  // +1 / -1 per qubit (noisy models)
  std::vector<std::size_t> level_of_state;  // MLevelGrover: level index of every basis state
};

/// Target 0...0 with noise raising its energy on the first q qubits.
Realization default_realization(const ModelSpec& spec);
/// Random target, random spins carrying the q energy-raising signs, and a
/// random assignment of MLevelGrover levels to basis states.
Realization random_realization(const ModelSpec& spec, std::mt19937_64& rng);

struct DenseHamiltonian {
  int n = 0;
  double s = 0.0;
  SymMatrix matrix;
};

/// The full 2^n x 2^n H(s), term by term. Qubit i is bit i of the basis index
/// and sigma^z |b> = (1 - 2b) |b>.
DenseHamiltonian full_hamiltonian(const ModelSpec& spec, double s, const Realization& r);
DenseHamiltonian full_hamiltonian(const ModelSpec& spec, double s);

/// All eigenvalues, ascending.
std::vector<double> full_spectrum(const DenseHamiltonian& h);

struct SpectrumComparison {
  double max_abs_deviation = 0.0;
  double ground_deviation = 0.0;
  double gap_deviation = 0.0;
};

/// Sorted elementwise comparison of two multisets; StructuralError on size mismatch.
SpectrumComparison compare_spectra(const SpectrumReconstruction& reduced,
                                   const std::vector<double>& full);
SpectrumComparison compare_spectra(const SpectrumReconstruction& reduced, const DenseHamiltonian& full);

/// Reduced spectrum of a model at s, optionally with every chi sign flipped
/// (used to check that the verification detects a wrong H_B).
SpectrumReconstruction reduced_spectrum(const ModelSpec& spec, double s, bool flip_chi_sign = false);

struct ProtocolOptions {
  int n_min = 3;
  int n_max = 10;
  int draws = 20;
  int s_points = 11;  // s = 0, 1/(s_points-1), ..., 1
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  bool flip_chi_sign = false;
  std::vector<std::string> models;  // empty: all seven kinds
  int workers = 1;
};

struct ProtocolFailure {
  std::string model;
  int n = 0;
  double s = 0.0;
  std::string params;
  double deviation = 0.0;
};

struct ProtocolModelResult {
  std::string model;
  double max_deviation = 0.0;
  std::size_t cases = 0;
};

struct ProtocolReport {
  std::vector<ProtocolModelResult> per_model;
  std::vector<ProtocolFailure> failures;
  bool passed() const { return failures.empty(); }
};

/// The seven model kinds exercised by the protocol.
std::vector<std::string> protocol_model_kinds();

/// Random model instance of the given kind and size.
ModelSpec random_model(const std::string& kind, int n, std::mt19937_64& rng);

/// Every (kind, n, draw, s) case: reduced spectrum vs brute force.
ProtocolReport run_protocol(const ProtocolOptions& opts);

}  // namespace aqored

#endif  // AQORED_ORACLE_HPP
