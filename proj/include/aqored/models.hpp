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

#ifndef AQORED_MODELS_HPP
#define AQORED_MODELS_HPP

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "aqored/ddouble.hpp"
#include "aqored/quad.hpp"
#include "aqored/reduction.hpp"
#include "aqored/secular.hpp"
#include "aqored/signed_log.hpp"

namespace aqored {

enum class Driver { Grover, Standard };

// Conventions shared by all models: sigma^z |b> = (1 - 2b) |b>, and the target
// is taken in the gauge-rotated frame where it has Hamming weight q.

/// -(1-s) D - s c |t><t|; the Grover driver variant scales the driver by c too.
struct GroverPlain {
  Driver driver = Driver::Standard;
  int n = 1;
  double target_scale = 1.0;
};

/// -(1-s) sum sigma^x - s c |w><w| + s sum eps_i sigma^z.
struct GroverNoiseStd {
  int n = 1;
  double epsilon = 0.0;
  int q = 0;
  double target_scale = 0.0;  // 0 selects the default c = n
};

/// c(-(1-s)|psi0><psi0| - s |w><w|) + s sum eps_i sigma^z.
struct GroverNoiseGrv {
  int n = 1;
  double epsilon = 0.0;
  int q = 0;
  double target_scale = 0.0;  // 0 selects the default c = n
};

/// -(1-s) sum sigma^x - s sum sigma^z + s sum_a V_a |a><a| with |a> the
/// weight-one neighbours of the all-up target. n = barriers.size().
struct Tunneling {
  std::vector<double> barriers;
};

/// -(1-s) sum sigma^x - s sum_i |w_i><w_i|.
struct MultiSolution {
  int n = 1;
  std::vector<std::string> targets;  // bit strings of length n, character i = qubit i
};

/// -(1-s)|psi0><psi0| + s sum_i E_i P_i.
struct MLevelGrover {
  std::vector<double> energies;
  std::vector<double> degeneracies;  // integer counts summing to 2^n
};

using ModelSpec =
    std::variant<GroverPlain, GroverNoiseStd, GroverNoiseGrv, Tunneling, MultiSolution, MLevelGrover>;

struct BuiltModel {
  LevelDecomposition decomposition;
  ProjectorWeights weights;
};

struct DriverAngles {
  double gamma = 1.0;
  double phi = 0.0;
  double theta = 0.0;
  double cos2_theta = 0.5;  // evaluated without cancellation
  double sin2_theta = 0.5;
};

/// Reduction bound on the effective dimension at generic s in (0,1).
struct DimensionLaw {
  std::size_t value = 0;
  bool exact = true;  // false: value is an upper bound
  std::string label;  // e.g. "n+1", "<= p n"
};

/// Per-spin field angles for -(1-s) sigma^x - s eps sigma^z.
DriverAngles driver_angles(double s, double epsilon);

/// Norm of the projection of a weight-q basis state onto the level with k
/// spins in the upper single-spin eigenstate.
SignedLogReal zk_noisy_standard(int n, int q, int k, double theta);
/// Same, from squared trig values (cancellation-free near theta = 0).
SignedLogReal zk_noisy_standard(int n, int q, int k, double cos2, double sin2);

struct TunnelingLevelData {
  double z = 0.0;
  double overlap_offdiag = 1.0;
};
TunnelingLevelData tunneling_level_data(int n, int k, double theta);

/// (1/C(n,u)) sum_l (-1)^l C(d,l) C(n-d,u-l).
double krawtchouk_overlap(int n, int u, int d);

void validate(const ModelSpec& spec);
int qubits(const ModelSpec& spec);
std::string model_name(const ModelSpec& spec);
bool uses_grover_driver(const ModelSpec& spec);
double effective_target_scale(const ModelSpec& spec);

BuiltModel build(const ModelSpec& spec, double s);
DimensionLaw dimension_law(const ModelSpec& spec);

/// Models whose H_B is a single projector admit a secular-equation form.
bool has_rank_one_form(const ModelSpec& spec);
template <class Real>
RankOneForm<Real> rank_one_form(const ModelSpec& spec, Real s);

extern template RankOneForm<double> rank_one_form<double>(const ModelSpec&, double);
extern template RankOneForm<quad> rank_one_form<quad>(const ModelSpec&, quad);
extern template RankOneForm<DDouble> rank_one_form<DDouble>(const ModelSpec&, DDouble);

}  // namespace aqored

#endif  // AQORED_MODELS_HPP
