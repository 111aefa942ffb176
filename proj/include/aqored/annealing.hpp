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

#ifndef AQORED_ANNEALING_HPP
#define AQORED_ANNEALING_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "aqored/models.hpp"
#include "aqored/quad.hpp"

namespace aqored {

/// A refined local minimum of g(s). s is kept in binary128 because the
/// avoided crossings of large Grover-type instances are narrower than the
/// spacing of doubles near s = 1/2.
struct GapMinimum {
  quad s = 0;
  double g = 0.0;
  double width = 0.0;    // estimated half-width of the dip in s
  double lo = 0.0;       // coarse bracket
  double hi = 0.0;
  bool precise = false;  // refined in binary128
};

struct GapProfile {
  std::vector<double> s_points;  // increasing
  std::vector<double> gaps;
  double s_star = 0.0;
  double g_min = 0.0;
  bool degenerate = false;  // interior gap below 1e-13
  std::vector<GapMinimum> minima;  // ascending in g
};

struct GapOptions {
  int coarse_points = 257;
  int max_minima = 8;             // local minima refined per profile
  double stable_rel = 1e-10;      // golden-section stop: relative change of the best g
  int stable_iterations = 5;
  int max_iterations = 2000;
  double quad_threshold = 1e-6;   // g_min below this triggers a binary128 refinement
};

/// E_1 - E_0 of the reconstructed spectrum.
double gap_at(const ModelSpec& spec, double s);
/// Gap at a binary128 s for models with a single-projector form, evaluated
/// in double-double arithmetic (about 1e-32 relative to the energy scale).
quad gap_at_quad(const ModelSpec& spec, quad s);
/// E_l - E_0 for l = 1..m from the reconstructed spectrum (fewer if the spectrum is smaller).
std::vector<double> level_gaps(const ModelSpec& spec, double s, std::size_t m);

/// Coarse grid mapped to s = u + sin(2 pi u)/(4 pi), denser around s = 1/2.
std::vector<double> coarse_grid(int points);

GapProfile gap_profile(const ModelSpec& spec, const GapOptions& opts = {});
inline GapProfile gap_profile(const ModelSpec& spec, int coarse_points) {
  GapOptions o;
  o.coarse_points = coarse_points;
  return gap_profile(spec, o);
}

enum class Schedule { Linear, Optimal, GroverOverride };
Schedule parse_schedule(const std::string& name);
std::string schedule_name(Schedule s);

/// 1/g_min^2; +inf when g_min = 0.
double t_ann_linear(const GapProfile& profile);
double t_ann_linear(double g_min);

struct OptimalOptions {
  double adiabaticity = 1.0;  // ds/dt = adiabaticity * g^2
  double rel_tol = 1e-6;      // per-subinterval quadrature tolerance
  GapOptions gap;
};

/// (1/adiabaticity) * integral_0^1 ds / g(s)^2. Throws DivergenceError when
/// the gap closes fast enough at some s to make the integral diverge.
double t_ann_optimal(const ModelSpec& spec, const OptimalOptions& opts = {});
double t_ann_optimal(const ModelSpec& spec, const GapProfile& profile, const OptimalOptions& opts = {});
/// Integral of 1/c^2 over [0,1] for a gap function; used for closed-form checks.
double integrate_inverse_square(const std::function<double(double)>& gap, double rel_tol = 1e-10);

/// Upper bound on |dg/ds|: the spread of the spectrum of dH/ds. +inf for
/// models without a bound.
double gap_lipschitz_bound(const ModelSpec& spec);
/// Lower bound on t_ann_optimal from g(s*) and a Lipschitz constant of g,
/// using g(s) <= g(s*) + L |s - s*|. +inf when the profile is degenerate.
double t_ann_optimal_lower_bound(const GapProfile& profile, double lipschitz, double adiabaticity = 1.0);

/// sqrt(2^n), the Grover-driver annealing time.
double t_ann_grover_override(int n);

/// p_n(q) = C(n,q) / 2^n for q = 0..n.
std::vector<double> q_distribution(int n);
/// floor(n / (2 eps)) clamped to [0, n]; n when eps = 0.
int q_epsilon(int n, double epsilon);

struct TcompResult {
  int n = 0;
  double epsilon = 0.0;
  Schedule schedule = Schedule::Linear;
  double log2_t_comp = 0.0;
  double t_comp = 0.0;  // +inf if beyond double range
  int q_star = -1;
  int q_epsilon = 0;
};

/// min over q <= q_eps of t_ann(q) * ln(1 - target) / ln(1 - p_n(q)), evaluated
/// in log2. Non-finite t_ann(q) values are skipped. The repetition count is
/// clamped to at least one run.
TcompResult t_comp(int n, double epsilon, const std::function<double(int)>& t_ann_by_q,
                   double target_success = 0.99, Schedule schedule = Schedule::Linear);

/// Same minimum, with q visited in order of lower_bound_by_q(q) * K(q). A q
/// whose bound already exceeds the best value found is not evaluated, so the
/// result equals the exhaustive one whenever the bounds are valid.
TcompResult t_comp_pruned(int n, double epsilon, const std::function<double(int)>& t_ann_by_q,
                          const std::function<double(int)>& lower_bound_by_q, double target_success = 0.99,
                          Schedule schedule = Schedule::Linear);

/// 1/2 for eps < 1, else 3/2 - h(1/(2 eps)) with h the binary entropy.
double analytic_scaling(double epsilon);
double binary_entropy(double x);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  int n_min = 0;
  int n_max = 0;
  std::size_t points = 0;
};

/// Least-squares line through (n, log2 T). Needs >= 5 points with distinct n.
ScalingFit fit_exponent(const std::vector<std::pair<double, double>>& points);

}  // namespace aqored

#endif  // AQORED_ANNEALING_HPP
