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

#include "aqored/annealing.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>

#include "aqored/errors.hpp"

namespace aqored {

namespace {

constexpr double kDegenerateGap = 1e-13;
// Floor for gaps resolved on the extended-precision path.
constexpr double kDegenerateGapQuad = 1e-28;

double dense_gap(const ModelSpec& spec, double s) {
  const BuiltModel b = build(spec, s);
  const auto eff = assemble_effective(b.decomposition, b.weights);
  return reconstruct_full_spectrum(b.decomposition, eff).gap();
}

template <class Real>
struct Golden {
  Real s;
  double g;
};

// Golden-section search for a minimum of g on [a, b]. Stops when the two
// interior values agree to stable_rel for stable_iterations consecutive steps,
// or when the bracket reaches the resolution of Real.
template <class Real, class F>
Golden<Real> golden_section(F&& g, Real a, Real b, const GapOptions& o) {
  using std::abs;
  using std::sqrt;
  const Real r = (sqrt(Real(5)) - 1) / 2;
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = g(x1), f2 = g(x2);
  int stable = 0;
  for (int it = 0; it < o.max_iterations; ++it) {
    const double lo = std::min(f1, f2);
    stable = (std::fabs(f1 - f2) <= o.stable_rel * lo) ? stable + 1 : 0;
    if (stable >= o.stable_iterations) break;
    if (b - a <= 4 * eps * std::max(abs(a), abs(b))) break;
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = g(x2);
    }
  }
  return f1 <= f2 ? Golden<Real>{x1, f1} : Golden<Real>{x2, f2};
}

}  // namespace

double gap_at(const ModelSpec& spec, double s) {
  if (has_rank_one_form(spec)) return lowest_pair(rank_one_form<double>(spec, s)).gap;
  return dense_gap(spec, s);
}

quad gap_at_quad(const ModelSpec& spec, quad s) {
  if (!has_rank_one_form(spec)) return quad(gap_at(spec, static_cast<double>(s)));
  return quad(lowest_pair(rank_one_form<DDouble>(spec, DDouble(s))).gap);
}

std::vector<double> level_gaps(const ModelSpec& spec, double s, std::size_t m) {
  const BuiltModel b = build(spec, s);
  const auto eff = assemble_effective(b.decomposition, b.weights);
  const auto low = reconstruct_full_spectrum(b.decomposition, eff).lowest(m + 1);
  std::vector<double> out;
  for (std::size_t l = 1; l < low.size(); ++l) out.push_back(low[l] - low[0]);
  return out;
}

std::vector<double> coarse_grid(int points) {
  if (points < 2) throw InvalidInput("coarse grid needs at least two points");
  std::vector<double> s(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double u = static_cast<double>(i) / (points - 1);
    s[static_cast<std::size_t>(i)] = u + std::sin(2.0 * std::numbers::pi * u) / (4.0 * std::numbers::pi);
  }
  s.front() = 0.0;
  s.back() = 1.0;
  return s;
}

GapProfile gap_profile(const ModelSpec& spec, const GapOptions& o) {
  if (o.coarse_points < 16) throw InvalidInput("gap_profile: need at least 16 coarse points");
  validate(spec);
  const auto grid = coarse_grid(o.coarse_points);
  const std::size_t N = grid.size();
  std::vector<double> g(N);
  for (std::size_t i = 0; i < N; ++i) g[i] = gap_at(spec, grid[i]);

  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < N; ++i) {
    const bool left = (i == 0) || g[i] < g[i - 1];
    const bool right = (i + 1 == N) || g[i] <= g[i + 1];
    if (left && right) cand.push_back(i);
  }
  std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) { return g[a] < g[b]; });
  if (cand.size() > static_cast<std::size_t>(std::max(1, o.max_minima)))
    cand.resize(static_cast<std::size_t>(std::max(1, o.max_minima)));

  const bool rank_one = has_rank_one_form(spec);
  GapProfile p;
  for (std::size_t i : cand) {
    GapMinimum m;
    m.lo = grid[i == 0 ? 0 : i - 1];
    m.hi = grid[i + 1 == N ? N - 1 : i + 1];
    auto gd = golden_section([&](double s) { return gap_at(spec, s); }, m.lo, m.hi, o);
    m.s = gd.s;
    m.g = gd.g;
    if (rank_one && gd.g < o.quad_threshold) {
      auto gq = golden_section([&](quad s) { return static_cast<double>(gap_at_quad(spec, s)); },
                               quad(m.lo), quad(m.hi), o);
      m.s = gq.s;
      m.g = gq.g;
      m.precise = true;
    }
    if (g[i] <= m.g) {
      m.s = grid[i];
      m.g = g[i];
    }
    // V-shaped dip: half-width ~ g_min / slope, slope from the coarse neighbours.
    double slope = 0.0;
    const double sm = static_cast<double>(m.s);
    for (std::size_t j : {i == 0 ? i : i - 1, i + 1 == N ? i : i + 1}) {
      const double ds = std::fabs(grid[j] - sm);
      if (ds > 0) slope = std::max(slope, std::fabs(g[j] - m.g) / ds);
    }
    const double span = m.hi - m.lo;
    m.width = slope > 0 ? std::clamp(m.g / slope, 1e-30, 0.25 * span) : 0.25 * span;
    p.minima.push_back(m);
  }
  std::sort(p.minima.begin(), p.minima.end(), [](auto& a, auto& b) { return a.g < b.g; });
  const GapMinimum& best = p.minima.front();
  p.s_star = static_cast<double>(best.s);
  p.g_min = best.g;
  if (p.g_min < (best.precise ? kDegenerateGapQuad : kDegenerateGap) && p.s_star < 1.0 - 1e-9) {
    p.degenerate = true;
    p.g_min = 0.0;
  }

  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < N; ++i) pts.emplace_back(grid[i], g[i]);
  for (const auto& m : p.minima) pts.emplace_back(static_cast<double>(m.s), m.g);
  std::sort(pts.begin(), pts.end());
  for (const auto& [s, v] : pts) {
    if (!p.s_points.empty() && s == p.s_points.back()) {
      p.gaps.back() = std::min(p.gaps.back(), v);
      continue;
    }
    p.s_points.push_back(s);
    p.gaps.push_back(v);
  }
  return p;
}

Schedule parse_schedule(const std::string& name) {
  if (name == "linear") return Schedule::Linear;
  if (name == "optimal") return Schedule::Optimal;
  if (name == "grover-override") return Schedule::GroverOverride;
  throw InvalidInput("unknown schedule '" + name + "'");
}

std::string schedule_name(Schedule s) {
  switch (s) {
    case Schedule::Linear: return "linear";
    case Schedule::Optimal: return "optimal";
    case Schedule::GroverOverride: return "grover-override";
  }
  return "?";
}

double t_ann_linear(double g_min) {
  if (!(g_min >= 0.0)) throw InvalidInput("t_ann_linear: negative gap");
  if (g_min == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (g_min * g_min);
}

double t_ann_linear(const GapProfile& profile) { return t_ann_linear(profile.g_min); }

double gap_lipschitz_bound(const ModelSpec& spec) {
  validate(spec);
  if (const auto* m = std::get_if<GroverNoiseStd>(&spec)) {
    // dH/ds = sum_i (X_i + eps_i Z_i) - c |w><w|.
    return 2.0 * m->n * std::hypot(1.0, m->epsilon) + effective_target_scale(spec);
  }
  if (const auto* m = std::get_if<GroverPlain>(&spec); m && m->driver == Driver::Standard)
    return 2.0 * m->n + effective_target_scale(spec);
  if (!has_rank_one_form(spec)) return std::numeric_limits<double>::infinity();
  // Fixed projector, poles and rho linear in s.
  const auto f0 = rank_one_form<double>(spec, 0.0), f1 = rank_one_form<double>(spec, 1.0);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < f0.poles.size(); ++i) {
    const double d = f1.poles[i] - f0.poles[i];
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return (hi - lo) + std::fabs(f1.rho - f0.rho);
}

double t_ann_optimal_lower_bound(const GapProfile& profile, double lipschitz, double adiabaticity) {
  if (profile.degenerate || !(profile.g_min > 0.0)) return std::numeric_limits<double>::infinity();
  if (!std::isfinite(lipschitz)) return 0.0;
  const double g = profile.g_min, L = lipschitz;
  // integral over [0, r] of dx / (g + L x)^2 = r / (g (g + L r)).
  auto side = [&](double r) { return r / (g * (g + L * r)); };
  return (side(profile.s_star) + side(1.0 - profile.s_star)) / adiabaticity;
}

double t_ann_grover_override(int n) {
  if (n < 1) throw InvalidInput("t_ann_grover_override: n must be positive");
  return std::exp2(0.5 * n);
}

namespace {

double gk_integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (b <= a) return 0.0;
  // Boost's recursion tests an unscaled error against a scaled tolerance, so
  // narrow intervals never converge. Integrate over [0, 1] and rescale.
  const double h = b - a;
  auto unit = [&](double t) { return f(a + h * t); };
  double err = 0.0;
  return h * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(unit, 0.0, 1.0, 12, tol, &err);
}

// Power p in g ~ |s - e|^p near an endpoint where the gap closes.
void check_endpoint(const ModelSpec& spec, double e) {
  const double g0 = gap_at(spec, e);
  if (g0 > kDegenerateGap) return;
  const double dir = e == 0.0 ? 1.0 : -1.0;
  const double d1 = 1e-4, d2 = 1e-5;
  const double g1 = gap_at(spec, e + dir * d1), g2 = gap_at(spec, e + dir * d2);
  if (g2 <= 0.0 || g1 <= 0.0)
    throw DivergenceError("annealing integral diverges: gap vanishes near s = " + std::to_string(e), e);
  const double p = std::log(g1 / g2) / std::log(d1 / d2);
  if (p >= 0.5)
    throw DivergenceError("annealing integral diverges at s = " + std::to_string(e) +
                              " (gap closes with exponent " + std::to_string(p) + ")",
                          e);
}

}  // namespace

double integrate_inverse_square(const std::function<double(double)>& gap, double rel_tol) {
  return gk_integrate([&](double s) { const double g = gap(s); return 1.0 / (g * g); }, 0.0, 1.0,
                      rel_tol);
}

double t_ann_optimal(const ModelSpec& spec, const OptimalOptions& opts) {
  return t_ann_optimal(spec, gap_profile(spec, opts.gap), opts);
}

double t_ann_optimal(const ModelSpec& spec, const GapProfile& profile, const OptimalOptions& opts) {
  if (!(opts.adiabaticity > 0.0)) throw InvalidInput("adiabaticity must be positive");
  if (profile.degenerate)
    throw DivergenceError("annealing integral diverges: gap closes at s = " +
                              std::to_string(profile.s_star),
                          profile.s_star);
  check_endpoint(spec, 0.0);
  check_endpoint(spec, 1.0);

  const auto grid = coarse_grid(opts.gap.coarse_points);
  // Claim coarse brackets around the refined minima; overlapping ones are dropped.
  std::vector<const GapMinimum*> regions;
  {
    std::vector<const GapMinimum*> by_s;
    for (const auto& m : profile.minima) by_s.push_back(&m);
    std::sort(by_s.begin(), by_s.end(), [](auto* a, auto* b) { return a->lo < b->lo; });
    for (auto* m : by_s)
      if (regions.empty() || m->lo >= regions.back()->hi) regions.push_back(m);
  }
  auto plain = [&](double s) {
    const double g = gap_at(spec, s);
    return 1.0 / (g * g);
  };
  double total = 0.0;
  double cursor = 0.0;
  std::size_t gi = 0;
  // Plain stretches go to the adaptive rule kPlainGroup coarse cells at a time.
  constexpr std::size_t kPlainGroup = 32;
  auto integrate_plain_until = [&](double end) {
    while (gi < grid.size() && grid[gi] <= cursor) ++gi;
    while (gi + kPlainGroup - 1 < grid.size() && grid[gi + kPlainGroup - 1] < end) {
      gi += kPlainGroup - 1;
      total += gk_integrate(plain, cursor, grid[gi], opts.rel_tol);
      cursor = grid[gi++];
    }
    total += gk_integrate(plain, cursor, end, opts.rel_tol);
    cursor = end;
  };
  for (const GapMinimum* m : regions) {
    integrate_plain_until(m->lo);
    const quad sm = m->s;
    // Double precision suffices once the local gap exceeds 100x the quad threshold.
    const double x_quad = m->precise ? 100.0 * opts.gap.quad_threshold * m->width / m->g : 0.0;
    auto local = [&](double x) {
      const double g = std::fabs(x) < x_quad ? static_cast<double>(gap_at_quad(spec, sm + quad(x)))
                                             : gap_at(spec, static_cast<double>(sm) + x);
      return 1.0 / (g * g);
    };
    // x = w sinh(u) turns the Lorentzian dip into a smooth, decaying integrand.
    const double w = m->width;
    auto side = [&](double reach, double dir) {
      if (reach <= 0.0) return;
      const double umax = std::asinh(reach / w);
      auto f = [&](double u) { return local(dir * std::min(w * std::sinh(u), reach)) * w * std::cosh(u); };
      // Pieces [0, 2], [2, 4], [4, 8], ... : the integrand decays like 1/cosh(u) past the dip.
      double u0 = 0.0;
      for (double u1 = 2.0; u0 < umax; u1 *= 2.0) {
        const double e = std::min(u1, umax);
        total += gk_integrate(f, u0, e, opts.rel_tol);
        u0 = e;
      }
    };
    side(static_cast<double>(quad(m->hi) - sm), 1.0);
    side(static_cast<double>(sm - quad(m->lo)), -1.0);
    cursor = m->hi;
  }
  integrate_plain_until(1.0);
  if (!std::isfinite(total))
    throw DivergenceError("annealing integral did not converge", profile.s_star);
  return total / opts.adiabaticity;
}

std::vector<double> q_distribution(int n) {
  if (n < 1) throw InvalidInput("q_distribution: n must be positive");
  std::vector<double> p(static_cast<std::size_t>(n) + 1);
  for (int q = 0; q <= n; ++q) p[static_cast<std::size_t>(q)] = std::exp(log_binomial(n, q) - n * std::numbers::ln2);
  return p;
}

int q_epsilon(int n, double epsilon) {
  if (n < 0) throw InvalidInput("q_epsilon: negative n");
  if (!(epsilon >= 0.0)) throw InvalidInput("q_epsilon: negative epsilon");
  if (epsilon == 0.0) return n;
  const double v = std::floor(n / (2.0 * epsilon));
  return static_cast<int>(std::clamp(v, 0.0, static_cast<double>(n)));
}

namespace {

TcompResult t_comp_header(int n, double epsilon, double target_success, Schedule schedule) {
  if (!(target_success > 0.0 && target_success < 1.0))
    throw InvalidInput("t_comp: target success must lie in (0, 1)");
  TcompResult r;
  r.n = n;
  r.epsilon = epsilon;
  r.schedule = schedule;
  r.q_epsilon = q_epsilon(n, epsilon);
  r.log2_t_comp = std::numeric_limits<double>::infinity();
  return r;
}

// log2 of the repetition count, clamped at one run.
double log2_repetitions(int n, int q, double target_success) {
  const double p = std::exp(log_binomial(n, q) - n * std::numbers::ln2);
  if (!(p < 1.0)) return 0.0;
  return std::max(0.0, std::log2(std::log1p(-target_success) / std::log1p(-p)));
}

void offer(TcompResult& r, int q, double t, double log2_k) {
  if (!std::isfinite(t) || !(t > 0.0)) return;
  const double v = std::log2(t) + log2_k;
  if (v < r.log2_t_comp || (v == r.log2_t_comp && q < r.q_star)) {
    r.log2_t_comp = v;
    r.q_star = q;
  }
}

}  // namespace

TcompResult t_comp(int n, double epsilon, const std::function<double(int)>& t_ann_by_q,
                   double target_success, Schedule schedule) {
  TcompResult r = t_comp_header(n, epsilon, target_success, schedule);
  for (int q = 0; q <= r.q_epsilon; ++q) offer(r, q, t_ann_by_q(q), log2_repetitions(n, q, target_success));
  r.t_comp = std::exp2(r.log2_t_comp);
  return r;
}

TcompResult t_comp_pruned(int n, double epsilon, const std::function<double(int)>& t_ann_by_q,
                          const std::function<double(int)>& lower_bound_by_q, double target_success,
                          Schedule schedule) {
  TcompResult r = t_comp_header(n, epsilon, target_success, schedule);
  struct Entry {
    int q;
    double log2_k, bound;
  };
  std::vector<Entry> order;
  for (int q = 0; q <= r.q_epsilon; ++q) {
    const double k = log2_repetitions(n, q, target_success);
    const double lb = lower_bound_by_q(q);
    order.push_back({q, k, lb > 0.0 ? std::log2(lb) + k : -std::numeric_limits<double>::infinity()});
  }
  std::stable_sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) { return a.bound < b.bound; });
  // Margin covers the quadrature tolerance of the values being compared.
  constexpr double kMargin = 1e-6;
  for (const Entry& e : order) {
    if (e.bound > r.log2_t_comp + kMargin) break;
    offer(r, e.q, t_ann_by_q(e.q), e.log2_k);
  }
  r.t_comp = std::exp2(r.log2_t_comp);
  return r;
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput("binary_entropy: x outside [0, 1]");
  auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  return term(x) + term(1.0 - x);
}

double analytic_scaling(double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidInput("analytic_scaling: epsilon must be positive");
  if (epsilon < 1.0) return 0.5;
  return 1.5 - binary_entropy(1.0 / (2.0 * epsilon));
}

ScalingFit fit_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 5) throw InvalidInput("fit_exponent: need at least 5 points");
  std::set<double> ns;
  double sx = 0, sy = 0;
  for (const auto& [x, y] : points) {
    if (!std::isfinite(x) || !std::isfinite(y)) throw InvalidInput("fit_exponent: non-finite point");
    if (!ns.insert(x).second) throw InvalidInput("fit_exponent: repeated n");
    sx += x;
    sy += y;
  }
  const double m = static_cast<double>(points.size());
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0)) throw Error("fit_exponent: rank-deficient fit");
  ScalingFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (const auto& [x, y] : points)
    f.max_residual = std::max(f.max_residual, std::fabs(y - (f.intercept + f.slope * x)));
  f.n_min = static_cast<int>(*ns.begin());
  f.n_max = static_cast<int>(*ns.rbegin());
  f.points = points.size();
  return f;
}

}  // namespace aqored
