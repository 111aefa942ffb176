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

#include "aqored/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "aqored/errors.hpp"

namespace aqored {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr int kMaxQubits = 1000;
constexpr int kMaxTunnelingQubits = 64;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

SignedLogReal binom(int n, int k) {
  if (k < 0 || k > n) return {};
  return SignedLogReal::from_log(log_binomial(n, k));
}

// x^e in log form, with x^0 = 1 even for x = 0.
double log_pow(double logx, int e) { return e == 0 ? 0.0 : e * logx; }

void check_s(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidInput("s must lie in [0, 1], got " + std::to_string(s));
}

void check_n(int n) {
  if (n < 1 || n > kMaxQubits) throw InvalidInput("qubit count out of range: " + std::to_string(n));
}

void check_scale(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInput("target_scale must be positive");
}

double scale_or_n(double c, int n) { return c == 0.0 ? static_cast<double>(n) : c; }

// MLevelGrover degeneracies must sum to a power of two; returns n.
int mlevel_qubits(const MLevelGrover& m) {
  double total = 0.0;
  for (double d : m.degeneracies) total += d;
  const int n = static_cast<int>(std::lround(std::log2(total)));
  if (n < 1 || std::ldexp(1.0, n) != total)
    throw InvalidInput("mlevel: degeneracies must sum to 2^n");
  return n;
}

Level simple_level(double energy, SignedLogReal deg, std::vector<double> z) {
  Level lv;
  lv.energy = energy;
  lv.degeneracy = deg;
  lv.gram = SymMatrix::identity(z.size());
  lv.z = std::move(z);
  return lv;
}

BuiltModel build_noise_std(int n, double eps, int q, double c, double s) {
  const DriverAngles ang = driver_angles(s, eps);
  BuiltModel out;
  auto& d = out.decomposition;
  d.s = s;
  d.a_coeff = ang.gamma;
  d.b_coeff = s;
  d.qubits = n;
  d.projector_count = 1;
  for (int k = 0; k <= n; ++k) {
    const double z = zk_noisy_standard(n, q, k, ang.cos2_theta, ang.sin2_theta).to_double();
    d.levels.push_back(simple_level(2.0 * k - n, binom(n, k), {z}));
  }
  out.weights.count = 1;
  out.weights.chi = [c](double) { return std::vector<double>{-c}; };
  return out;
}

BuiltModel build_grover_plain(int n, double c, double s) {
  BuiltModel out;
  auto& d = out.decomposition;
  d.s = s;
  d.a_coeff = s;
  d.b_coeff = 1.0;
  d.qubits = n;
  d.projector_count = 1;
  const double log_rest = n * kLn2 + std::log1p(-std::ldexp(1.0, -n));
  d.levels.push_back(simple_level(-c, SignedLogReal::from_log(0.0), {std::exp(-0.5 * n * kLn2)}));
  d.levels.push_back(simple_level(0.0, SignedLogReal::from_log(log_rest),
                                  {std::sqrt(-std::expm1(-n * kLn2))}));
  out.weights.count = 1;
  out.weights.chi = [c](double t) { return std::vector<double>{-c * (1.0 - t)}; };
  return out;
}

BuiltModel build_noise_grv(const GroverNoiseGrv& m, double s) {
  const double c = scale_or_n(m.target_scale, m.n);
  BuiltModel out;
  auto& d = out.decomposition;
  d.s = s;
  d.a_coeff = s * m.epsilon;
  d.b_coeff = 1.0;
  d.qubits = m.n;
  d.projector_count = 2;
  for (int k = 0; k <= m.n; ++k) {
    const double lc = log_binomial(m.n, k);
    Level lv = simple_level(2.0 * k - m.n, SignedLogReal::from_log(lc),
                            {k == m.q ? 1.0 : 0.0, std::exp(0.5 * (lc - m.n * kLn2))});
    if (k == m.q) lv.gram.set(0, 1, std::exp(-0.5 * lc));
    d.levels.push_back(std::move(lv));
  }
  out.weights.count = 2;
  out.weights.chi = [c](double t) { return std::vector<double>{-c * t, -c * (1.0 - t)}; };
  return out;
}

BuiltModel build_tunneling(const Tunneling& m, double s) {
  const int n = static_cast<int>(m.barriers.size());
  const DriverAngles ang = driver_angles(s, 1.0);
  BuiltModel out;
  auto& d = out.decomposition;
  d.s = s;
  d.a_coeff = ang.gamma;
  d.b_coeff = 1.0;
  d.qubits = n;
  d.projector_count = static_cast<std::size_t>(n);
  for (int k = 0; k <= n; ++k) {
    const double z = zk_noisy_standard(n, 1, k, ang.cos2_theta, ang.sin2_theta).to_double();
    Level lv = simple_level(2.0 * k - n, binom(n, k), std::vector<double>(n, z));
    if (z > 0.0 && n > 1) {
      const double o = tunneling_level_data(n, k, ang.theta).overlap_offdiag;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < a; ++b) lv.gram.set(a, b, o);
    }
    d.levels.push_back(std::move(lv));
  }
  out.weights.count = static_cast<std::size_t>(n);
  out.weights.chi = [v = m.barriers](double t) {
    std::vector<double> chi(v);
    for (double& x : chi) x *= t;
    return chi;
  };
  return out;
}

int hamming(const std::string& a, const std::string& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

BuiltModel build_multi(const MultiSolution& m, double s) {
  const int n = m.n;
  const std::size_t p = m.targets.size();
  BuiltModel out;
  auto& d = out.decomposition;
  d.s = s;
  d.a_coeff = 1.0 - s;
  d.b_coeff = 1.0;
  d.qubits = n;
  d.projector_count = p;
  std::vector<std::vector<int>> dist(p, std::vector<int>(p, 0));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < i; ++j) dist[i][j] = dist[j][i] = hamming(m.targets[i], m.targets[j]);
  for (int u = 0; u <= n; ++u) {
    const double lc = log_binomial(n, u);
    Level lv = simple_level(2.0 * u - n, SignedLogReal::from_log(lc),
                            std::vector<double>(p, std::exp(0.5 * (lc - n * kLn2))));
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < i; ++j) lv.gram.set(i, j, krawtchouk_overlap(n, u, dist[i][j]));
    d.levels.push_back(std::move(lv));
  }
  out.weights.count = p;
  out.weights.chi = [p](double t) { return std::vector<double>(p, -t); };
  return out;
}

BuiltModel build_mlevel(const MLevelGrover& m, double s) {
  const int n = mlevel_qubits(m);
  BuiltModel out;
  auto& d = out.decomposition;
  d.s = s;
  d.a_coeff = s;
  d.b_coeff = 1.0;
  d.qubits = n;
  d.projector_count = 1;
  for (std::size_t i = 0; i < m.energies.size(); ++i) {
    const double lam = m.degeneracies[i];
    d.levels.push_back(simple_level(m.energies[i], SignedLogReal::from_double(lam),
                                    {std::sqrt(std::ldexp(lam, -n))}));
  }
  out.weights.count = 1;
  out.weights.chi = [](double t) { return std::vector<double>{-(1.0 - t)}; };
  return out;
}

}  // namespace

DriverAngles driver_angles(double s, double epsilon) {
  check_s(s);
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw InvalidInput("epsilon must be >= 0");
  DriverAngles a;
  const double x = s * epsilon, y = 1.0 - s;
  a.gamma = std::hypot(x, y);
  a.phi = std::atan2(x, y);
  if (a.gamma == 0.0) {
    a.theta = std::numbers::pi / 4;
    a.cos2_theta = a.sin2_theta = 0.5;
    return a;
  }
  a.theta = std::atan2(y, a.gamma + x);
  a.cos2_theta = (a.gamma + x) / (2.0 * a.gamma);
  a.sin2_theta = y * y / (2.0 * a.gamma * (a.gamma + x));
  return a;
}

SignedLogReal zk_noisy_standard(int n, int q, int k, double cos2, double sin2) {
  check_n(n);
  if (q < 0 || q > n || k < 0 || k > n) throw InvalidInput("zk_noisy_standard: q or k out of range");
  if (!(cos2 >= 0.0 && sin2 >= 0.0)) throw InvalidInput("zk_noisy_standard: negative trig value");
  const double lc = cos2 > 0 ? std::log(cos2) : -std::numeric_limits<double>::infinity();
  const double ls = sin2 > 0 ? std::log(sin2) : -std::numeric_limits<double>::infinity();
  std::vector<SignedLogReal> terms;
  for (int l = std::max(0, k - (n - q)); l <= std::min(q, k); ++l) {
    const int ps = (q - l) + (k - l);
    const double lm = log_binomial(q, l) + log_binomial(n - q, k - l) + log_pow(ls, ps) +
                      log_pow(lc, n - ps);
    terms.push_back(SignedLogReal::from_log(lm));
  }
  return signed_logsumexp(terms).sqrt();
}

SignedLogReal zk_noisy_standard(int n, int q, int k, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return zk_noisy_standard(n, q, k, c * c, s * s);
}

TunnelingLevelData tunneling_level_data(int n, int k, double theta) {
  check_n(n);
  if (k < 0 || k > n) throw InvalidInput("tunneling_level_data: k out of range");
  const double c = std::cos(theta), sn = std::sin(theta);
  TunnelingLevelData out;
  out.z = zk_noisy_standard(n, 1, k, c * c, sn * sn).to_double();
  if (k == 0 || k == n || n == 1) return out;
  if (c == 0.0) {
    // tan -> infinity: the t^4 terms dominate.
    out.overlap_offdiag = static_cast<double>(n - k - 1) / (n - 1);
    return out;
  }
  const double t2 = (sn * sn) / (c * c), t4 = t2 * t2;
  const double nk = n - k;
  const double num = nk * (nk - 1) * t4 + static_cast<double>(k) * (k - 1) - 2.0 * k * nk * t2;
  out.overlap_offdiag = num / ((n - 1) * (k + nk * t4));
  return out;
}

double krawtchouk_overlap(int n, int u, int d) {
  check_n(n);
  if (u < 0 || u > n || d < 0 || d > n) throw InvalidInput("krawtchouk_overlap: u or d out of range");
  const double norm = log_binomial(n, u);
  std::vector<SignedLogReal> terms;
  for (int l = std::max(0, u - (n - d)); l <= std::min(d, u); ++l) {
    terms.push_back(SignedLogReal::from_log(log_binomial(d, l) + log_binomial(n - d, u - l) - norm,
                                            (l % 2) ? -1 : 1));
  }
  return signed_logsumexp(terms).to_double();
}

void validate(const ModelSpec& spec) {
  std::visit(Overloaded{
                 [](const GroverPlain& m) {
                   check_n(m.n);
                   check_scale(m.target_scale);
                 },
                 [](const GroverNoiseStd& m) {
                   check_n(m.n);
                   if (!(m.epsilon >= 0.0) || !std::isfinite(m.epsilon))
                     throw InvalidInput("epsilon must be >= 0");
                   if (m.q < 0 || m.q > m.n) throw InvalidInput("q must lie in [0, n]");
                   check_scale(scale_or_n(m.target_scale, m.n));
                 },
                 [](const GroverNoiseGrv& m) {
                   check_n(m.n);
                   if (!(m.epsilon >= 0.0) || !std::isfinite(m.epsilon))
                     throw InvalidInput("epsilon must be >= 0");
                   if (m.q < 0 || m.q > m.n) throw InvalidInput("q must lie in [0, n]");
                   check_scale(scale_or_n(m.target_scale, m.n));
                 },
                 [](const Tunneling& m) {
                   const int n = static_cast<int>(m.barriers.size());
                   if (n < 1 || n > kMaxTunnelingQubits)
                     throw InvalidInput("tunneling: need 1..64 barrier values");
                   for (double v : m.barriers)
                     if (!std::isfinite(v)) throw InvalidInput("tunneling: non-finite barrier");
                 },
                 [](const MultiSolution& m) {
                   check_n(m.n);
                   if (m.targets.empty()) throw InvalidInput("multi-solution: no targets");
                   for (std::size_t i = 0; i < m.targets.size(); ++i) {
                     const auto& t = m.targets[i];
                     if (t.size() != static_cast<std::size_t>(m.n) ||
                         t.find_first_not_of("01") != std::string::npos)
                       throw InvalidInput("multi-solution: target '" + t + "' is not an n-bit string");
                     for (std::size_t j = 0; j < i; ++j)
                       if (m.targets[j] == t) throw InvalidInput("multi-solution: duplicate target " + t);
                   }
                 },
                 [](const MLevelGrover& m) {
                   if (m.energies.empty() || m.energies.size() != m.degeneracies.size())
                     throw InvalidInput("mlevel: energies and degeneracies differ in length");
                   for (std::size_t i = 0; i < m.energies.size(); ++i) {
                     const double g = m.degeneracies[i];
                     if (!std::isfinite(m.energies[i])) throw InvalidInput("mlevel: non-finite energy");
                     if (!(g >= 1.0) || g != std::floor(g))
                       throw InvalidInput("mlevel: degeneracies must be positive integers");
                     for (std::size_t j = 0; j < i; ++j)
                       if (m.energies[j] == m.energies[i]) throw InvalidInput("mlevel: repeated energy");
                   }
                   mlevel_qubits(m);
                 },
             },
             spec);
}

int qubits(const ModelSpec& spec) {
  return std::visit(Overloaded{
                        [](const Tunneling& m) { return static_cast<int>(m.barriers.size()); },
                        [](const MLevelGrover& m) { return mlevel_qubits(m); },
                        [](const auto& m) { return m.n; },
                    },
                    spec);
}

std::string model_name(const ModelSpec& spec) {
  return std::visit(Overloaded{
                        [](const GroverPlain& m) {
                          return std::string(m.driver == Driver::Grover ? "grover-g" : "grover-s");
                        },
                        [](const GroverNoiseStd&) { return std::string("noisy-standard"); },
                        [](const GroverNoiseGrv&) { return std::string("noisy-grover"); },
                        [](const Tunneling&) { return std::string("tunneling"); },
                        [](const MultiSolution&) { return std::string("multi-solution"); },
                        [](const MLevelGrover&) { return std::string("mlevel"); },
                    },
                    spec);
}

bool uses_grover_driver(const ModelSpec& spec) {
  if (auto* g = std::get_if<GroverPlain>(&spec)) return g->driver == Driver::Grover;
  return std::holds_alternative<GroverNoiseGrv>(spec) || std::holds_alternative<MLevelGrover>(spec);
}

double effective_target_scale(const ModelSpec& spec) {
  return std::visit(Overloaded{
                        [](const GroverPlain& m) { return m.target_scale; },
                        [](const GroverNoiseStd& m) { return scale_or_n(m.target_scale, m.n); },
                        [](const GroverNoiseGrv& m) { return scale_or_n(m.target_scale, m.n); },
                        [](const auto&) { return 1.0; },
                    },
                    spec);
}

BuiltModel build(const ModelSpec& spec, double s) {
  validate(spec);
  check_s(s);
  return std::visit(
      Overloaded{
          [s](const GroverPlain& m) {
            return m.driver == Driver::Grover ? build_grover_plain(m.n, m.target_scale, s)
                                              : build_noise_std(m.n, 0.0, 0, m.target_scale, s);
          },
          [s](const GroverNoiseStd& m) {
            return build_noise_std(m.n, m.epsilon, m.q, scale_or_n(m.target_scale, m.n), s);
          },
          [s](const GroverNoiseGrv& m) { return build_noise_grv(m, s); },
          [s](const Tunneling& m) { return build_tunneling(m, s); },
          [s](const MultiSolution& m) { return build_multi(m, s); },
          [s](const MLevelGrover& m) { return build_mlevel(m, s); },
      },
      spec);
}

DimensionLaw dimension_law(const ModelSpec& spec) {
  validate(spec);
  const auto n = static_cast<std::size_t>(qubits(spec));
  return std::visit(
      Overloaded{
          [n](const GroverPlain& m) {
            return m.driver == Driver::Grover ? DimensionLaw{2, true, "2"}
                                              : DimensionLaw{n + 1, true, "n+1"};
          },
          [n](const GroverNoiseStd&) { return DimensionLaw{n + 1, true, "n+1"}; },
          [n](const GroverNoiseGrv& m) {
            // Weight 0 and weight n targets coincide with the psi0 projection.
            const bool extra = m.q > 0 && m.q < m.n;
            return DimensionLaw{extra ? n + 2 : n + 1, true, "n+2"};
          },
          [n](const Tunneling&) {
            std::size_t bound = 0;
            for (std::size_t k = 0; k <= n; ++k) {
              const double lam = std::exp(log_binomial(static_cast<long>(n), static_cast<long>(k)));
              bound += std::min<std::size_t>(n, static_cast<std::size_t>(std::llround(std::min(lam, 1e9))));
            }
            return DimensionLaw{std::min(bound, (n + 2) * (n + 2)), false, "<= (n+2)^2"};
          },
          [n](const MultiSolution& m) {
            const std::size_t p = m.targets.size();
            // Levels u = 0 and u = n are rank one, interior levels rank <= p.
            return DimensionLaw{p >= 2 ? p * n : n + 1, false, "<= p n"};
          },
          [](const MLevelGrover& m) { return DimensionLaw{m.energies.size(), true, "M"}; },
      },
      spec);
}

bool has_rank_one_form(const ModelSpec& spec) {
  return std::holds_alternative<GroverPlain>(spec) || std::holds_alternative<GroverNoiseStd>(spec) ||
         std::holds_alternative<GroverNoiseGrv>(spec) || std::holds_alternative<MLevelGrover>(spec);
}

namespace {

template <class Real>
RankOneForm<Real> noise_std_form(int n, double eps, int q, double c, Real s) {
  using std::sqrt;
  const double sd = static_cast<double>(s);
  const DriverAngles ang = driver_angles(sd, eps);
  const Real x = s * Real(eps), y = 1 - s;
  const Real gamma = sqrt(x * x + y * y);
  RankOneForm<Real> f;
  for (int k = 0; k <= n; ++k) {
    const SignedLogReal z = zk_noisy_standard(n, q, k, ang.cos2_theta, ang.sin2_theta);
    f.poles.push_back(gamma * Real(2 * k - n));
    f.weights.push_back(Real(z.is_zero() ? 0.0 : std::exp(2.0 * z.logmag)));
    f.multiplicity.push_back(std::exp(log_binomial(n, k)));
  }
  f.rho = -Real(c) * s;
  return f;
}

template <class Real>
RankOneForm<Real> grover_plain_form(int n, double c, Real s) {
  RankOneForm<Real> f;
  f.poles = {-Real(c) * s, Real(0)};
  f.weights = {Real(std::ldexp(1.0, -n)), Real(-std::expm1(-n * kLn2))};
  f.multiplicity = {1.0, std::exp(n * kLn2 + std::log1p(-std::ldexp(1.0, -n)))};
  f.rho = -Real(c) * (1 - s);
  return f;
}

template <class Real>
RankOneForm<Real> noise_grv_form(const GroverNoiseGrv& m, Real s) {
  const double c = scale_or_n(m.target_scale, m.n);
  RankOneForm<Real> f;
  for (int k = 0; k <= m.n; ++k) {
    double lc = log_binomial(m.n, k);
    if (k == m.q) {
      if (lc == 0.0) continue;  // the only weight-q state is the target itself
      lc += std::log1p(-std::exp(-lc));
    }
    // s times one double coefficient, so a target pole that coincides with a
    // weight-k pole for all s rounds to the same value and merges with it.
    f.poles.push_back(s * Real(m.epsilon * (2 * k - m.n)));
    f.weights.push_back(Real(std::exp(lc - m.n * kLn2)));
    f.multiplicity.push_back(std::exp(lc));
  }
  f.poles.push_back(s * Real(m.epsilon * (2 * m.q - m.n) - c));
  f.weights.push_back(Real(std::ldexp(1.0, -m.n)));
  f.multiplicity.push_back(1.0);
  f.rho = -Real(c) * (1 - s);
  return f;
}

template <class Real>
RankOneForm<Real> mlevel_form(const MLevelGrover& m, Real s) {
  const int n = mlevel_qubits(m);
  RankOneForm<Real> f;
  for (std::size_t i = 0; i < m.energies.size(); ++i) {
    f.poles.push_back(s * Real(m.energies[i]));
    f.weights.push_back(Real(std::ldexp(m.degeneracies[i], -n)));
    f.multiplicity.push_back(m.degeneracies[i]);
  }
  f.rho = -(1 - s);
  return f;
}

}  // namespace

template <class Real>
RankOneForm<Real> rank_one_form(const ModelSpec& spec, Real s) {
  validate(spec);
  check_s(static_cast<double>(s));
  if (s < 0 || s > 1) throw InvalidInput("s must lie in [0, 1]");
  return std::visit(
      Overloaded{
          [s](const GroverPlain& m) {
            return m.driver == Driver::Grover ? grover_plain_form<Real>(m.n, m.target_scale, s)
                                              : noise_std_form<Real>(m.n, 0.0, 0, m.target_scale, s);
          },
          [s](const GroverNoiseStd& m) {
            return noise_std_form<Real>(m.n, m.epsilon, m.q, scale_or_n(m.target_scale, m.n), s);
          },
          [s](const GroverNoiseGrv& m) { return noise_grv_form<Real>(m, s); },
          [s](const MLevelGrover& m) { return mlevel_form<Real>(m, s); },
          [](const auto&) -> RankOneForm<Real> {
            throw InvalidInput("model has no single-projector form");
          },
      },
      spec);
}

template RankOneForm<double> rank_one_form<double>(const ModelSpec&, double);
template RankOneForm<quad> rank_one_form<quad>(const ModelSpec&, quad);
template RankOneForm<DDouble> rank_one_form<DDouble>(const ModelSpec&, DDouble);

}  // namespace aqored
