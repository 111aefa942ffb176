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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: aqored_acceptance [criterion ...]   (default: all nine)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "aqored/annealing.hpp"
#include "aqored/cli.hpp"
#include "aqored/models.hpp"
#include "aqored/oracle.hpp"
#include "aqored/reduction.hpp"

using namespace aqored;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int worker_count() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

std::size_t effective_dim(const ModelSpec& spec, double s) {
  const BuiltModel b = build(spec, s);
  return assemble_effective(b.decomposition, b.weights).matrix.dim();
}

// slope per epsilon from the scaling command
std::vector<std::pair<double, double>> scaling_slopes(const KeyValues& cfg) {
  const cli::CommandResult r = cli::cmd_scaling(cfg);
  if (r.exit_code != 0) throw std::runtime_error("scaling failed: " + r.messages);
  std::vector<std::pair<double, double>> out;
  const auto doc = nlohmann::json::parse(r.output);
  for (const auto& f : doc["fits"]) out.emplace_back(f["epsilon"], f["slope"]);
  return out;
}

Outcome oracle_exactness() {
  ProtocolOptions o;
  o.n_min = 3;
  o.n_max = 10;
  o.draws = 20;
  o.s_points = 11;
  o.tolerance = 1e-9;
  o.workers = worker_count();
  const auto t0 = std::chrono::steady_clock::now();
  const ProtocolReport r = run_protocol(o);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double worst = 0;
  std::size_t cases = 0;
  for (const auto& m : r.per_model) {
    worst = std::max(worst, m.max_deviation);
    cases += m.cases;
  }
  return {r.passed() && secs <= 300.0 && r.per_model.size() == 7,
          fmt("%zu cases over 7 models, max deviation %.3g, %zu failures, %.1f s (limit 300 s)", cases, worst,
              r.failures.size(), secs)};
}

Outcome grover_gap_law() {
  double worst = 0;
  for (int n = 4; n <= 30; ++n) {
    const GapProfile p = gap_profile(GroverPlain{Driver::Grover, n, 1.0});
    worst = std::max(worst, std::fabs(p.g_min * std::exp2(n / 2.0) - 1.0));
  }
  return {worst < 1e-8, fmt("max relative error of g_min vs 2^(-n/2), n = 4..30: %.3g (limit 1e-8)", worst)};
}

Outcome scaling_exponents() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto slopes = scaling_slopes({{"model", "noisy-grover"},
                                      {"n_min", "40"},
                                      {"n_max", "160"},
                                      {"n_step", "8"},
                                      {"epsilon", "0.5,1.5,2,3"},
                                      {"schedule", "optimal"},
                                      {"workers", std::to_string(worker_count())}});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool pass = secs <= 120.0 && slopes.size() == 4;
  std::string detail;
  for (const auto& [eps, slope] : slopes) {
    const bool low = eps < 1.0;
    const double target = low ? 0.5 : analytic_scaling(eps);
    const double tol = low ? 0.01 : 0.03;
    const bool ok = std::fabs(slope - target) <= tol;
    pass = pass && ok;
    detail += fmt("eps=%g slope %.4f vs %.4f +- %.2f %s; ", eps, slope, target, tol, ok ? "ok" : "off");
  }
  return {pass, detail + fmt("%.1f s (limit 120 s)", secs)};
}

Outcome analytic_thresholds() {
  double lo = 1.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (analytic_scaling(mid) < 1.0 ? lo : hi) = mid;
  }
  const double below = analytic_scaling(std::nextafter(1.0, 0.0));
  const double at = analytic_scaling(1.0), above = analytic_scaling(std::nextafter(1.0, 2.0));
  const double jump = std::max({std::fabs(below - 0.5), std::fabs(at - 0.5), std::fabs(above - 0.5)});
  return {std::fabs(lo - 4.544) <= 0.01 && jump < 1e-12,
          fmt("root at eps = %.6f (want 4.544 +- 0.01); max |s - 1/2| around eps = 1: %.3g", lo, jump)};
}

Outcome standard_driver_scaling() {
  const auto t0 = std::chrono::steady_clock::now();
  KeyValues cfg{{"model", "grover"}, {"driver", "standard"}, {"n_min", "20"}, {"n_max", "100"},
                {"n_step", "8"}, {"workers", std::to_string(worker_count())}};
  cfg["schedule"] = "linear";
  const double lin = scaling_slopes(cfg).at(0).second;
  cfg["schedule"] = "optimal";
  const double opt = scaling_slopes(cfg).at(0).second;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {lin >= 0.9 && lin <= 1.1 && opt >= 0.45 && opt <= 0.55 && secs <= 300.0,
          fmt("linear slope %.4f (want [0.9, 1.1]), optimal slope %.4f (want [0.45, 0.55]), %.1f s", lin, opt,
              secs)};
}

Outcome multi_solution_degeneracy() {
  std::mt19937_64 rng(2026);
  MultiSolution m{60, {}};
  while (m.targets.size() < 5) {
    std::string t(60, '0');
    for (char& c : t) c = rng() & 1 ? '1' : '0';
    if (std::find(m.targets.begin(), m.targets.end(), t) == m.targets.end()) m.targets.push_back(t);
  }
  const auto spec = reduced_spectrum(m, 1.0);
  const double spread = spec.reduced_eigs.at(4) - spec.reduced_eigs.at(0);
  std::size_t dim = 0;
  for (double s : {0.1, 0.3, 0.5, 0.7, 0.9}) dim = std::max(dim, effective_dim(m, s));
  return {spread < 1e-9 && dim <= 300,
          fmt("spread of the 5 lowest reduced eigenvalues at s = 1: %.3g; effective dimension %zu (limit 300)",
              spread, dim)};
}

Outcome flat_gap() {
  const double g40 = gap_profile(GroverNoiseStd{40, 10.0, 0, 0.0}).g_min;
  const double g160 = gap_profile(GroverNoiseStd{160, 10.0, 0, 0.0}).g_min;
  const double rel = std::fabs(g40 - g160) / std::max(g40, g160);
  return {rel < 0.10, fmt("g_min(40) = %.6f, g_min(160) = %.6f, relative difference %.3f (limit 0.10)", g40,
                          g160, rel)};
}

Outcome dimension_ledger() {
  std::mt19937_64 rng(8);
  std::vector<ModelSpec> models;
  for (const auto& kind : protocol_model_kinds())
    for (int n = 3; n <= 10; ++n)
      for (int d = 0; d < 5; ++d) models.push_back(random_model(kind, n, rng));
  for (int n : {20, 64, 160}) {
    models.push_back(GroverPlain{Driver::Grover, n, 1.0});
    models.push_back(GroverPlain{Driver::Standard, n, 1.0});
    for (int q : {0, 1, n / 3, n})
      for (double eps : {0.5, 2.0}) {
        models.push_back(GroverNoiseStd{n, eps, q, 0.0});
        models.push_back(GroverNoiseGrv{n, eps, q, 0.0});
      }
  }
  for (int n : {12, 40, 64}) {
    std::vector<double> v(n);
    for (double& x : v) x = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
    models.push_back(Tunneling{v});
  }
  std::size_t checked = 0, bad = 0;
  std::string first;
  for (const auto& m : models) {
    const DimensionLaw law = dimension_law(m);
    for (double s : {0.2, 0.5, 0.8}) {
      const std::size_t d = effective_dim(m, s);
      const bool ok = law.exact ? d == law.value : d <= law.value;
      ++checked;
      if (!ok && bad++ == 0)
        first = fmt(" first: %s at s=%g has %zu, law %s = %zu", model_name(m).c_str(), s, d, law.label.c_str(),
                    law.value);
    }
  }
  return {bad == 0, fmt("%zu instances checked, %zu mismatches.", checked, bad) + first};
}

Outcome tcomp_point() {
  const TcompResult r = t_comp(10, 0.5, [](int) { return t_ann_grover_override(10); }, 0.99, Schedule::GroverOverride);
  return {std::fabs(r.t_comp - 521.7) <= 0.1 && r.q_star == 5,
          fmt("T_comp = %.4f at q* = %d (want 521.7 +- 0.1)", r.t_comp, r.q_star)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"oracle exactness", oracle_exactness},
      {"noiseless Grover gap law", grover_gap_law},
      {"scaling exponents", scaling_exponents},
      {"analytic thresholds", analytic_thresholds},
      {"standard-driver schedule scaling", standard_driver_scaling},
      {"multi-solution degeneracy", multi_solution_degeneracy},
      {"flat gap, standard driver eps = 10", flat_gap},
      {"dimensionality ledger", dimension_ledger},
      {"T_comp point value", tcomp_point},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::stoi(argv[i]));
  if (selected.empty())
    for (int i = 1; i <= 9; ++i) selected.push_back(i);
  int failed = 0;
  for (int id : selected) {
    const auto& [name, fn] = criteria.at(id - 1);
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(selected.size()) - failed, selected.size());
  return failed ? 1 : 0;
}
