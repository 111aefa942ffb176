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

#include "aqored/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "aqored/annealing.hpp"
#include "aqored/errors.hpp"
#include "aqored/oracle.hpp"

namespace aqored::cli {

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool has(const KeyValues& cfg, const std::string& k) { return cfg.count(k) > 0; }

std::string get(const KeyValues& cfg, const std::string& k, const std::string& fallback) {
  auto it = cfg.find(k);
  return it == cfg.end() ? fallback : it->second;
}

long get_int(const KeyValues& cfg, const std::string& k, long fallback) {
  auto it = cfg.find(k);
  if (it == cfg.end()) return fallback;
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != it->second.size())
    throw InvalidInput("'" + k + "' expects an integer, got '" + it->second + "'");
  return v;
}

double get_real(const KeyValues& cfg, const std::string& k, double fallback) {
  auto it = cfg.find(k);
  if (it == cfg.end()) return fallback;
  auto v = parse_real_list(it->second);
  if (v.size() != 1) throw InvalidInput("'" + k + "' expects one real number");
  return v[0];
}

bool get_flag(const KeyValues& cfg, const std::string& k) {
  const std::string v = get(cfg, k, "false");
  return v == "true" || v == "1" || v == "yes";
}

int workers(const KeyValues& cfg) {
  long w = 1;
  if (const char* env = std::getenv("AQORED_WORKERS"); env && *env) {
    try {
      w = std::stol(env);
    } catch (const std::exception&) {
      throw InvalidInput("AQORED_WORKERS must be an integer");
    }
  }
  w = get_int(cfg, "workers", w);
  if (w < 1) throw InvalidInput("worker count must be positive");
  return static_cast<int>(w);
}

std::uint64_t seed(const KeyValues& cfg) {
  const long s = get_int(cfg, "seed", 0);
  if (s < 0) throw InvalidInput("seed must be non-negative");
  return static_cast<std::uint64_t>(s);
}

std::vector<int> n_values(const KeyValues& cfg, int def_min = -1, int def_max = -1) {
  if (has(cfg, "n_min") || has(cfg, "n_max") || has(cfg, "n_step")) {
    const long lo = get_int(cfg, "n_min", get_int(cfg, "n", def_min > 0 ? def_min : 1));
    const long hi = get_int(cfg, "n_max", lo);
    const long step = get_int(cfg, "n_step", 1);
    if (step < 1) throw InvalidInput("n_step must be positive");
    std::vector<int> out;
    for (long n = lo; n <= hi; n += step) out.push_back(static_cast<int>(n));
    return out;
  }
  if (has(cfg, "n")) return {static_cast<int>(get_int(cfg, "n", 0))};
  if (def_min > 0) {
    std::vector<int> out;
    for (int n = def_min; n <= def_max; ++n) out.push_back(n);
    return out;
  }
  throw InvalidInput("no qubit count given (use --n or --n-min/--n-max)");
}

std::vector<double> epsilons(const KeyValues& cfg) {
  auto e = parse_real_list(get(cfg, "epsilon", "0"));
  for (double x : e)
    if (!(x >= 0.0)) throw InvalidInput("epsilon values must be >= 0");
  return e;
}

const std::string& model_key(const KeyValues& cfg) {
  auto it = cfg.find("model");
  if (it == cfg.end()) throw InvalidInput("no model given (use --model)");
  return it->second;
}

bool is_noisy(const std::string& model) { return model == "noisy-standard" || model == "noisy-grover"; }

ModelSpec make_model(const KeyValues& cfg, int n, double eps, int q) {
  static const char* keys[] = {"model", "driver", "target_scale", "barriers", "targets",
                               "p",     "energies", "degeneracies"};
  KeyValues kv;
  for (const char* k : keys)
    if (has(cfg, k)) kv[k] = cfg.at(k);
  kv["n"] = std::to_string(n);
  if (is_noisy(model_key(cfg))) {
    kv["epsilon"] = num(eps);
    kv["q"] = std::to_string(q);
  }
  return model_from_key_values(kv, seed(cfg));
}

// Runs f(i) for i in [0, count) on a small pool; rethrows the first exception.
template <class F>
void parallel_for(std::size_t count, int nworkers, F&& f) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  auto body = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first) first = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < nworkers && static_cast<std::size_t>(w) < count; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

std::vector<int> q_values(const KeyValues& cfg, int n, double eps) {
  const std::string q = get(cfg, "q", "0");
  std::vector<int> out;
  if (q == "scan") {
    for (int v = 0; v <= n; ++v) out.push_back(v);
  } else {
    const long v = get_int(cfg, "q", 0);
    if (v < 0) throw InvalidInput("q must be non-negative");
    if (v <= n) out.push_back(static_cast<int>(v));
  }
  if (get_flag(cfg, "feasible_only")) {
    const int qe = q_epsilon(n, eps);
    std::erase_if(out, [qe](int v) { return v >= qe; });
  }
  return out;
}

GapOptions gap_options(const KeyValues& cfg) {
  GapOptions o;
  o.coarse_points = static_cast<int>(get_int(cfg, "s_points", 257));
  if (o.coarse_points < 16) throw InvalidInput("s_points must be at least 16 for gap searches");
  return o;
}

struct TcompRow {
  std::string model, driver;
  Schedule schedule;
  TcompResult result;
};

std::vector<TcompRow> tcomp_rows(const KeyValues& cfg, std::string& messages) {
  const std::string model = model_key(cfg);
  const Schedule sched = parse_schedule(get(cfg, "schedule", "linear"));
  const double target = get_real(cfg, "target_success", 0.99);
  OptimalOptions oo;
  oo.adiabaticity = get_real(cfg, "adiabaticity", 1.0);
  oo.gap = gap_options(cfg);
  const auto ns = n_values(cfg);
  const auto eps_list = is_noisy(model) ? epsilons(cfg) : std::vector<double>{0.0};

  struct Cell {
    int n;
    double eps;
    int q;
    double t = 0.0;
    double bound = 0.0;  // lower bound on t (optimal schedule)
    GapProfile profile;
    std::string warning;
  };
  std::vector<Cell> cells;
  std::vector<std::pair<std::size_t, std::size_t>> spans;  // per (n, eps): [first, last)
  for (int n : ns)
    for (double e : eps_list) {
      const std::size_t first = cells.size();
      // Without noise the spectrum does not depend on q: one cell serves all q.
      const int qmax = (e == 0.0 || sched == Schedule::GroverOverride) ? 0 : q_epsilon(n, e);
      for (int q = 0; q <= qmax; ++q) cells.push_back({n, e, q, 0.0, 0.0, {}, {}});
      spans.emplace_back(first, cells.size());
    }

  parallel_for(cells.size(), workers(cfg), [&](std::size_t i) {
    Cell& c = cells[i];
    const ModelSpec spec = make_model(cfg, c.n, c.eps, c.q);
    switch (sched) {
      case Schedule::GroverOverride:
        if (!uses_grover_driver(spec))
          throw InvalidInput("schedule grover-override needs a Grover-driver model");
        c.t = t_ann_grover_override(c.n);
        break;
      case Schedule::Linear:
        c.t = t_ann_linear(gap_profile(spec, oo.gap));
        break;
      case Schedule::Optimal:
        c.profile = gap_profile(spec, oo.gap);
        c.bound = t_ann_optimal_lower_bound(c.profile, gap_lipschitz_bound(spec), oo.adiabaticity);
        break;
    }
  });

  std::vector<TcompResult> results(spans.size());
  parallel_for(spans.size(), workers(cfg), [&](std::size_t k) {
    const auto [first, last] = spans[k];
    const bool shared = (last - first == 1);
    auto cell = [&](int q) -> Cell& { return cells[shared ? first : first + static_cast<std::size_t>(q)]; };
    const int n = cells[first].n;
    const double e = cells[first].eps;
    if (sched != Schedule::Optimal) {
      results[k] = t_comp(n, e, [&](int q) { return cell(q).t; }, target, sched);
      return;
    }
    // Integrals are only computed for q whose lower bound can still win.
    auto t_of_q = [&](int q) {
      Cell& c = cell(q);
      if (c.t > 0.0) return c.t;
      try {
        c.t = t_ann_optimal(make_model(cfg, c.n, c.eps, c.q), c.profile, oo);
      } catch (const DivergenceError& ex) {
        c.t = std::numeric_limits<double>::infinity();
        c.warning = "warning: n=" + std::to_string(c.n) + " epsilon=" + num(c.eps) +
                    " q=" + std::to_string(c.q) + ": " + ex.what() + "\n";
      }
      return c.t;
    };
    results[k] = t_comp_pruned(n, e, t_of_q, [&](int q) { return cell(q).bound; }, target, sched);
  });

  std::vector<TcompRow> rows;
  std::size_t k = 0;
  for (int n : ns)
    for (double e : eps_list) {
      const auto [first, last] = spans[k];
      for (std::size_t i = first; i < last; ++i) messages += cells[i].warning;
      TcompRow row;
      const ModelSpec spec = make_model(cfg, n, e, 0);
      row.model = model_name(spec);
      row.driver = uses_grover_driver(spec) ? "grover" : "standard";
      row.schedule = sched;
      row.result = results[k++];
      rows.push_back(row);
    }
  return rows;
}

}  // namespace

CommandResult cmd_gap(const KeyValues& cfg) {
  const std::string model = model_key(cfg);
  const GapOptions opts = gap_options(cfg);
  struct Row {
    int n;
    double eps;
    int q;
    std::string name;
    GapProfile p;
  };
  std::vector<Row> rows;
  for (int n : n_values(cfg)) {
    if (is_noisy(model)) {
      for (double e : epsilons(cfg))
        for (int q : q_values(cfg, n, e)) rows.push_back({n, e, q, {}, {}});
    } else {
      rows.push_back({n, 0.0, 0, {}, {}});
    }
  }
  parallel_for(rows.size(), workers(cfg), [&](std::size_t i) {
    const ModelSpec spec = make_model(cfg, rows[i].n, rows[i].eps, rows[i].q);
    rows[i].name = model_name(spec);
    rows[i].p = gap_profile(spec, opts);
  });
  CommandResult r;
  r.output = "model,n,epsilon,q,s_star,g_min\n";
  for (const auto& row : rows) {
    r.output += row.name + "," + std::to_string(row.n) + "," + num(row.eps) + "," + std::to_string(row.q) +
                "," + num(row.p.s_star) + "," + num(row.p.g_min) + "\n";
    if (row.p.degenerate)
      r.messages += "warning: n=" + std::to_string(row.n) + " q=" + std::to_string(row.q) +
                    ": degenerate ground state at s=" + num(row.p.s_star) + "\n";
  }
  return r;
}

CommandResult cmd_tcomp(const KeyValues& cfg) {
  CommandResult r;
  const auto rows = tcomp_rows(cfg, r.messages);
  r.output = "model,driver,schedule,n,epsilon,log2_Tcomp,q_star\n";
  for (const auto& row : rows)
    r.output += row.model + "," + row.driver + "," + schedule_name(row.schedule) + "," +
                std::to_string(row.result.n) + "," + num(row.result.epsilon) + "," +
                num(row.result.log2_t_comp) + "," + std::to_string(row.result.q_star) + "\n";
  return r;
}

CommandResult cmd_scaling(const KeyValues& cfg) {
  CommandResult r;
  const auto rows = tcomp_rows(cfg, r.messages);
  nlohmann::ordered_json doc;
  doc["model"] = rows.empty() ? model_key(cfg) : rows.front().model;
  doc["driver"] = rows.empty() ? "" : rows.front().driver;
  doc["schedule"] = get(cfg, "schedule", "linear");
  doc["fits"] = nlohmann::ordered_json::array();
  std::vector<double> eps_seen;
  for (const auto& row : rows)
    if (std::find(eps_seen.begin(), eps_seen.end(), row.result.epsilon) == eps_seen.end())
      eps_seen.push_back(row.result.epsilon);
  for (double e : eps_seen) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : rows)
      if (row.result.epsilon == e && std::isfinite(row.result.log2_t_comp))
        pts.emplace_back(row.result.n, row.result.log2_t_comp);
    nlohmann::ordered_json fit;
    fit["epsilon"] = e;
    try {
      const ScalingFit f = fit_exponent(pts);
      fit["slope"] = f.slope;
      fit["intercept"] = f.intercept;
      fit["max_residual"] = f.max_residual;
      fit["n_min"] = f.n_min;
      fit["n_max"] = f.n_max;
      fit["points"] = f.points;
    } catch (const Error& ex) {
      r.exit_code = kExitFailure;
      r.messages += "error: fit for epsilon=" + num(e) + " failed: " + ex.what() + "\n";
      fit["slope"] = nullptr;
    }
    fit["analytic"] = e > 0.0 ? nlohmann::ordered_json(analytic_scaling(e)) : nlohmann::ordered_json(nullptr);
    doc["fits"].push_back(fit);
  }
  if (eps_seen.empty()) {
    r.exit_code = kExitFailure;
    r.messages += "error: empty sweep, nothing to fit\n";
  }
  r.output = doc.dump(2) + "\n";
  return r;
}

CommandResult cmd_verify(const KeyValues& cfg) {
  ProtocolOptions o;
  const auto ns = n_values(cfg, 3, kOracleMaxQubits);
  if (ns.empty()) throw InvalidInput("empty qubit range");
  o.n_min = *std::min_element(ns.begin(), ns.end());
  o.n_max = *std::max_element(ns.begin(), ns.end());
  if (o.n_max > kOracleMaxQubits || o.n_min < 1)
    throw InvalidInput("verify supports 1 <= n <= " + std::to_string(kOracleMaxQubits));
  o.draws = static_cast<int>(get_int(cfg, "draws", 20));
  o.s_points = static_cast<int>(get_int(cfg, "s_points", 11));
  o.seed = seed(cfg);
  o.flip_chi_sign = get_flag(cfg, "inject_chi_sign_error");
  o.workers = workers(cfg);
  if (has(cfg, "models")) {
    o.models = parse_string_list(cfg.at("models"));
  } else if (has(cfg, "model")) {
    const std::string m = cfg.at("model");
    if (m == "grover") {
      const std::string d = get(cfg, "driver", "");
      if (d == "grover") o.models = {"grover-g"};
      else if (d == "standard") o.models = {"grover-s"};
      else o.models = {"grover-g", "grover-s"};
    } else {
      o.models = {m};
    }
  }
  const auto kinds = protocol_model_kinds();
  for (const auto& m : o.models)
    if (std::find(kinds.begin(), kinds.end(), m) == kinds.end())
      throw InvalidInput("unknown model kind '" + m + "'");
  const ProtocolReport rep = run_protocol(o);
  CommandResult r;
  r.output = "# seed=" + std::to_string(o.seed) + " draws=" + std::to_string(o.draws) +
             " s_points=" + std::to_string(o.s_points) + " n=" + std::to_string(o.n_min) + ".." +
             std::to_string(o.n_max) + "\n";
  r.output += "model,max_deviation,cases\n";
  for (const auto& pm : rep.per_model)
    r.output += pm.model + "," + num(pm.max_deviation) + "," + std::to_string(pm.cases) + "\n";
  for (const auto& f : rep.failures)
    r.output += "FAIL model=" + f.model + " n=" + std::to_string(f.n) + " s=" + num(f.s) +
                " deviation=" + num(f.deviation) + " params: " + f.params + "\n";
  r.exit_code = rep.passed() ? kExitOk : kExitFailure;
  if (!rep.passed())
    r.messages += "verification failed in " + std::to_string(rep.failures.size()) + " case(s)\n";
  return r;
}

CommandResult cmd_spectrum(const KeyValues& cfg) {
  const auto ns = n_values(cfg);
  if (ns.size() != 1) throw InvalidInput("spectrum takes a single qubit count");
  const double eps = is_noisy(model_key(cfg)) ? epsilons(cfg).at(0) : 0.0;
  const long qv = is_noisy(model_key(cfg)) ? get_int(cfg, "q", 0) : 0;
  const ModelSpec spec = make_model(cfg, ns[0], eps, static_cast<int>(qv));
  const long points = get_int(cfg, "s_points", 101);
  if (points < 2) throw InvalidInput("s_points must be at least 2");
  long m = get_int(cfg, "levels", 1);
  if (m < 1) throw InvalidInput("levels must be positive");
  CommandResult r;
  const BuiltModel mid = build(spec, 0.5);
  const std::size_t dim = assemble_effective(mid.decomposition, mid.weights).matrix.dim();
  const long cap = std::max<long>(1, static_cast<long>(dim) - 1);
  if (m > cap) {
    r.messages += "warning: levels clipped from " + std::to_string(m) + " to " + std::to_string(cap) +
                  " (reduced dimension " + std::to_string(dim) + ")\n";
    m = cap;
  }
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(points));
  parallel_for(rows.size(), workers(cfg), [&](std::size_t i) {
    const double s = static_cast<double>(i) / static_cast<double>(points - 1);
    rows[i] = level_gaps(spec, s, static_cast<std::size_t>(m));
  });
  r.output = "s";
  for (long l = 1; l <= m; ++l) r.output += ",dE_" + std::to_string(l);
  r.output += "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    r.output += num(static_cast<double>(i) / static_cast<double>(points - 1));
    for (long l = 0; l < m; ++l)
      r.output += "," + (static_cast<std::size_t>(l) < rows[i].size() ? num(rows[i][static_cast<std::size_t>(l)]) : std::string("nan"));
    r.output += "\n";
  }
  return r;
}

namespace {

void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidInput("cannot write output file " + path);
    f << text;
    f.flush();
    if (!f) throw Error("failed writing " + tmp.string());
  }
  fs::rename(tmp, target);
}

const char* kFooter = R"(
Config file: one 'key = value' per line, '#' comments. Keys mirror the long
flags with dashes replaced by underscores; flags override the file.

Model keys:
  model         grover | noisy-standard | noisy-grover | tunneling | multi-solution | mlevel
  n             qubit count (or n_min / n_max / n_step for sweeps)
  driver        grover | standard                 (model = grover)
  epsilon       comma list of noise strengths      (noisy models)
  q             target Hamming weight, or 'scan'   (noisy models)
  target_scale  1 | n | positive real
  barriers      comma list of reals (tunneling; random in [0,1) from seed if absent)
  targets       comma list of bit strings (multi-solution; p random ones if absent)
  p             number of random targets
  energies, degeneracies  comma lists (mlevel)

Outputs (17 significant digits):
  gap       model,n,epsilon,q,s_star,g_min
  tcomp     model,driver,schedule,n,epsilon,log2_Tcomp,q_star
  scaling   JSON: per-epsilon slope, intercept, max_residual, analytic
  verify    model,max_deviation,cases plus FAIL lines
  spectrum  s,dE_1,...,dE_m   (dE_l = E_l - E_0)

Exit codes: 0 success, 1 verification or fit failure, 2 usage error.
Environment: AQORED_WORKERS sets the default worker count.
)";

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"aqored: exact reduced spectra, gaps and annealing times for adiabatic optimization"};
  app.footer(kFooter);
  app.require_subcommand(1);

  struct Opt {
    const char* flag;
    const char* key;
    const char* help;
  };
  static const Opt opts[] = {
      {"--config", "config", "key = value config file"},
      {"--model", "model", "model name"},
      {"--n", "n", "qubit count"},
      {"--n-min", "n_min", "sweep start"},
      {"--n-max", "n_max", "sweep end (inclusive)"},
      {"--n-step", "n_step", "sweep step"},
      {"--epsilon", "epsilon", "comma list of noise strengths"},
      {"--q", "q", "target Hamming weight or 'scan'"},
      {"--schedule", "schedule", "linear | optimal | grover-override"},
      {"--s-points", "s_points", "coarse grid size (gap/tcomp/scaling), s samples (spectrum, verify)"},
      {"--levels", "levels", "number of excitation gaps (spectrum)"},
      {"--seed", "seed", "random seed (default 0)"},
      {"--workers", "workers", "worker threads"},
      {"--out", "out", "output path (written atomically)"},
      {"--driver", "driver", "grover | standard"},
      {"--target-scale", "target_scale", "1 | n | positive real"},
      {"--barriers", "barriers", "tunneling barrier heights"},
      {"--targets", "targets", "multi-solution bit strings"},
      {"--p", "p", "number of random multi-solution targets"},
      {"--energies", "energies", "mlevel energies"},
      {"--degeneracies", "degeneracies", "mlevel degeneracies"},
      {"--target-success", "target_success", "success probability for T_comp (default 0.99)"},
      {"--adiabaticity", "adiabaticity", "schedule constant in ds/dt = c g^2 (default 1)"},
      {"--draws", "draws", "random draws per model and n (verify)"},
      {"--models", "models", "comma list of model kinds (verify)"},
  };
  struct Sub {
    CLI::App* app;
    std::map<std::string, std::string> values;
    bool feasible = false;
    bool inject = false;
  };
  static const std::pair<const char*, const char*> commands[] = {
      {"gap", "minimum gap per (n, epsilon, q)"},
      {"tcomp", "computational time per (n, epsilon)"},
      {"scaling", "fitted exponents of log2 T_comp versus n"},
      {"verify", "compare reduced spectra with brute force (n <= 10)"},
      {"spectrum", "low-lying excitation energies along s"},
  };
  std::vector<std::unique_ptr<Sub>> subs;
  for (const auto& [name, desc] : commands) {
    auto s = std::make_unique<Sub>();
    s->app = app.add_subcommand(name, desc);
    for (const auto& o : opts) s->app->add_option(o.flag, s->values[o.key], o.help);
    s->app->add_flag("--feasible-only", s->feasible, "keep only q < q_epsilon rows (gap)");
    s->app->add_flag("--inject-chi-sign-error", s->inject)->group("");
    subs.push_back(std::move(s));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (std::size_t i = 0; i < subs.size(); ++i) {
      Sub& s = *subs[i];
      if (!s.app->parsed()) continue;
      KeyValues cfg;
      if (s.app->count("--config")) cfg = read_key_values(s.values["config"]);
      for (const auto& o : opts)
        if (s.app->count(o.flag) && std::string(o.key) != "config") cfg[o.key] = s.values[o.key];
      if (s.feasible) cfg["feasible_only"] = "true";
      if (s.inject) cfg["inject_chi_sign_error"] = "true";
      CommandResult r;
      switch (i) {
        case 0: r = cmd_gap(cfg); break;
        case 1: r = cmd_tcomp(cfg); break;
        case 2: r = cmd_scaling(cfg); break;
        case 3: r = cmd_verify(cfg); break;
        default: r = cmd_spectrum(cfg); break;
      }
      err << r.messages;
      if (has(cfg, "out")) write_atomic(cfg.at("out"), r.output);
      else out << r.output;
      return r.exit_code;
    }
  } catch (const InvalidInput& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ModelError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace aqored::cli
