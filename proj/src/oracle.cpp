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

#include "aqored/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>
#include <tuple>

#include "aqored/errors.hpp"
#include "aqored/model_io.hpp"

namespace aqored {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t index_of(const std::vector<int>& bits) {
  std::size_t x = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) x |= std::size_t{1} << i;
  return x;
}

int z_eigen(std::size_t x, int i) { return ((x >> i) & 1u) ? -1 : 1; }

// coef * sum_i sigma^x_i
void add_transverse(Eigen::MatrixXd& h, int n, double coef) {
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t x = 0; x < dim; ++x)
    for (int i = 0; i < n; ++i) h(x, x ^ (std::size_t{1} << i)) += coef;
}

// coef * |psi0><psi0|
void add_uniform(Eigen::MatrixXd& h, int n, double coef) {
  h.array() += coef / static_cast<double>(std::size_t{1} << n);
}

// coef * sum_i sign_i sigma^z_i
void add_z_field(Eigen::MatrixXd& h, int n, double coef, const std::vector<int>& signs) {
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t x = 0; x < dim; ++x) {
    double e = 0.0;
    for (int i = 0; i < n; ++i) e += signs[static_cast<std::size_t>(i)] * z_eigen(x, i);
    h(x, x) += coef * e;
  }
}

std::vector<int> raising_signs(const std::vector<int>& target, const std::vector<int>& raising) {
  // sign_i (1 - 2 t_i) = +1 on raising spins, -1 elsewhere.
  std::vector<int> s(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    const int zt = target[i] ? -1 : 1;
    s[i] = raising[i] ? zt : -zt;
  }
  return s;
}

int noise_q(const ModelSpec& spec) {
  if (auto* m = std::get_if<GroverNoiseStd>(&spec)) return m->q;
  if (auto* m = std::get_if<GroverNoiseGrv>(&spec)) return m->q;
  return 0;
}

std::vector<std::size_t> default_levels(const MLevelGrover& m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.degeneracies.size(); ++i)
    out.insert(out.end(), static_cast<std::size_t>(m.degeneracies[i]), i);
  return out;
}

}  // namespace

Realization default_realization(const ModelSpec& spec) {
  const int n = qubits(spec);
  Realization r;
  r.target.assign(static_cast<std::size_t>(n), 0);
  const int q = noise_q(spec);
  std::vector<int> raising(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < q; ++i) raising[static_cast<std::size_t>(i)] = 1;
  r.noise_signs = raising_signs(r.target, raising);
  if (auto* m = std::get_if<MLevelGrover>(&spec)) r.level_of_state = default_levels(*m);
  return r;
}

Realization random_realization(const ModelSpec& spec, std::mt19937_64& rng) {
  const int n = qubits(spec);
  Realization r;
  r.target.resize(static_cast<std::size_t>(n));
  for (auto& b : r.target) b = static_cast<int>(rng() & 1u);
  const int q = noise_q(spec);
  std::vector<int> raising(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < q; ++i) raising[static_cast<std::size_t>(i)] = 1;
  std::shuffle(raising.begin(), raising.end(), rng);
  r.noise_signs = raising_signs(r.target, raising);
  if (auto* m = std::get_if<MLevelGrover>(&spec)) {
    r.level_of_state = default_levels(*m);
    std::shuffle(r.level_of_state.begin(), r.level_of_state.end(), rng);
  }
  return r;
}

DenseHamiltonian full_hamiltonian(const ModelSpec& spec, double s) {
  return full_hamiltonian(spec, s, default_realization(spec));
}

DenseHamiltonian full_hamiltonian(const ModelSpec& spec, double s, const Realization& r) {
  validate(spec);
  const int n = qubits(spec);
  if (n > kOracleMaxQubits)
    throw InvalidInput("oracle refuses n = " + std::to_string(n) + " (limit " +
                       std::to_string(kOracleMaxQubits) + ")");
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidInput("s must lie in [0, 1]");
  if (r.target.size() != static_cast<std::size_t>(n))
    throw InvalidInput("realization target has wrong length");
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const std::size_t t = index_of(r.target);

  std::visit(
      Overloaded{
          [&](const GroverPlain& m) {
            const double c = m.target_scale;
            if (m.driver == Driver::Grover) add_uniform(h, n, -c * (1.0 - s));
            else add_transverse(h, n, -(1.0 - s));
            h(t, t) += -c * s;
          },
          [&](const GroverNoiseStd& m) {
            const double c = effective_target_scale(spec);
            add_transverse(h, n, -(1.0 - s));
            h(t, t) += -c * s;
            add_z_field(h, n, s * m.epsilon, r.noise_signs);
          },
          [&](const GroverNoiseGrv& m) {
            const double c = effective_target_scale(spec);
            add_uniform(h, n, -c * (1.0 - s));
            h(t, t) += -c * s;
            add_z_field(h, n, s * m.epsilon, r.noise_signs);
          },
          [&](const Tunneling& m) {
            // -(1-s) sum sigma^x - s sum z_i(t) sigma^z + s sum V_a |t ^ e_a><t ^ e_a|
            add_transverse(h, n, -(1.0 - s));
            std::vector<int> signs(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) signs[static_cast<std::size_t>(i)] = r.target[static_cast<std::size_t>(i)] ? -1 : 1;
            add_z_field(h, n, -s, signs);
            for (int a = 0; a < n; ++a) {
              const std::size_t x = t ^ (std::size_t{1} << a);
              h(x, x) += s * m.barriers[static_cast<std::size_t>(a)];
            }
          },
          [&](const MultiSolution& m) {
            add_transverse(h, n, -(1.0 - s));
            for (const auto& w : m.targets) {
              std::size_t x = 0;
              for (int i = 0; i < n; ++i)
                if (w[static_cast<std::size_t>(i)] == '1') x |= std::size_t{1} << i;
              h(x, x) += -s;
            }
          },
          [&](const MLevelGrover& m) {
            if (r.level_of_state.size() != dim) throw InvalidInput("realization has wrong level map");
            add_uniform(h, n, -(1.0 - s));
            for (std::size_t x = 0; x < dim; ++x) h(x, x) += s * m.energies[r.level_of_state[x]];
          },
      },
      spec);
  return {n, s, SymMatrix(std::move(h))};
}

std::vector<double> full_spectrum(const DenseHamiltonian& h) {
  const auto& m = h.matrix.dense();
  bool diagonal = true;
  for (Eigen::Index j = 0; j < m.cols() && diagonal; ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != 0.0) {
        diagonal = false;
        break;
      }
  if (diagonal) {
    std::vector<double> d(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) d[static_cast<std::size_t>(i)] = m(i, i);
    std::sort(d.begin(), d.end());
    return d;
  }
  return eigvalsh(h.matrix);
}

SpectrumComparison compare_spectra(const SpectrumReconstruction& reduced, const std::vector<double>& full) {
  const double total = reduced.total_multiplicity();
  if (total != static_cast<double>(full.size()))
    throw StructuralError("spectrum size mismatch: reduced " + std::to_string(total) + " vs full " +
                          std::to_string(full.size()));
  std::vector<double> a = reduced.expanded();
  std::vector<double> b(full);
  std::sort(b.begin(), b.end());
  SpectrumComparison c;
  for (std::size_t i = 0; i < a.size(); ++i)
    c.max_abs_deviation = std::max(c.max_abs_deviation, std::fabs(a[i] - b[i]));
  if (!a.empty()) c.ground_deviation = std::fabs(a[0] - b[0]);
  if (a.size() > 1) c.gap_deviation = std::fabs((a[1] - a[0]) - (b[1] - b[0]));
  return c;
}

SpectrumComparison compare_spectra(const SpectrumReconstruction& reduced, const DenseHamiltonian& full) {
  return compare_spectra(reduced, full_spectrum(full));
}

SpectrumReconstruction reduced_spectrum(const ModelSpec& spec, double s, bool flip_chi_sign) {
  BuiltModel b = build(spec, s);
  if (flip_chi_sign) {
    auto inner = b.weights.chi;
    b.weights.chi = [inner](double t) {
      auto v = inner(t);
      for (double& x : v) x = -x;
      return v;
    };
  }
  const auto eff = assemble_effective(b.decomposition, b.weights);
  return reconstruct_full_spectrum(b.decomposition, eff);
}

std::vector<std::string> protocol_model_kinds() {
  return {"grover-g", "grover-s", "noisy-standard", "noisy-grover", "tunneling", "multi-solution", "mlevel"};
}

ModelSpec random_model(const std::string& kind, int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto scale = [&] { return (rng() & 1u) ? 1.0 : static_cast<double>(n); };
  auto pick_q = [&] { return static_cast<int>(rng() % static_cast<std::uint64_t>(n + 1)); };
  if (kind == "grover-g") return GroverPlain{Driver::Grover, n, scale()};
  if (kind == "grover-s") return GroverPlain{Driver::Standard, n, scale()};
  if (kind == "noisy-standard") {
    const double eps = 3.0 * u01(rng);
    const int q = pick_q();
    return GroverNoiseStd{n, eps, q, scale()};
  }
  if (kind == "noisy-grover") {
    const double eps = 3.0 * u01(rng);
    const int q = pick_q();
    return GroverNoiseGrv{n, eps, q, scale()};
  }
  if (kind == "tunneling") {
    Tunneling m;
    for (int i = 0; i < n; ++i) m.barriers.push_back(-1.0 + 3.0 * u01(rng));
    return m;
  }
  if (kind == "multi-solution") {
    MultiSolution m;
    m.n = n;
    const int p = std::min(1 + static_cast<int>(rng() % 4), 1 << std::min(n, 2));
    while (static_cast<int>(m.targets.size()) < p) {
      std::string t(static_cast<std::size_t>(n), '0');
      for (char& c : t) c = (rng() & 1u) ? '1' : '0';
      if (std::find(m.targets.begin(), m.targets.end(), t) == m.targets.end()) m.targets.push_back(t);
    }
    return m;
  }
  if (kind == "mlevel") {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t M = std::min<std::size_t>(2 + static_cast<std::size_t>(rng() % 5), dim);
    // Random composition of 2^n into M positive parts.
    std::vector<std::size_t> cuts;
    while (cuts.size() < M - 1) {
      const std::size_t c = 1 + static_cast<std::size_t>(rng() % (dim - 1));
      if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    MLevelGrover m;
    std::size_t prev = 0;
    for (std::size_t i = 0; i <= cuts.size(); ++i) {
      const std::size_t next = i < cuts.size() ? cuts[i] : dim;
      m.degeneracies.push_back(static_cast<double>(next - prev));
      prev = next;
    }
    while (m.energies.size() < M) {
      const double e = -2.0 + 4.0 * u01(rng);
      if (std::find(m.energies.begin(), m.energies.end(), e) == m.energies.end()) m.energies.push_back(e);
    }
    return m;
  }
  throw InvalidInput("unknown model kind '" + kind + "'");
}

namespace {

std::string describe(const ModelSpec& spec) {
  std::string out;
  for (const auto& [k, v] : model_to_key_values(spec)) {
    if (!out.empty()) out += ' ';
    out += k + '=' + v;
  }
  return out;
}

// Brute-force spectra of matrices that recur across draws (s = 0 drivers).
class SpectrumCache {
 public:
  std::vector<double> get(const DenseHamiltonian& h) {
    const auto& m = h.matrix.dense();
    std::uint64_t key = 1469598103934665603ull;
    const auto* bytes = reinterpret_cast<const unsigned char*>(m.data());
    for (std::size_t i = 0; i < static_cast<std::size_t>(m.size()) * sizeof(double); ++i)
      key = (key ^ bytes[i]) * 1099511628211ull;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = entries_.find(key);
      if (it != entries_.end() && it->second.first == m) return it->second.second;
    }
    auto spec = full_spectrum(h);
    std::lock_guard<std::mutex> lock(mu_);
    entries_.emplace(key, std::make_pair(m, spec));
    return spec;
  }

 private:
  std::mutex mu_;
  std::map<std::uint64_t, std::pair<Eigen::MatrixXd, std::vector<double>>> entries_;
};

struct CaseResult {
  double max_dev = 0.0;
  std::size_t cases = 0;
  std::vector<ProtocolFailure> failures;
};

}  // namespace

ProtocolReport run_protocol(const ProtocolOptions& o) {
  if (o.n_min < 1 || o.n_max > kOracleMaxQubits || o.n_min > o.n_max)
    throw InvalidInput("protocol qubit range must lie within [1, " + std::to_string(kOracleMaxQubits) + "]");
  if (o.s_points < 2 || o.draws < 1) throw InvalidInput("protocol needs >= 2 s-points and >= 1 draw");
  const auto kinds = o.models.empty() ? protocol_model_kinds() : o.models;

  struct Task {
    std::size_t kind;
    int n;
    int draw;
  };
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < kinds.size(); ++k)
    for (int n = o.n_min; n <= o.n_max; ++n)
      for (int d = 0; d < o.draws; ++d) tasks.push_back({k, n, d});
  // Large instances first so the pool drains evenly.
  std::stable_sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) { return a.n > b.n; });

  SpectrumCache cache;
  std::vector<CaseResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      std::seed_seq seq{static_cast<std::uint64_t>(o.seed), static_cast<std::uint64_t>(t.kind),
                        static_cast<std::uint64_t>(t.n), static_cast<std::uint64_t>(t.draw)};
      std::mt19937_64 rng(seq);
      const ModelSpec spec = random_model(kinds[t.kind], t.n, rng);
      const Realization real = random_realization(spec, rng);
      CaseResult& res = results[i];
      for (int j = 0; j < o.s_points; ++j) {
        const double s = static_cast<double>(j) / (o.s_points - 1);
        const auto dense = full_hamiltonian(spec, s, real);
        const auto full = (j == 0) ? cache.get(dense) : full_spectrum(dense);
        const auto red = reduced_spectrum(spec, s, o.flip_chi_sign);
        double dev;
        try {
          dev = compare_spectra(red, full).max_abs_deviation;
        } catch (const StructuralError&) {
          dev = std::numeric_limits<double>::infinity();
        }
        res.max_dev = std::max(res.max_dev, dev);
        ++res.cases;
        if (!(dev < o.tolerance))
          res.failures.push_back({kinds[t.kind], t.n, s, describe(spec), dev});
      }
    }
  };
  const int w = std::max(1, o.workers);
  std::vector<std::thread> pool;
  for (int i = 1; i < w; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // Deterministic reduction in (kind, n, draw) order.
  std::vector<std::size_t> order(tasks.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Task &x = tasks[a], &y = tasks[b];
    return std::tie(x.kind, x.n, x.draw) < std::tie(y.kind, y.n, y.draw);
  });
  ProtocolReport rep;
  for (const auto& k : kinds) rep.per_model.push_back({k, 0.0, 0});
  for (std::size_t i : order) {
    auto& pm = rep.per_model[tasks[i].kind];
    pm.max_deviation = std::max(pm.max_deviation, results[i].max_dev);
    pm.cases += results[i].cases;
    for (auto& f : results[i].failures) rep.failures.push_back(f);
  }
  return rep;
}

}  // namespace aqored
