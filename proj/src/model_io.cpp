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

#include "aqored/model_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>

#include "aqored/errors.hpp"

namespace aqored {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const std::string& require(const KeyValues& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw InvalidInput("missing config key '" + key + "'");
  return it->second;
}

double to_real(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || !std::isfinite(x))
    throw InvalidInput("config key '" + key + "': '" + v + "' is not a real number");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long x = 0;
  try {
    x = std::stol(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw InvalidInput("config key '" + key + "': '" + v + "' is not an integer");
  return static_cast<int>(x);
}

double get_real(const KeyValues& kv, const std::string& key, double fallback) {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : to_real(key, it->second);
}

int get_int(const KeyValues& kv, const std::string& key, int fallback) {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : to_int(key, it->second);
}

// 0 means "n" to the noisy models.
double target_scale(const KeyValues& kv, double fallback) {
  auto it = kv.find("target_scale");
  if (it == kv.end()) return fallback;
  if (it->second == "n") return 0.0;
  return to_real("target_scale", it->second);
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidInput("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw InvalidInput("config line " + std::to_string(lineno) + ": empty key");
    for (char& c : key)
      if (c == '-') c = '_';
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

KeyValues read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file " + path);
  return parse_key_values(in);
}

std::string format_key_values(const KeyValues& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : parse_string_list(text)) out.push_back(to_real("list", item));
  return out;
}

std::vector<std::string> parse_string_list(const std::string& text) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw InvalidInput("empty entry in list '" + text + "'");
    out.push_back(item);
  }
  return out;
}

ModelSpec model_from_key_values(const KeyValues& kv, std::uint64_t seed) {
  const std::string model = require(kv, "model");
  ModelSpec spec;
  if (model == "grover" || model == "grover-g" || model == "grover-s") {
    GroverPlain m;
    std::string driver = model == "grover-g" ? "grover" : model == "grover-s" ? "standard" : "";
    if (auto it = kv.find("driver"); it != kv.end()) driver = it->second;
    if (driver.empty()) driver = "standard";
    if (driver == "grover") m.driver = Driver::Grover;
    else if (driver == "standard") m.driver = Driver::Standard;
    else throw InvalidInput("driver must be 'grover' or 'standard', got '" + driver + "'");
    m.n = to_int("n", require(kv, "n"));
    const double c = target_scale(kv, 1.0);
    m.target_scale = c == 0.0 ? m.n : c;
    spec = m;
  } else if (model == "noisy-standard" || model == "noisy-grover") {
    const int n = to_int("n", require(kv, "n"));
    const double eps = get_real(kv, "epsilon", 0.0);
    const int q = get_int(kv, "q", 0);
    const double c = target_scale(kv, 0.0);
    if (model == "noisy-standard") spec = GroverNoiseStd{n, eps, q, c};
    else spec = GroverNoiseGrv{n, eps, q, c};
  } else if (model == "tunneling") {
    Tunneling m;
    if (auto it = kv.find("barriers"); it != kv.end()) {
      m.barriers = parse_real_list(it->second);
      if (auto itn = kv.find("n"); itn != kv.end() &&
                                   to_int("n", itn->second) != static_cast<int>(m.barriers.size()))
        throw InvalidInput("tunneling: n differs from the number of barriers");
    } else {
      const int n = to_int("n", require(kv, "n"));
      if (n < 1 || n > 64) throw InvalidInput("tunneling: n must lie in [1, 64]");
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (int i = 0; i < n; ++i) m.barriers.push_back(u(rng));
    }
    spec = m;
  } else if (model == "multi-solution") {
    MultiSolution m;
    m.n = to_int("n", require(kv, "n"));
    if (auto it = kv.find("targets"); it != kv.end()) {
      m.targets = parse_string_list(it->second);
    } else {
      const int p = get_int(kv, "p", 2);
      if (p < 1) throw InvalidInput("multi-solution: p must be positive");
      if (m.n < 1 || m.n > 1000) throw InvalidInput("qubit count out of range");
      if (m.n < 63 && static_cast<double>(p) > std::ldexp(1.0, m.n))
        throw InvalidInput("multi-solution: more targets than basis states");
      std::mt19937_64 rng(seed);
      while (static_cast<int>(m.targets.size()) < p) {
        std::string t(static_cast<std::size_t>(m.n), '0');
        for (char& c : t) c = (rng() & 1) ? '1' : '0';
        bool dup = false;
        for (const auto& x : m.targets) dup = dup || x == t;
        if (!dup) m.targets.push_back(t);
      }
    }
    spec = m;
  } else if (model == "mlevel") {
    MLevelGrover m;
    m.energies = parse_real_list(require(kv, "energies"));
    m.degeneracies = parse_real_list(require(kv, "degeneracies"));
    spec = m;
  } else {
    throw InvalidInput("unknown model '" + model + "'");
  }
  validate(spec);
  return spec;
}

KeyValues model_to_key_values(const ModelSpec& spec) {
  KeyValues kv;
  auto join = [](const auto& xs, auto f) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + f(xs[i]);
    return out;
  };
  if (auto* m = std::get_if<GroverPlain>(&spec)) {
    kv = {{"model", "grover"},
          {"driver", m->driver == Driver::Grover ? "grover" : "standard"},
          {"n", std::to_string(m->n)},
          {"target_scale", fmt(m->target_scale)}};
  } else if (auto* m = std::get_if<GroverNoiseStd>(&spec)) {
    kv = {{"model", "noisy-standard"}, {"n", std::to_string(m->n)}, {"epsilon", fmt(m->epsilon)},
          {"q", std::to_string(m->q)}, {"target_scale", m->target_scale == 0 ? "n" : fmt(m->target_scale)}};
  } else if (auto* m = std::get_if<GroverNoiseGrv>(&spec)) {
    kv = {{"model", "noisy-grover"}, {"n", std::to_string(m->n)}, {"epsilon", fmt(m->epsilon)},
          {"q", std::to_string(m->q)}, {"target_scale", m->target_scale == 0 ? "n" : fmt(m->target_scale)}};
  } else if (auto* m = std::get_if<Tunneling>(&spec)) {
    kv = {{"model", "tunneling"},
          {"n", std::to_string(m->barriers.size())},
          {"barriers", join(m->barriers, fmt)}};
  } else if (auto* m = std::get_if<MultiSolution>(&spec)) {
    kv = {{"model", "multi-solution"},
          {"n", std::to_string(m->n)},
          {"targets", join(m->targets, [](const std::string& x) { return x; })}};
  } else if (auto* m = std::get_if<MLevelGrover>(&spec)) {
    kv = {{"model", "mlevel"}, {"energies", join(m->energies, fmt)}, {"degeneracies", join(m->degeneracies, fmt)}};
  }
  return kv;
}

}  // namespace aqored
