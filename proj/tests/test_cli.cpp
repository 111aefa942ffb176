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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "aqored/cli.hpp"
#include "doctest.h"

using namespace aqored;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "aqored");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> v;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) v.push_back(f);
  return v;
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"gap", "--model", "nonsense", "--n", "4"}).code == cli::kExitUsage);
  const Run r = invoke({"verify", "--n-min", "3", "--n-max", "11"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("n <= 10") != std::string::npos);
}

TEST_CASE("tcomp override row") {
  const Run r = invoke({"tcomp", "--model", "noisy-grover", "--n", "10", "--epsilon", "0.5", "--schedule",
                        "grover-override"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 2);
  CHECK(l[0] == "model,driver,schedule,n,epsilon,log2_Tcomp,q_star");
  const auto f = fields(l[1]);
  CHECK(std::stod(f[5]) == doctest::Approx(std::log2(521.7)).epsilon(1e-3));
  CHECK(f[6] == "5");
}

TEST_CASE("empty sweep writes only the header") {
  const Run r = invoke({"gap", "--model", "noisy-grover", "--n-min", "12", "--n-max", "10", "--epsilon", "0.5"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == std::vector<std::string>{"model,n,epsilon,q,s_star,g_min"});
}

TEST_CASE("spectrum is deterministic") {
  const std::vector<std::string> args{"spectrum", "--model", "tunneling", "--n", "3", "--barriers", "0.5,1,2",
                                      "--levels", "2", "--s-points", "3"};
  const Run a = invoke(args), b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto l = lines(a.out);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "s,dE_1,dE_2");
  CHECK(l[3] == "1,2.5,3");
  const std::vector<std::string> random_args{"spectrum", "--model", "tunneling", "--n", "3", "--levels", "2",
                                             "--s-points", "3", "--seed", "4"};
  CHECK(invoke(random_args).out == invoke(random_args).out);
}

TEST_CASE("verify exit codes") {
  const std::vector<std::string> base{"verify", "--n-min", "3", "--n-max", "4", "--draws", "2", "--s-points", "3"};
  CHECK(invoke(base).code == 0);
  auto bad = base;
  bad.push_back("--inject-chi-sign-error");
  const Run r = invoke(bad);
  CHECK(r.code == cli::kExitFailure);
  CHECK(r.err.find("verification failed") != std::string::npos);
}

TEST_CASE("config file with command-line override") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto cfg = dir / "aqored_cli_test.cfg";
  const auto out = dir / "aqored_cli_test.csv";
  {
    std::ofstream f(cfg);
    f << "# sweep\nmodel = noisy-grover\nn = 8\nepsilon = 0.5\nschedule = linear\n";
  }
  const Run r = invoke({"tcomp", "--config", cfg.string(), "--schedule", "grover-override", "--out", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out);
  std::stringstream body;
  body << in.rdbuf();
  const auto l = lines(body.str());
  REQUIRE(l.size() == 2);
  CHECK(fields(l[1])[2] == "grover-override");
  CHECK(fields(l[1])[3] == "8");
  std::filesystem::remove(cfg);
  std::filesystem::remove(out);
}
