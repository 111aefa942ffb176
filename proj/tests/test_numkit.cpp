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

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <cmath>
#include <random>

#include "aqored/ddouble.hpp"
#include "aqored/errors.hpp"
#include "aqored/linalg.hpp"
#include "aqored/signed_log.hpp"
#include "doctest.h"

using namespace aqored;

namespace {

// Characteristic polynomial by Faddeev-LeVerrier, roots from the companion
// matrix with a general (non-symmetric) eigensolver.
std::vector<double> charpoly_roots(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<double> c(n + 1);
  c[n] = 1.0;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * Eigen::MatrixXd::Identity(n, n);
    c[n - k] = -(a * m).trace() / k;
  }
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
  std::vector<double> r;
  for (int i = 0; i < n; ++i) r.push_back(es.eigenvalues()(i).real());
  std::sort(r.begin(), r.end());
  return r;
}

double binom_exact_log(long n, long k) {
  boost::multiprecision::cpp_int b = 1;
  for (long i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  // log of a big integer through its top 53 bits
  const auto bits = static_cast<long>(boost::multiprecision::msb(b));
  const long shift = std::max(0L, bits - 60);
  const double top = static_cast<double>(static_cast<unsigned long long>(b >> shift));
  return std::log(top) + shift * std::log(2.0);
}

}  // namespace

TEST_CASE("signed log sums") {
  const auto two = SignedLogReal::from_log(std::log(2.0));
  const auto minus_one = SignedLogReal::from_log(0.0, -1);
  const auto r = signed_logsumexp({two, minus_one});
  CHECK(r.sign == 1);
  CHECK(r.logmag == doctest::Approx(0.0).epsilon(1e-15));

  const auto x = SignedLogReal::from_log(3.7);
  CHECK(signed_logsumexp({x, -x}).is_zero());
  CHECK(SignedLogReal::zero().to_double() == 0.0);
  CHECK(SignedLogReal::from_log(123.0, 0).is_zero());
}

TEST_CASE("signed log round trip and arithmetic") {
  for (double v : {1.0, -2.5, 1e-300, -7.25e200, 0.125}) {
    const auto s = SignedLogReal::from_double(v);
    // exp(log|v|) carries |log v| units of rounding in the exponent
    CHECK(s.to_double() == doctest::Approx(v).epsilon(4e-16 * (1.0 + std::fabs(std::log(std::fabs(v))))));
  }
  const auto a = SignedLogReal::from_double(-3.0), b = SignedLogReal::from_double(4.0);
  CHECK((a * b).to_double() == doctest::Approx(-12.0));
  CHECK((a / b).to_double() == doctest::Approx(-0.75));
  CHECK(SignedLogReal::from_double(9.0).sqrt().to_double() == doctest::Approx(3.0));
  CHECK(SignedLogReal::from_double(0.0).is_zero());
}

TEST_CASE("alternating Krawtchouk-type sum cancels exactly") {
  // sum_j (-1)^j C(u, j) C(n-u, d-j) for n=4, u=1, d=2: C(3,2) - C(3,1) = 0
  std::vector<SignedLogReal> terms;
  const long n = 4, u = 1, d = 2;
  for (long j = 0; j <= std::min(u, d); ++j)
    terms.push_back(SignedLogReal::from_log(log_binomial(u, j) + log_binomial(n - u, d - j), j % 2 ? -1 : 1));
  CHECK(signed_logsumexp(terms).is_zero());
}

TEST_CASE("log binomial") {
  CHECK(log_binomial(4, 2) == doctest::Approx(std::log(6.0)).epsilon(1e-15));
  CHECK(log_binomial(4, 2) == doctest::Approx(1.791759).epsilon(1e-6));
  for (long n : {0L, 1L, 17L, 160L}) CHECK(log_binomial(n, 0) == 0.0);
  const double lg = boost::math::lgamma(161.0) - 2.0 * boost::math::lgamma(81.0);
  CHECK(log_binomial(160, 80) == doctest::Approx(lg).epsilon(1e-10));
  for (long k : {1L, 7L, 33L, 80L, 159L}) CHECK(log_binomial(160, k) == doctest::Approx(binom_exact_log(160, k)).epsilon(1e-13));
  CHECK_THROWS_AS(log_binomial(3, 4), InvalidInput);
}

TEST_CASE("eigh small cases") {
  auto d = eigh(SymMatrix::diagonal({1.0, 2.0}));
  CHECK(d.values == std::vector<double>{1.0, 2.0});
  CHECK(std::fabs(d.vectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::fabs(d.vectors(1, 1)) == doctest::Approx(1.0));

  SymMatrix x(2);
  x.set(0, 1, 1.0);
  auto e = eigvalsh(x);
  CHECK(e[0] == doctest::Approx(-1.0));
  CHECK(e[1] == doctest::Approx(1.0));
}

TEST_CASE("eigh agrees with characteristic polynomial roots") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXd a(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = u(rng);
    const auto ev = eigvalsh(SymMatrix(a));
    const auto roots = charpoly_roots(a);
    for (int i = 0; i < 5; ++i) CHECK(std::fabs(ev[i] - roots[i]) < 1e-10);
  }
}

TEST_CASE("eigh vectors are orthonormal and diagonalize") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = g(rng);
  const auto d = eigh(SymMatrix(a));
  const Eigen::MatrixXd& v = d.vectors;
  CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(8, 8)).norm() < 1e-12);
  const Eigen::VectorXd lam = Eigen::Map<const Eigen::VectorXd>(d.values.data(), 8);
  CHECK((a * v - v * lam.asDiagonal()).norm() < 1e-11);
  CHECK(std::is_sorted(d.values.begin(), d.values.end()));
}

TEST_CASE("SymMatrix rejects asymmetric input") {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 3, 4;
  CHECK_THROWS_AS(SymMatrix{m}, InvalidInput);
  SymMatrix s(3);
  s.set(0, 2, 5.0);
  CHECK(s(2, 0) == 5.0);
}

TEST_CASE("pivoted Cholesky") {
  auto id = pivoted_psd_cholesky(SymMatrix::identity(3));
  CHECK(id.rank == 3);
  CHECK((id.factor - Eigen::MatrixXd::Identity(3, 3)).norm() == 0.0);

  auto ones = pivoted_psd_cholesky(SymMatrix(Eigen::MatrixXd::Ones(3, 3)));
  CHECK(ones.rank == 1);
  for (int j = 0; j < 3; ++j) CHECK(ones.factor(0, j) == doctest::Approx(1.0));

  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(4, 6);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 6; ++j) a(i, j) = g(rng);
  const Eigen::MatrixXd gram = a.transpose() * a;
  Eigen::MatrixXd sym = 0.5 * (gram + gram.transpose());
  auto c = pivoted_psd_cholesky(SymMatrix(sym));
  CHECK(c.rank == 4);
  CHECK((c.factor.transpose() * c.factor - sym).cwiseAbs().maxCoeff() < 1e-12 * sym.diagonal().maxCoeff());
  std::vector<std::size_t> perm = c.pivots;
  std::sort(perm.begin(), perm.end());
  for (std::size_t i = 0; i < 6; ++i) CHECK(perm[i] == i);
}

TEST_CASE("pivoted Cholesky rejects indefinite input") {
  SymMatrix m(2);
  m.set(0, 0, 1.0);
  m.set(1, 1, 1.0);
  m.set(0, 1, 2.0);
  CHECK_THROWS_AS(pivoted_psd_cholesky(m), NotPositiveSemidefinite);
}

TEST_CASE("double-double arithmetic against binary128") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const quad a = quad(u(rng)) / 7 + quad(u(rng)) * 1e-20, b = quad(u(rng)) / 3 + quad(1e-3);
    const DDouble x(a), y(b);
    auto close = [](const DDouble& v, const quad& ref) {
      const quad err = abs(quad(v) - ref);
      return err <= quad(1e-30) * (abs(ref) + 1);
    };
    CHECK(close(x + y, a + b));
    CHECK(close(x - y, a - b));
    CHECK(close(x * y, a * b));
    CHECK(close(x / y, a / b));
    CHECK(close(sqrt(abs(x)), sqrt(abs(a))));
    CHECK(((x < y) == (a < b)));
  }
}
