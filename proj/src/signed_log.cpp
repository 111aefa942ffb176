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

#include "aqored/signed_log.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

#include "aqored/errors.hpp"

namespace aqored {

namespace {

constexpr double kCancelThreshold = 1e-13;

// Pairwise sum of exp(logmag - ref) for terms of one sign.
long double pairwise_scaled(std::span<const SignedLogReal> t, double ref) {
  if (t.empty()) return 0.0L;
  if (t.size() <= 8) {
    long double acc = 0.0L;
    for (const auto& x : t) acc += std::exp(static_cast<long double>(x.logmag) - ref);
    return acc;
  }
  const std::size_t half = t.size() / 2;
  return pairwise_scaled(t.subspan(0, half), ref) + pairwise_scaled(t.subspan(half), ref);
}

// Table grows on demand; entries are cumulative sums of log(i) in long double.
class LogFactorialTable {
 public:
  long double get(long n) {
    std::lock_guard<std::mutex> lock(mu_);
    if (static_cast<std::size_t>(n) >= table_.size()) {
      std::size_t i = table_.size();
      table_.resize(static_cast<std::size_t>(n) + 1);
      for (; i < table_.size(); ++i) {
        table_[i] = (i < 2) ? 0.0L : table_[i - 1] + std::log(static_cast<long double>(i));
      }
    }
    return table_[static_cast<std::size_t>(n)];
  }

 private:
  std::mutex mu_;
  std::vector<long double> table_{0.0L, 0.0L};
};

LogFactorialTable& log_factorial_table() {
  static LogFactorialTable t;
  return t;
}

}  // namespace

SignedLogReal SignedLogReal::from_double(double x) {
  if (!std::isfinite(x)) throw InvalidInput("SignedLogReal: non-finite value");
  if (x == 0.0) return {};
  return {x > 0 ? 1 : -1, std::log(std::fabs(x))};
}

SignedLogReal SignedLogReal::from_log(double lm, int sign) {
  if (sign == 0 || lm == -std::numeric_limits<double>::infinity()) return {};
  return {sign > 0 ? 1 : -1, lm};
}

double SignedLogReal::to_double() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(logmag);
}

SignedLogReal SignedLogReal::operator*(const SignedLogReal& o) const {
  if (sign == 0 || o.sign == 0) return {};
  return {sign * o.sign, logmag + o.logmag};
}

SignedLogReal SignedLogReal::operator/(const SignedLogReal& o) const {
  if (o.sign == 0) throw InvalidInput("SignedLogReal: division by zero");
  if (sign == 0) return {};
  return {sign * o.sign, logmag - o.logmag};
}

SignedLogReal SignedLogReal::sqrt() const {
  if (sign < 0) throw InvalidInput("SignedLogReal: sqrt of negative value");
  if (sign == 0) return {};
  return {1, 0.5 * logmag};
}

SignedLogReal signed_logsumexp(std::span<const SignedLogReal> terms) {
  std::vector<SignedLogReal> pos, neg;
  double ref = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    if (t.sign == 0) continue;
    if (std::isnan(t.logmag)) throw InvalidInput("signed_logsumexp: NaN magnitude");
    (t.sign > 0 ? pos : neg).push_back(t);
    ref = std::max(ref, t.logmag);
  }
  if (pos.empty() && neg.empty()) return {};
  if (std::isinf(ref)) {
    // +inf magnitudes: sum is well defined only if they all share one sign.
    bool p = std::any_of(pos.begin(), pos.end(), [](auto& t) { return std::isinf(t.logmag); });
    bool n = std::any_of(neg.begin(), neg.end(), [](auto& t) { return std::isinf(t.logmag); });
    if (p && n) throw InvalidInput("signed_logsumexp: inf - inf");
    return {p ? 1 : -1, ref};
  }
  // Sort so the pairwise reduction order does not depend on input order.
  auto by_mag = [](const SignedLogReal& a, const SignedLogReal& b) { return a.logmag < b.logmag; };
  std::sort(pos.begin(), pos.end(), by_mag);
  std::sort(neg.begin(), neg.end(), by_mag);
  const long double sp = pairwise_scaled(pos, ref);
  const long double sn = pairwise_scaled(neg, ref);
  const long double diff = sp - sn;
  const long double scale = std::max(sp, sn);
  if (std::fabs(diff) <= kCancelThreshold * scale) return {};
  return {diff > 0 ? 1 : -1, ref + static_cast<double>(std::log(std::fabs(diff)))};
}

double log_factorial(long n) {
  if (n < 0) throw InvalidInput("log_factorial: negative argument " + std::to_string(n));
  return static_cast<double>(log_factorial_table().get(n));
}

double log_binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) {
    throw InvalidInput("log_binomial: k=" + std::to_string(k) + " out of range for n=" +
                       std::to_string(n));
  }
  if (k == 0 || k == n) return 0.0;
  auto& t = log_factorial_table();
  return static_cast<double>(t.get(n) - t.get(k) - t.get(n - k));
}

}  // namespace aqored
