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

#ifndef AQORED_SIGNED_LOG_HPP
#define AQORED_SIGNED_LOG_HPP

#include <span>
#include <vector>

namespace aqored {

/// Real number stored as a sign and a natural-log magnitude.
///
/// sign == 0 is exact zero and logmag is then ignored.
struct SignedLogReal {
  int sign = 0;
  double logmag = 0.0;

  static SignedLogReal from_double(double x);
  static SignedLogReal from_log(double logmag, int sign = 1);
  static SignedLogReal zero() { return {}; }

  double to_double() const;
  bool is_zero() const { return sign == 0; }

  SignedLogReal operator*(const SignedLogReal& o) const;
  SignedLogReal operator/(const SignedLogReal& o) const;
  SignedLogReal operator-() const { return {-sign, logmag}; }
  SignedLogReal sqrt() const;
};

/// Signed sum of log-domain terms.
///
/// Terms are grouped by sign and each group is reduced pairwise relative to
/// the largest magnitude. A result smaller than 1e-13 times the largest term
/// is treated as exact cancellation and returned as zero.
SignedLogReal signed_logsumexp(std::span<const SignedLogReal> terms);

inline SignedLogReal signed_logsumexp(const std::vector<SignedLogReal>& terms) {
  return signed_logsumexp(std::span<const SignedLogReal>(terms));
}

/// ln C(n, k), exact up to rounding of a cumulative log-factorial table.
double log_binomial(long n, long k);

/// ln n!
double log_factorial(long n);

}  // namespace aqored

#endif  // AQORED_SIGNED_LOG_HPP
