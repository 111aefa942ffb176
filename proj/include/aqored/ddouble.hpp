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


#ifndef AQORED_DDOUBLE_HPP
#define AQORED_DDOUBLE_HPP

#include <cmath>

#include "aqored/quad.hpp"

namespace aqored {

/// Unevaluated sum hi + lo of two doubles with |lo| <= ulp(hi)/2, about 106
/// significant bits. Much cheaper than software binary128 and used for the
/// secular equation near avoided crossings.
struct DDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DDouble() = default;
  constexpr DDouble(double x) : hi(x) {}  // NOLINT: implicit by design
  constexpr DDouble(int x) : hi(x) {}     // NOLINT
  DDouble(double h, double l) : hi(h), lo(l) {}
  explicit DDouble(const quad& x) : hi(static_cast<double>(x)), lo(static_cast<double>(x - quad(hi))) {}

  explicit operator double() const { return hi + lo; }
  explicit operator quad() const { return quad(hi) + quad(lo); }

  static DDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
  }
  static DDouble quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
  }
  static DDouble two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
  }

  friend DDouble operator-(const DDouble& a) { return {-a.hi, -a.lo}; }
  friend DDouble operator+(const DDouble& a, const DDouble& b) {
    DDouble s = two_sum(a.hi, b.hi);
    const DDouble t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
  }
  friend DDouble operator-(const DDouble& a, const DDouble& b) { return a + (-b); }
  friend DDouble operator*(const DDouble& a, const DDouble& b) {
    DDouble p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
  }
  friend DDouble operator/(const DDouble& a, const DDouble& b) {
    const double q1 = a.hi / b.hi;
    DDouble r = a - b * DDouble(q1);
    const double q2 = r.hi / b.hi;
    r = r - b * DDouble(q2);
    const double q3 = r.hi / b.hi;
    return quick_two_sum(q1, q2) + DDouble(q3);
  }
  DDouble& operator+=(const DDouble& b) { return *this = *this + b; }
  DDouble& operator-=(const DDouble& b) { return *this = *this - b; }
  DDouble& operator*=(const DDouble& b) { return *this = *this * b; }
  DDouble& operator/=(const DDouble& b) { return *this = *this / b; }

  friend bool operator==(const DDouble& a, const DDouble& b) { return a.hi == b.hi && a.lo == b.lo; }
  friend bool operator<(const DDouble& a, const DDouble& b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
  friend bool operator>(const DDouble& a, const DDouble& b) { return b < a; }
  friend bool operator<=(const DDouble& a, const DDouble& b) { return !(b < a); }
  friend bool operator>=(const DDouble& a, const DDouble& b) { return !(a < b); }

  friend DDouble abs(const DDouble& a) { return a.hi < 0.0 ? -a : a; }
  friend DDouble sqrt(const DDouble& a) {
    if (a.hi <= 0.0) return DDouble(std::sqrt(a.hi));
    const double x = std::sqrt(a.hi);
    const DDouble r = a - two_prod(x, x);
    return quick_two_sum(x, r.hi / (2.0 * x));
  }
};

}  // namespace aqored

#endif  // AQORED_DDOUBLE_HPP
