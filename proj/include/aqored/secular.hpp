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

#ifndef AQORED_SECULAR_HPP
#define AQORED_SECULAR_HPP

// Low end of the spectrum of diag(poles) + rho z z^T with rho <= 0.
//
// Each pole may be degenerate; z touches a single direction of each pole's
// eigenspace, so every pole keeps (multiplicity - 1) copies of itself (all of
// them when its weight is zero). Roots are stored as (anchor pole, offset)
// pairs so that gaps between roots hugging the same pole keep full relative
// precision.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "aqored/errors.hpp"

namespace aqored {

template <class Real>
struct RankOneForm {
  std::vector<Real> poles;
  std::vector<Real> weights;         // z_i^2 >= 0
  std::vector<double> multiplicity;  // degeneracy of each pole in the diagonal part
  Real rho = 0;
};

template <class Real>
struct SecularRoot {
  Real anchor = 0;
  Real tau = 0;
  Real value() const { return anchor + tau; }
};

template <class Real>
struct LowestPair {
  Real e0 = 0;
  Real gap = 0;
};

namespace detail {

template <class Real>
struct Merged {
  std::vector<Real> wp;       // weighted poles, ascending
  std::vector<Real> ww;       // their weights
  std::vector<double> wmult;  // their multiplicities
  std::vector<Real> up;       // unweighted poles
  std::vector<double> umult;
};

template <class Real>
Merged<Real> merge_poles(const RankOneForm<Real>& f) {
  const std::size_t m = f.poles.size();
  if (f.weights.size() != m || f.multiplicity.size() != m)
    throw InvalidInput("RankOneForm: poles, weights and multiplicities differ in length");
  if (f.rho > 0) throw InvalidInput("RankOneForm: rho must be non-positive");
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return f.poles[a] < f.poles[b]; });
  Merged<Real> out;
  for (std::size_t t = 0; t < m;) {
    const Real p = f.poles[idx[t]];
    Real w = 0;
    double mult = 0;
    for (; t < m && f.poles[idx[t]] == p; ++t) {
      if (f.weights[idx[t]] < 0) throw InvalidInput("RankOneForm: negative weight");
      if (f.multiplicity[idx[t]] < 1 && f.weights[idx[t]] > 0)
        throw InvalidInput("RankOneForm: weighted pole needs multiplicity >= 1");
      w += f.weights[idx[t]];
      mult += f.multiplicity[idx[t]];
    }
    if (mult <= 0) continue;
    if (w > 0 && f.rho < 0) {
      out.wp.push_back(p);
      out.ww.push_back(w);
      out.wmult.push_back(mult);
    } else {
      out.up.push_back(p);
      out.umult.push_back(mult);
    }
  }
  return out;
}

// Anchored secular function in double precision. With R the non-anchor part
// of the secular sum, 1 + rho R(tau) = c0 + rho tau S(tau) where
// c0 = 1 + rho R(0) carries all the cancellation and is formed in the wide
// type. h(tau) = tau (c0 + rho tau S(tau)) - rho w_a.
struct AnchoredSecular {
  std::vector<double> delta;  // pole offsets from the anchor (anchor entry unused)
  std::vector<double> w;
  std::size_t a = 0;
  double c0 = 1.0;
  double rho = 0.0;

  // Root inside [lo, hi]; one end is 0, where h > 0. Each step replaces the
  // non-anchor sum by a constant plus one term at the nearest other pole,
  // matched in value and slope, and solves the resulting quadratic.
  // Falls back to bisection whenever the model step leaves the bracket.
  double solve(double lo, double hi) const {
    const bool increasing = (hi == 0.0);
    const double eps = std::numeric_limits<double>::epsilon();
    // Nearest other pole on the bracket's side of the anchor, else the nearest one.
    const double side = increasing ? -1.0 : 1.0;
    std::size_t b = delta.size();
    for (int pass = 0; pass < 2 && b == delta.size(); ++pass)
      for (std::size_t i = 0; i < delta.size(); ++i) {
        if (i == a || (pass == 0 && delta[i] * side <= 0.0)) continue;
        if (b == delta.size() || std::fabs(delta[i]) < std::fabs(delta[b])) b = i;
      }
    double h, dh;
    double x = 0.0;
    for (int it = 0; it < 200; ++it) {
      double sum = 0.0, dsum = 0.0;
      for (std::size_t i = 0; i < delta.size(); ++i) {
        if (i == a) continue;
        const double inv = 1.0 / (delta[i] - x);
        const double t = w[i] * inv / delta[i];
        sum += t;
        dsum += t * inv;
      }
      h = x * (c0 + rho * x * sum) - rho * w[a];
      dh = c0 + 2.0 * rho * x * sum + rho * x * x * dsum;
      if (it > 0) {
        // h is at rounding level: x is as good as double gets.
        const double scale = std::fabs(x * c0) + std::fabs(rho * x * x * sum) + std::fabs(rho * w[a]);
        if (std::fabs(h) <= 4.0 * eps * scale) return x;
        const bool below = increasing ? (h < 0.0) : (h > 0.0);
        if (below) lo = x; else hi = x;
      }
      double next = std::numeric_limits<double>::quiet_NaN();
      if (b < delta.size()) {
        // 1 + rho R(x) and R'(x), with R the non-anchor sum.
        const double one_r = c0 + rho * x * sum;
        double rp = 0.0;
        for (std::size_t i = 0; i < delta.size(); ++i) {
          if (i == a) continue;
          const double inv = 1.0 / (delta[i] - x);
          rp += w[i] * inv * inv;
        }
        // Model h(x + u) = (x + u)(K + rho F / (D - u)) - rho w_a, cleared of
        // its pole: -K u^2 + b1 u + D h(x) = 0, where K D + rho F = D (1 + rho R(x)).
        const double D = delta[b] - x;
        const double F = rp * D * D;
        const double K = one_r - rho * F / D;
        const double b1 = D * one_r - K * x + rho * w[a];
        const double c = D * h;
        const double disc = b1 * b1 + 4.0 * K * c;
        double u = std::numeric_limits<double>::quiet_NaN();
        if (disc >= 0.0) {
          const double den = b1 + std::copysign(std::sqrt(disc), b1);
          const double u1 = den != 0.0 ? -2.0 * c / den : std::numeric_limits<double>::quiet_NaN();
          const double u2 = (den != 0.0 && K != 0.0) ? den / (2.0 * K) : std::numeric_limits<double>::quiet_NaN();
          const bool in1 = x + u1 > lo && x + u1 < hi, in2 = x + u2 > lo && x + u2 < hi;
          if (in1 && (!in2 || std::fabs(u1) <= std::fabs(u2))) u = u1;
          else if (in2) u = u2;
        }
        if (!std::isfinite(u) && dh != 0.0) u = -h / dh;
        if (std::fabs(u) <= 4.0 * eps * std::fabs(x)) return x;
        next = x + u;
      } else if (dh != 0.0) {
        next = x - h / dh;
      }
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const double step = std::fabs(next - x);
      x = next;
      if (it > 0 && (step <= 2.0 * eps * std::fabs(x) ||
                     hi - lo <= 2.0 * eps * std::max(std::fabs(lo), std::fabs(hi))))
        break;
    }
    return x;
  }
};

// Root anchored at weighted pole a inside the bracket [lo, hi] (one end is 0).
template <class Real>
Real solve_anchored(const Merged<Real>& m, std::size_t a, Real rho, Real lo, Real hi) {
  AnchoredSecular f;
  f.a = a;
  f.rho = static_cast<double>(rho);
  f.delta.resize(m.wp.size());
  f.w.resize(m.wp.size());
  Real c0 = 1;
  for (std::size_t i = 0; i < m.wp.size(); ++i) {
    const Real d = m.wp[i] - m.wp[a];
    f.delta[i] = static_cast<double>(d);
    f.w[i] = static_cast<double>(m.ww[i]);
    if (i != a) c0 += rho * m.ww[i] / d;
  }
  f.c0 = static_cast<double>(c0);
  return Real(f.solve(static_cast<double>(lo), static_cast<double>(hi)));
}

template <class Real>
SecularRoot<Real> secular_root(const Merged<Real>& m, Real rho, std::size_t j) {
  using std::abs;
  if (j == 0) {
    Real total = 0;
    for (const Real& w : m.ww) total += w;
    const Real lo = rho * total * Real(1.0000001);
    return {m.wp[0], solve_anchored(m, 0, rho, lo, Real(0))};
  }
  const Real p = m.wp[j - 1], q = m.wp[j];
  const Real half = (q - p) / 2;
  // f at the midpoint, evaluated relative to p.
  Real fmid = 1;
  for (std::size_t i = 0; i < m.wp.size(); ++i) fmid += rho * m.ww[i] / ((m.wp[i] - p) - half);
  if (fmid >= 0) return {q, solve_anchored(m, j, rho, Real(-half), Real(0))};
  return {p, solve_anchored(m, j - 1, rho, Real(0), half)};
}

}  // namespace detail

/// All secular roots (one per distinct weighted pole), ascending.
template <class Real>
std::vector<SecularRoot<Real>> secular_roots(const RankOneForm<Real>& f) {
  const auto m = detail::merge_poles(f);
  std::vector<SecularRoot<Real>> out;
  for (std::size_t j = 0; j < m.wp.size(); ++j) out.push_back(detail::secular_root(m, f.rho, j));
  return out;
}

/// Ground energy and first gap of the full operator, copies of poles included.
template <class Real>
LowestPair<Real> lowest_pair(const RankOneForm<Real>& f) {
  const auto m = detail::merge_poles(f);
  struct Cand {
    Real anchor, tau;
    double count;
  };
  std::vector<Cand> c;
  for (std::size_t j = 0; j < std::min<std::size_t>(2, m.wp.size()); ++j) {
    auto r = detail::secular_root(m, f.rho, j);
    c.push_back({r.anchor, r.tau, 1.0});
  }
  for (std::size_t i = 0; i < m.wp.size(); ++i)
    if (m.wmult[i] > 1) c.push_back({m.wp[i], Real(0), m.wmult[i] - 1});
  for (std::size_t i = 0; i < m.up.size(); ++i) c.push_back({m.up[i], Real(0), m.umult[i]});
  if (c.empty()) throw InvalidInput("lowest_pair: empty operator");
  const Real ref = c.front().anchor;
  auto key = [&](const Cand& x) { return (x.anchor - ref) + x.tau; };
  std::sort(c.begin(), c.end(), [&](const Cand& x, const Cand& y) { return key(x) < key(y); });
  LowestPair<Real> out;
  out.e0 = c[0].anchor + c[0].tau;
  if (c[0].count >= 2) {
    out.gap = 0;
  } else {
    if (c.size() < 2) throw InvalidInput("lowest_pair: fewer than two eigenvalues");
    out.gap = (c[1].anchor - c[0].anchor) + (c[1].tau - c[0].tau);
  }
  return out;
}

}  // namespace aqored

#endif  // AQORED_SECULAR_HPP
