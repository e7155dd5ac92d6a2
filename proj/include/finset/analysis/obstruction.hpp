/*
 * Copyright 2026 The finset Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "finset/error.hpp"
#include "finset/metric_space.hpp"

namespace finset {

/// Local quasiconvexity constants for a space with an L-Lipschitz retraction
/// X(4) -> X(3) containing an L-bi-Lipschitz segment: points closer than r are
/// joined by curves of length at most M times their distance.
struct QcBounds {
  double L = 1.0;
  double r = 0.0;  // 1 / (48 (L+1)^5)
  double M = 0.0;  // 4 L^2 (L+1)^2
};

inline QcBounds qc_bounds(double L) {
  if (!(L >= 1.0)) throw Error(ErrorCode::invalid_argument, "qc_bounds needs L >= 1");
  return {L, 1.0 / (48.0 * std::pow(L + 1.0, 5)), 4.0 * L * L * (L + 1.0) * (L + 1.0)};
}

struct QuasiconvexityReport {
  double constant = 1.0;  // max path/distance over connected pairs; +inf when disconnected
  std::pair<std::size_t, std::size_t> witness{0, 0};
  bool connected = true;
  std::size_t components = 1;
  double gap = 0.0;  // least distance between points of different components
  std::pair<std::size_t, std::size_t> gap_witness{0, 0};
};

/// Discrete quasiconvexity probe: in the graph joining points at distance
/// <= eps, the largest ratio of shortest-path length to distance.
inline QuasiconvexityReport quasiconvexity_constant(const FiniteMetricSpace& space, double eps) {
  const std::size_t n = space.size();
  if (n == 0) throw Error(ErrorCode::empty_set, "empty space");
  if (!(eps > 0.0)) throw Error(ErrorCode::invalid_argument, "eps must be positive");
  const double radius = eps * (1.0 + 1e-12);
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (space(i, j) <= radius) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }

  QuasiconvexityReport r;
  std::vector<std::size_t> comp(n, n);
  std::size_t ncomp = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != n) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : adj[u])
        if (comp[v] == n) {
          comp[v] = ncomp;
          stack.push_back(v);
        }
    }
    ++ncomp;
  }
  r.components = ncomp;
  r.connected = ncomp == 1;
  if (!r.connected) {
    r.constant = std::numeric_limits<double>::infinity();
    r.gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (comp[i] != comp[j] && space(i, j) < r.gap) {
          r.gap = space(i, j);
          r.gap_witness = {i, j};
        }
  }

  // Dijkstra from every source; ratios only over pairs in the same component.
  double best = 1.0;
  bool have = false;
  using Item = std::pair<double, std::size_t>;
  std::vector<double> dist(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    dist[s] = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    pq.emplace(0.0, s);
    while (!pq.empty()) {
      const auto [du, u] = pq.top();
      pq.pop();
      if (du > dist[u]) continue;
      for (std::size_t v : adj[u]) {
        const double nd = du + space(u, v);
        if (nd < dist[v]) {
          dist[v] = nd;
          pq.emplace(nd, v);
        }
      }
    }
    for (std::size_t t = s + 1; t < n; ++t) {
      if (comp[t] != comp[s]) continue;
      const double ratio = dist[t] / space(s, t);
      if (!have || ratio > best) {
        best = ratio;
        have = true;
        if (r.connected) r.witness = {s, t};
      }
    }
  }
  if (r.connected) r.constant = best;
  return r;
}

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// A point of the harmonic set {0} ∪ {1/k}: den == 0 encodes 0, otherwise 1/den.
using HarmonicPoint = std::uint64_t;

inline Rational harmonic_value(HarmonicPoint p) {
  return p == 0 ? Rational(0) : Rational(1) / Rational(BigInt(p));
}

/// Certificate that the harmonic set admits no L-Lipschitz retraction
/// X(4) -> X(3): points x = 1/k^3 < y = 1/(k^2+1) < z = 1/k^2 with
/// 0 < 2x < y < z, 2Lx^2 < y^2, 2(L+1)(z-y) < x, and a chain of sets from
/// {0, y, z} to {0, x, y, z} whose Hausdorff steps are all at most x^2.
struct ChainWitness {
  double L = 1.0;
  std::uint64_t k = 0;
  HarmonicPoint x = 0, y = 0, z = 0;
  std::vector<std::vector<HarmonicPoint>> chain;  // each set in ascending value order
  double max_step = 0.0;

  const std::vector<HarmonicPoint>& A() const { return chain.front(); }
  const std::vector<HarmonicPoint>& B() const { return chain.back(); }
};

namespace detail {

inline bool witness_inequalities(const Rational& L, const Rational& x, const Rational& y,
                                 const Rational& z) {
  return 0 < x && 2 * x < y && y < z && 2 * L * x * x < y * y && 2 * (L + 1) * (z - y) < x;
}

inline std::vector<HarmonicPoint> ascending(std::vector<HarmonicPoint> s) {
  // value order: 0 first, then decreasing denominators
  std::sort(s.begin(), s.end(), [](HarmonicPoint a, HarmonicPoint b) {
    if (a == 0 || b == 0) return a == 0 && b != 0;
    return a > b;
  });
  return s;
}

}  // namespace detail

/// Largest supported L; the chain has about k^3 sets with k ~ 2(L+1).
inline constexpr double kMaxWitnessL = 20.0;

/// Builds the witness for the least admissible k, moving the fourth point
/// from 0 up to x through elements of X ∩ [0, x]; each move jumps to the
/// largest element within x^2, so every step is at most x^2.
inline ChainWitness nonlcp_witness(double L) {
  if (!(L >= 1.0) || L > kMaxWitnessL)
    throw Error(ErrorCode::invalid_argument, "witness supports 1 <= L <= " + std::to_string(kMaxWitnessL));
  const Rational Lq(L);
  ChainWitness w;
  w.L = L;
  for (std::uint64_t k = 2;; ++k) {
    const Rational x = harmonic_value(k * k * k), y = harmonic_value(k * k + 1), z = harmonic_value(k * k);
    if (detail::witness_inequalities(Lq, x, y, z)) {
      w.k = k;
      break;
    }
  }
  const std::uint64_t k = w.k;
  w.x = k * k * k;
  w.y = k * k + 1;
  w.z = k * k;

  const BigInt k6 = BigInt(w.x) * BigInt(w.x);  // 1/x^2
  w.chain.push_back(detail::ascending({0, w.y, w.z}));
  // From u = 1/j the next point is 1/j' with j' = ceil(j k^6 / (k^6 + j)),
  // the largest element not exceeding u + x^2; from u = 0 it is 1/k^6.
  BigInt j = k6;
  double previous = 0.0;
  while (true) {
    const BigInt jn = j < BigInt(w.x) ? BigInt(w.x) : j;
    const auto den = static_cast<HarmonicPoint>(jn);
    w.chain.push_back(detail::ascending({0, den, w.y, w.z}));
    const double u = 1.0 / static_cast<double>(den);
    w.max_step = std::max(w.max_step, u - previous);
    previous = u;
    if (den == w.x) break;
    j = (jn * k6 + (k6 + jn) - 1) / (k6 + jn);
  }
  return w;
}

struct WitnessValidation {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Independent exact check of a ChainWitness with rational arithmetic.
inline WitnessValidation validate_chain_witness(const ChainWitness& w) {
  WitnessValidation v;
  auto fail = [&v](std::string msg) {
    v.ok = false;
    v.failures.push_back(std::move(msg));
  };
  const Rational L(w.L);
  const Rational x = harmonic_value(w.x), y = harmonic_value(w.y), z = harmonic_value(w.z);
  if (w.x == 0 || w.y == 0 || w.z == 0) fail("x, y, z must be positive points of X");
  if (!(0 < x && 2 * x < y && y < z)) fail("0 < 2x < y < z fails");
  if (!(2 * L * x * x < y * y)) fail("2Lx^2 < y^2 fails");
  if (!(2 * (L + 1) * (z - y) < x)) fail("2(L+1)(z-y) < x fails");
  if (!((L + 1) * (z - y) < x / 2)) fail("(L+1)(z-y) < x/2 fails");
  if (w.chain.empty()) {
    fail("empty chain");
    return v;
  }

  auto as_values = [](const std::vector<HarmonicPoint>& s) {
    std::vector<Rational> out;
    for (auto p : s) out.push_back(harmonic_value(p));
    std::sort(out.begin(), out.end());
    return out;
  };
  auto same_set = [&](const std::vector<HarmonicPoint>& s, std::vector<Rational> expect) {
    auto got = as_values(s);
    std::sort(expect.begin(), expect.end());
    return got == expect;
  };
  if (!same_set(w.chain.front(), {0, y, z})) fail("chain does not start at {0, y, z}");
  if (!same_set(w.chain.back(), {0, x, y, z})) fail("chain does not end at {0, x, y, z}");

  auto directed = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational worst = 0;
    for (const auto& p : a) {
      Rational best = -1;
      for (const auto& q : b) {
        const Rational dd = p > q ? p - q : q - p;
        if (best < 0 || dd < best) best = dd;
      }
      if (best > worst) worst = best;
    }
    return worst;
  };
  const Rational bound = x * x;
  for (std::size_t i = 0; i < w.chain.size(); ++i) {
    const auto vals = as_values(w.chain[i]);
    if (vals.empty() || vals.size() > 4) fail("set " + std::to_string(i) + " is not in X(4)");
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end())
      fail("set " + std::to_string(i) + " has repeated points");
    if (i == 0) continue;
    const auto prev = as_values(w.chain[i - 1]);
    const Rational h = std::max(directed(prev, vals), directed(vals, prev));
    if (h > bound) {
      fail("step " + std::to_string(i) + " exceeds x^2");
      break;
    }
  }
  return v;
}

}  // namespace finset
