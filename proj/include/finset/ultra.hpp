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
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "finset/error.hpp"
#include "finset/fset.hpp"
#include "finset/metric_space.hpp"

namespace finset {

struct UltraCheckReport {
  bool is_ultrametric = true;
  double violation = 0.0;  // max of d(x,y) - max(d(x,z), d(y,z))
  std::array<std::size_t, 3> worst_triple{0, 0, 0};
};

/// Exhaustive check of d(x,y) <= max(d(x,z), d(y,z)) over all triples. The
/// tolerance is relative to the diameter.
inline UltraCheckReport validate_ultrametric(const FiniteMetricSpace& space,
                                             double tol = kDefaultTolerance) {
  UltraCheckReport r;
  const std::size_t n = space.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const double v = space(x, y) - std::max(space(x, z), space(y, z));
        if (v > r.violation) {
          r.violation = v;
          r.worst_triple = {x, y, z};
        }
      }
  r.is_ultrametric = r.violation <= tol * std::max(1.0, space.diameter());
  return r;
}

/// One scale of a center family: tau_k maps every point to a center.
struct CenterLevel {
  int k = 0;
  double scale = 1.0;               // b^k
  std::vector<std::size_t> center;  // center[x] = tau_k(x)
};

/// Maps tau_k : X -> X over a finite range of k, with constants L >= 1 and
/// b in (0, 1). Levels are stored in increasing k (decreasing scale).
struct CenterFamily {
  double L = 1.0;
  double b = 0.5;
  std::vector<CenterLevel> levels;

  /// Lipschitz bound 2 L^3 / b + 1 of the induced retraction.
  double retraction_constant() const { return 2.0 * L * L * L / b + 1.0; }

  IndexSet image(std::size_t level, const IndexSet& A) const {
    std::vector<std::size_t> out;
    out.reserve(A.size());
    for (std::size_t a : A) out.push_back(levels[level].center[a]);
    return IndexSet(std::move(out));
  }
};

/// Level range that guarantees a collapsing level (ball radius above the
/// diameter) and an injective level (radius below the least distance).
inline std::pair<int, int> default_levels(const FiniteMetricSpace& space, double b = 0.5) {
  if (space.size() < 2) return {0, 0};
  const double logb = std::log(b);
  const int lo = static_cast<int>(std::floor(std::log(space.diameter()) / logb)) - 1;
  const int hi = static_cast<int>(std::ceil(std::log(space.min_positive_distance()) / logb)) + 1;
  return {lo, hi};
}

/// Greedy centers of disjoint open balls B(p, 2^-k) covering an ultrametric
/// space, scanning points in id order. The family satisfies the displacement
/// and separation conditions with L = 1, b = 1/2, and each tau_k is 1-Lipschitz.
inline CenterFamily build_centers(const FiniteMetricSpace& space,
                                  std::optional<std::pair<int, int>> levels = std::nullopt,
                                  double tol = kDefaultTolerance) {
  const auto check = validate_ultrametric(space, tol);
  if (!check.is_ultrametric)
    throw Error(ErrorCode::not_ultrametric,
                "space violates the ultrametric inequality by " + std::to_string(check.violation));
  const auto [lo, hi] = levels.value_or(default_levels(space));
  if (lo > hi) throw Error(ErrorCode::invalid_argument, "empty level range");
  CenterFamily family;
  const std::size_t n = space.size();
  for (int k = lo; k <= hi; ++k) {
    CenterLevel level;
    level.k = k;
    level.scale = std::ldexp(1.0, -k);
    constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();
    level.center.assign(n, kUnassigned);
    for (std::size_t p = 0; p < n; ++p) {
      if (level.center[p] != kUnassigned) continue;
      for (std::size_t x = 0; x < n; ++x)
        if (level.center[x] == kUnassigned && space(p, x) < level.scale) level.center[x] = p;
    }
    family.levels.push_back(std::move(level));
  }
  return family;
}

struct CenterFamilyCheck {
  bool displacement_ok = true;  // d(tau_k x, x) <= L b^k
  bool separation_ok = true;    // tau_k x == tau_k y or d(tau_k x, tau_k y) >= b^k / L
  bool lipschitz_ok = true;     // d(tau_k x, tau_k y) <= L d(x, y)
  bool ok() const { return displacement_ok && separation_ok && lipschitz_ok; }
};

/// Exhaustive verification of the three center-family conditions.
inline CenterFamilyCheck verify_center_family(const FiniteMetricSpace& space,
                                              const CenterFamily& family,
                                              double tol = kDefaultTolerance) {
  CenterFamilyCheck r;
  const double slack = tol * std::max(1.0, space.diameter());
  for (const auto& level : family.levels) {
    const double scale = std::pow(family.b, level.k);
    for (std::size_t x = 0; x < space.size(); ++x) {
      const std::size_t tx = level.center[x];
      if (space(tx, x) > family.L * scale + slack) r.displacement_ok = false;
      for (std::size_t y = x + 1; y < space.size(); ++y) {
        const std::size_t ty = level.center[y];
        if (tx != ty && space(tx, ty) < scale / family.L - slack) r.separation_ok = false;
        if (space(tx, ty) > family.L * space(x, y) + slack) r.lipschitz_ok = false;
      }
    }
  }
  return r;
}

/// Retraction X(n) -> X(m): identity on X(m), otherwise tau_mu(A) where mu(A)
/// is the largest level at which A has at most m images.
inline IndexSet generic_retract(const CenterFamily& family, const IndexSet& A, std::size_t n,
                                std::size_t m) {
  if (!(n > m && m >= 1)) throw Error(ErrorCode::invalid_argument, "need n > m >= 1");
  if (A.size() > n) throw Error(ErrorCode::capacity_exceeded, "set has more than n elements");
  if (A.size() <= m) return A;
  if (family.levels.empty()) throw Error(ErrorCode::level_range, "center family has no levels");
  std::optional<std::size_t> mu;
  for (std::size_t i = 0; i < family.levels.size(); ++i)
    if (family.image(i, A).size() <= m) mu = i;
  if (!mu) throw Error(ErrorCode::level_range, "no level collapses the set to m points");
  if (*mu + 1 == family.levels.size())
    throw Error(ErrorCode::level_range, "finest level still collapses the set; extend the range");
  return family.image(*mu, A);
}

/// Smallest integer alpha >= 1 with targetL^alpha >= 5.
inline int snowflake_exponent(double targetL) {
  if (!(targetL > 1.0)) throw Error(ErrorCode::invalid_argument, "target constant must exceed 1");
  if (targetL >= 5.0) return 1;
  int alpha = static_cast<int>(std::ceil(std::log(5.0) / std::log(targetL) - 1e-12));
  while (std::pow(targetL, alpha) < 5.0 * (1.0 - 1e-15)) ++alpha;
  return std::max(alpha, 1);
}

/// Generic retraction run in (X, d^alpha); its Lipschitz constant in the
/// original metric is at most 5^(1/alpha) <= targetL.
class SnowflakeRetraction {
 public:
  SnowflakeRetraction(const FiniteMetricSpace& space, double targetL)
      : alpha_(snowflake_exponent(targetL)) {
    auto dist = space.matrix();
    for (auto& row : dist)
      for (auto& v : row) v = std::pow(v, alpha_);
    family_ = build_centers(FiniteMetricSpace(std::move(dist), space.labels()));
  }

  int alpha() const noexcept { return alpha_; }
  const CenterFamily& family() const noexcept { return family_; }
  double constant() const { return std::pow(family_.retraction_constant(), 1.0 / alpha_); }

  IndexSet operator()(const IndexSet& A, std::size_t n, std::size_t m) const {
    return generic_retract(family_, A, n, m);
  }

 private:
  int alpha_;
  CenterFamily family_;
};

inline IndexSet snowflake_retract(const FiniteMetricSpace& space, const IndexSet& A, std::size_t n,
                                  std::size_t m, double targetL) {
  return SnowflakeRetraction(space, targetL)(A, n, m);
}

namespace detail {

// Prim's MST on the complete graph; parent[root] = root.
inline std::vector<std::size_t> minimum_spanning_tree(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  std::vector<std::size_t> parent(n, 0);
  std::vector<double> key(n, std::numeric_limits<double>::infinity());
  std::vector<bool> in_tree(n, false);
  key[0] = 0.0;
  for (std::size_t iter = 0; iter < n; ++iter) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!in_tree[v] && (u == n || key[v] < key[u])) u = v;
    in_tree[u] = true;
    for (std::size_t v = 0; v < n; ++v)
      if (!in_tree[v] && space(u, v) < key[v]) {
        key[v] = space(u, v);
        parent[v] = u;
      }
  }
  return parent;
}

// Tree path from `from` to `to` given the MST adjacency.
inline std::vector<std::size_t> tree_path(const std::vector<std::vector<std::size_t>>& adj,
                                          std::size_t from, std::size_t to) {
  std::vector<std::size_t> prev(adj.size(), adj.size());
  std::vector<std::size_t> stack{from};
  prev[from] = from;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : adj[u])
      if (prev[v] == adj.size()) {
        prev[v] = u;
        stack.push_back(v);
      }
  }
  std::vector<std::size_t> path{to};
  while (path.back() != from) path.push_back(prev[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

inline std::vector<std::vector<std::size_t>> tree_adjacency(const std::vector<std::size_t>& parent) {
  std::vector<std::vector<std::size_t>> adj(parent.size());
  for (std::size_t v = 1; v < parent.size(); ++v) {
    adj[v].push_back(parent[v]);
    adj[parent[v]].push_back(v);
  }
  return adj;
}

}  // namespace detail

/// Subdominant ultrametric: rho(x, y) is the least possible largest step over
/// chains from x to y, read off as the bottleneck edge on a minimum spanning tree.
inline FiniteMetricSpace subdominant_ultrametric(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  const auto adj = detail::tree_adjacency(detail::minimum_spanning_tree(space));
  std::vector<std::vector<double>> rho(n, std::vector<double>(n, 0.0));
  for (std::size_t s = 0; s < n; ++s) {
    // DFS from s carrying the largest edge seen so far.
    std::vector<bool> seen(n, false);
    std::vector<std::pair<std::size_t, double>> stack{{s, 0.0}};
    seen[s] = true;
    while (!stack.empty()) {
      const auto [u, best] = stack.back();
      stack.pop_back();
      rho[s][u] = best;
      for (std::size_t v : adj[u])
        if (!seen[v]) {
          seen[v] = true;
          stack.emplace_back(v, std::max(best, space(u, v)));
        }
    }
  }
  return FiniteMetricSpace(std::move(rho), space.labels());
}

struct DisconnectionReport {
  double constant = 1.0;                 // c = min rho(x,y) / d(x,y)
  std::pair<std::size_t, std::size_t> endpoints{0, 0};
  std::vector<std::size_t> chain;        // minimax chain between the endpoints
  double max_step = 0.0;                 // largest step of the chain (= c * d(endpoints))
};

/// Uniform disconnection constant of a finite space: the least ratio of the
/// minimax chain step to the endpoint distance, with an attaining chain.
inline DisconnectionReport disconnection_constant(const FiniteMetricSpace& space) {
  DisconnectionReport r;
  const std::size_t n = space.size();
  r.chain = {0};
  if (n < 2) return r;
  const auto parent = detail::minimum_spanning_tree(space);
  const auto rho = subdominant_ultrametric(space);
  bool first = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      const double ratio = rho(x, y) / space(x, y);
      if (first || ratio < r.constant) {
        first = false;
        r.constant = ratio;
        r.endpoints = {x, y};
      }
    }
  r.chain = detail::tree_path(detail::tree_adjacency(parent), r.endpoints.first, r.endpoints.second);
  for (std::size_t i = 1; i < r.chain.size(); ++i)
    r.max_step = std::max(r.max_step, space(r.chain[i - 1], r.chain[i]));
  return r;
}

/// Rooted merge tree. Leaves have no children; the distance between two leaves
/// is the merge height of their lowest common ancestor.
struct Dendrogram {
  double merge_height = 0.0;
  std::vector<Dendrogram> children;
  std::string label;

  bool is_leaf() const { return children.empty(); }

  std::size_t leaf_count() const {
    if (is_leaf()) return 1;
    std::size_t c = 0;
    for (const auto& ch : children) c += ch.leaf_count();
    return c;
  }
};

namespace detail {

inline void collect_leaves(const Dendrogram& node, std::vector<std::string>& labels) {
  if (node.is_leaf()) {
    labels.push_back(node.label.empty() ? "p" + std::to_string(labels.size()) : node.label);
    return;
  }
  if (!(node.merge_height > 0.0))
    throw Error(ErrorCode::invalid_argument, "internal dendrogram node needs positive merge_height");
  for (const auto& ch : node.children) {
    if (ch.merge_height > node.merge_height)
      throw Error(ErrorCode::invalid_argument, "child merges above its parent");
    collect_leaves(ch, labels);
  }
}

inline void fill_heights(const Dendrogram& node, std::size_t& next,
                         std::vector<std::vector<double>>& dist, std::vector<std::size_t>& leaves) {
  if (node.is_leaf()) {
    leaves.push_back(next++);
    return;
  }
  std::vector<std::vector<std::size_t>> parts;
  for (const auto& ch : node.children) {
    std::vector<std::size_t> sub;
    fill_heights(ch, next, dist, sub);
    parts.push_back(std::move(sub));
  }
  for (std::size_t a = 0; a < parts.size(); ++a)
    for (std::size_t b = a + 1; b < parts.size(); ++b)
      for (std::size_t x : parts[a])
        for (std::size_t y : parts[b]) dist[x][y] = dist[y][x] = node.merge_height;
  for (auto& p : parts) leaves.insert(leaves.end(), p.begin(), p.end());
}

}  // namespace detail

/// The ultrametric space on the leaves of a dendrogram (leaves in DFS order).
inline FiniteMetricSpace dendrogram_space(const Dendrogram& root) {
  std::vector<std::string> labels;
  detail::collect_leaves(root, labels);
  std::vector<std::vector<double>> dist(labels.size(), std::vector<double>(labels.size(), 0.0));
  std::size_t next = 0;
  std::vector<std::size_t> leaves;
  detail::fill_heights(root, next, dist, leaves);
  return FiniteMetricSpace(std::move(dist), std::move(labels));
}

/// Random binary dendrogram on `leaves` points built by agglomerative merges
/// of uniformly chosen clusters at increasing heights in (0, 1].
inline Dendrogram random_dendrogram(std::size_t leaves, std::uint64_t seed) {
  if (leaves == 0) throw Error(ErrorCode::invalid_argument, "dendrogram needs a leaf");
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Dendrogram> clusters;
  for (std::size_t i = 0; i < leaves; ++i) clusters.push_back(Dendrogram{0.0, {}, "p" + std::to_string(i)});
  std::vector<double> steps(leaves > 1 ? leaves - 1 : 0);
  double total = 0.0;
  for (auto& s : steps) total += (s = 0.2 + unit());
  double height = 0.0;
  for (std::size_t step = 0; step + 1 < leaves; ++step) {
    height += steps[step] / total;
    const std::size_t i = static_cast<std::size_t>(rng() % clusters.size());
    std::size_t j = static_cast<std::size_t>(rng() % (clusters.size() - 1));
    if (j >= i) ++j;
    Dendrogram merged{height, {std::move(clusters[i]), std::move(clusters[j])}, ""};
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(std::min(i, j)));
    clusters.push_back(std::move(merged));
  }
  return std::move(clusters.front());
}

}  // namespace finset
