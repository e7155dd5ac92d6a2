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
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "finset/error.hpp"
#include "finset/fset.hpp"
#include "finset/hausdorff.hpp"

namespace finset {

enum class SearchMode { exhaustive, sampled };

inline std::string_view to_string(SearchMode m) {
  return m == SearchMode::exhaustive ? "exhaustive" : "sampled";
}

/// Result of a sup-ratio search for
///   sup Delta(f(A), f(B)) / Delta(A, B)^exponent  over Delta(A, B) > 0.
/// exponent == 1 is a Lipschitz constant, exponent < 1 a Hölder constant.
template <class P>
struct ConstantReport {
  double exponent = 1.0;
  double constant = 0.0;
  std::optional<std::pair<FSet<P>, FSet<P>>> witness;
  std::size_t pairs_examined = 0;
  SearchMode mode = SearchMode::exhaustive;

  bool is_lipschitz() const { return exponent == 1.0; }
  std::string_view kind() const { return is_lipschitz() ? "lipschitz" : "hoelder"; }
};

/// Subsets of a finite universe with at most `max_size` elements: X(n) at
/// desk scale. Supports enumeration, random sampling and local moves.
template <class P>
class SubsetDomain {
 public:
  SubsetDomain(std::vector<P> universe, std::size_t max_size)
      : universe_(std::move(universe)), max_size_(max_size) {
    std::sort(universe_.begin(), universe_.end());
    universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
    if (universe_.empty()) throw Error(ErrorCode::empty_set, "empty universe");
    if (max_size_ == 0) throw Error(ErrorCode::invalid_argument, "max_size must be positive");
  }

  const std::vector<P>& universe() const noexcept { return universe_; }
  std::size_t max_size() const noexcept { return max_size_; }
  std::size_t count() const { return count_subsets(universe_.size(), max_size_); }

  std::vector<FSet<P>> enumerate(std::size_t cap) const {
    return enumerate_subsets(std::span<const P>(universe_), max_size_, cap);
  }

  /// Uniform size in 1..max_size, then a uniform subset of that size.
  template <class Rng>
  FSet<P> sample(Rng& rng) const {
    const std::size_t N = universe_.size();
    const std::size_t k = 1 + static_cast<std::size_t>(rng() % std::min(max_size_, N));
    std::vector<std::size_t> idx;
    while (idx.size() < k) {
      const std::size_t i = static_cast<std::size_t>(rng() % N);
      if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
    }
    return from_indices(idx);
  }

  /// Sets one local move away: drop a point, add a point, or swap a point.
  std::vector<FSet<P>> neighbors(const FSet<P>& A) const {
    std::vector<FSet<P>> out;
    const auto& el = A.elements();
    if (el.size() > 1)
      for (std::size_t i = 0; i < el.size(); ++i) {
        std::vector<P> v = el;
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        out.emplace_back(std::move(v), 0.0);
      }
    for (const P& u : universe_) {
      if (A.contains(u)) continue;
      if (el.size() < max_size_) {
        std::vector<P> v = el;
        v.push_back(u);
        out.emplace_back(std::move(v), 0.0);
      }
      for (std::size_t i = 0; i < el.size(); ++i) {
        std::vector<P> v = el;
        v[i] = u;
        out.emplace_back(std::move(v), 0.0);
      }
    }
    return out;
  }

  /// A random set reached by `moves` random local moves from A.
  template <class Rng>
  FSet<P> perturb(const FSet<P>& A, std::size_t moves, Rng& rng) const {
    FSet<P> cur = A;
    for (std::size_t s = 0; s < moves; ++s) {
      const auto nb = neighbors(cur);
      if (nb.empty()) break;
      cur = nb[static_cast<std::size_t>(rng() % nb.size())];
    }
    return cur;
  }

 private:
  FSet<P> from_indices(const std::vector<std::size_t>& idx) const {
    std::vector<P> v;
    for (std::size_t i : idx) v.push_back(universe_[i]);
    return FSet<P>(std::move(v), 0.0);
  }

  std::vector<P> universe_;
  std::size_t max_size_;
};

struct EstimateOptions {
  double exponent = 1.0;                    // Hölder exponent in (0, 1]
  std::size_t cap = kDefaultEnumerationCap; // exhaustive when the domain has at most this many sets
  std::uint64_t seed = 0;
  std::size_t samples = 20000;              // random pairs in sampled mode
  std::size_t climb_starts = 64;            // best sampled pairs refined by hill-climbing
  std::size_t climb_steps = 200;
};

namespace detail {

// Delta(A, B) if it is below `limit`, otherwise nullopt (early exit).
template <class P, class Metric>
std::optional<double> hausdorff_below(const FSet<P>& A, const FSet<P>& B, const Metric& d,
                                      double limit) {
  double h = 0.0;
  for (const P& a : A) {
    h = std::max(h, point_to_set(a, B, d));
    if (h >= limit) return std::nullopt;
  }
  for (const P& b : B) {
    h = std::max(h, point_to_set(b, A, d));
    if (h >= limit) return std::nullopt;
  }
  return h;
}

inline void require_exponent(double e) {
  if (!(e > 0.0 && e <= 1.0)) throw Error(ErrorCode::invalid_argument, "exponent must lie in (0, 1]");
}

}  // namespace detail

/// Exhaustive sup ratio over all pairs of `sets`. The witness is the first
/// attaining pair in enumeration order (i < j), so results do not depend on
/// anything but the order of `sets` for ties.
template <class P, class Map, class Metric>
ConstantReport<P> estimate_constant_exhaustive(std::span<const FSet<P>> sets, const Map& f,
                                               const Metric& d, double exponent = 1.0) {
  detail::require_exponent(exponent);
  std::vector<FSet<P>> images;
  images.reserve(sets.size());
  for (const auto& A : sets) images.push_back(f(A));

  ConstantReport<P> r;
  r.exponent = exponent;
  r.mode = SearchMode::exhaustive;
  std::optional<std::pair<std::size_t, std::size_t>> best_pair;
  const double inv = 1.0 / exponent;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      ++r.pairs_examined;
      const double num = hausdorff(images[i], images[j], d);
      // Only pairs with Delta(A, B)^exponent < num / best can raise the maximum.
      double limit = std::numeric_limits<double>::infinity();
      if (best_pair) {
        if (num <= 0.0) continue;
        if (r.constant > 0.0) limit = std::pow(num / r.constant, inv);
      }
      const auto den = detail::hausdorff_below(sets[i], sets[j], d, limit);
      if (!den || *den <= 0.0) continue;
      const double ratio = num / std::pow(*den, exponent);
      if (!best_pair || ratio > r.constant) {
        r.constant = ratio;
        best_pair = {i, j};
      }
    }
  if (!best_pair) throw Error(ErrorCode::invalid_argument, "all pairs are at distance zero");
  if (best_pair) r.witness.emplace(sets[best_pair->first], sets[best_pair->second]);
  return r;
}

template <class P, class Map, class Metric>
ConstantReport<P> estimate_constant_exhaustive(const std::vector<FSet<P>>& sets, const Map& f,
                                               const Metric& d, double exponent = 1.0) {
  return estimate_constant_exhaustive(std::span<const FSet<P>>(sets), f, d, exponent);
}

/// Sup-ratio estimate over a SubsetDomain: exhaustive when the domain has at
/// most `opts.cap` sets, otherwise seeded random pairs (half of them local
/// perturbations) followed by hill-climbing from the best pairs. Sampled
/// results are lower bounds of the true constant.
template <class P, class Map, class Metric>
ConstantReport<P> estimate_constant(const SubsetDomain<P>& domain, const Map& f, const Metric& d,
                                    const EstimateOptions& opts = {}) {
  detail::require_exponent(opts.exponent);
  if (domain.count() <= opts.cap)
    return estimate_constant_exhaustive(domain.enumerate(opts.cap), f, d, opts.exponent);

  std::mt19937_64 rng(opts.seed);
  auto ratio_of = [&](const FSet<P>& A, const FSet<P>& B) -> double {
    const double den = hausdorff(A, B, d);
    if (den <= 0.0) return -1.0;
    return hausdorff(f(A), f(B), d) / std::pow(den, opts.exponent);
  };

  ConstantReport<P> r;
  r.exponent = opts.exponent;
  r.mode = SearchMode::sampled;
  struct Scored {
    double ratio;
    FSet<P> a, b;
  };
  std::vector<Scored> pool;
  pool.reserve(opts.samples);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    FSet<P> A = domain.sample(rng);
    FSet<P> B = (rng() & 1u) ? domain.perturb(A, 1 + rng() % 2, rng) : domain.sample(rng);
    ++r.pairs_examined;
    const double q = ratio_of(A, B);
    if (q >= 0.0) pool.push_back({q, std::move(A), std::move(B)});
  }
  if (pool.empty()) throw Error(ErrorCode::invalid_argument, "all sampled pairs are at distance zero");
  const std::size_t starts = std::min(opts.climb_starts, pool.size());
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(starts), pool.end(),
                    [](const Scored& x, const Scored& y) { return x.ratio > y.ratio; });
  pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(starts), pool.end());

  for (auto& start : pool) {
    Scored cur = start;
    for (std::size_t step = 0; step < opts.climb_steps; ++step) {
      std::optional<Scored> best;
      for (const auto& A2 : domain.neighbors(cur.a)) {
        ++r.pairs_examined;
        const double q = ratio_of(A2, cur.b);
        if (q > cur.ratio && (!best || q > best->ratio)) best = Scored{q, A2, cur.b};
      }
      for (const auto& B2 : domain.neighbors(cur.b)) {
        ++r.pairs_examined;
        const double q = ratio_of(cur.a, B2);
        if (q > cur.ratio && (!best || q > best->ratio)) best = Scored{q, cur.a, B2};
      }
      if (!best) break;
      cur = std::move(*best);
    }
    if (!r.witness || cur.ratio > r.constant) {
      r.constant = cur.ratio;
      r.witness.emplace(cur.a, cur.b);
    }
  }
  return r;
}

template <class P>
struct DisplacementReport {
  bool ok = true;
  double worst_excess = -std::numeric_limits<double>::infinity();  // max Delta(f(A),A) - factor*delta_n(A)
  std::optional<FSet<P>> worst;
  std::size_t sets_checked = 0;
};

/// Checks Delta(f(A), A) <= factor * delta_n(A) on every set; reports the set
/// with the largest excess.
template <class P, class Map, class Metric>
DisplacementReport<P> check_displacement_factor(std::span<const FSet<P>> sets, const Map& f,
                                                std::size_t n, double factor, const Metric& d,
                                                double tol = kDefaultTolerance) {
  DisplacementReport<P> r;
  for (const auto& A : sets) {
    ++r.sets_checked;
    const double moved = hausdorff(f(A), A, d);
    const double bound = factor * min_separation(A, n, d);
    const double excess = moved - bound;
    if (excess > r.worst_excess) {
      r.worst_excess = excess;
      r.worst = A;
    }
    if (excess > tol * std::max(1.0, bound)) r.ok = false;
  }
  return r;
}

/// Displacement bound for an L-Lipschitz retraction: Delta(f(A), A) <= (L+1) delta_n(A).
template <class P, class Map, class Metric>
DisplacementReport<P> check_displacement(std::span<const FSet<P>> sets, const Map& f, std::size_t n,
                                         double L, const Metric& d, double tol = kDefaultTolerance) {
  return check_displacement_factor(sets, f, n, L + 1.0, d, tol);
}

template <class P>
struct FactorizationReport {
  ConstantReport<P> direct;    // X(n) -> X(m) in one map
  ConstantReport<P> composed;  // X(n) -> X(n-1) -> ... -> X(m)
};

/// Lipschitz constants of a direct retraction X(n) -> X(m) and of the chain of
/// one-step retractions, on the same sets. `step(A, k)` retracts X(k) -> X(k-1).
template <class P, class Direct, class Step, class Metric>
FactorizationReport<P> compare_factorization(std::span<const FSet<P>> sets, const Direct& direct,
                                             const Step& step, std::size_t n, std::size_t m,
                                             const Metric& d) {
  if (!(n > m && m >= 1)) throw Error(ErrorCode::invalid_argument, "need n > m >= 1");
  auto composed = [&](const FSet<P>& A) {
    FSet<P> cur = A;
    for (std::size_t k = n; k > m; --k) cur = step(cur, k);
    return cur;
  };
  return {estimate_constant_exhaustive(sets, direct, d), estimate_constant_exhaustive(sets, composed, d)};
}

}  // namespace finset
