// Copyright 2026 The Macrospace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "macrospace/metric_space.hpp"

namespace macrospace {

/// Point permutation: perm[x] is the image of x.
using Permutation = std::vector<PointIndex>;

namespace detail {

class IsometrySearch {
 public:
  IsometrySearch(const FiniteMetricSpace& space, std::size_t& budget)
      : space_(space), budget_(budget), n_(space.size()) {
    signature_.resize(n_);
    for (PointIndex x = 0; x < n_; ++x) {
      auto& sig = signature_[x];
      sig.reserve(n_);
      for (PointIndex y = 0; y < n_; ++y) sig.push_back(space.rank(x, y));
      std::sort(sig.begin(), sig.end());
    }
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), PointIndex{0});
    std::stable_sort(order_.begin(), order_.end(), [&](auto a, auto b) {
      return signature_[a] < signature_[b];
    });
  }

  bool same_signature(PointIndex a, PointIndex b) const {
    return signature_[a] == signature_[b];
  }

  enum class Outcome { found, impossible, exhausted };

  /// Looks for a distance-preserving bijection sending `from` to `to`.
  Outcome find(PointIndex from, PointIndex to, Permutation& result) {
    if (!same_signature(from, to)) return Outcome::impossible;
    sequence_.clear();
    sequence_.push_back(from);
    for (PointIndex p : order_) {
      if (p != from) sequence_.push_back(p);
    }
    image_.assign(n_, n_);
    used_.assign(n_, false);
    image_[from] = to;
    used_[to] = true;
    exhausted_ = false;
    if (extend(1)) {
      result = image_;
      return Outcome::found;
    }
    return exhausted_ ? Outcome::exhausted : Outcome::impossible;
  }

 private:
  bool extend(std::size_t depth) {
    if (depth == n_) return true;
    const PointIndex p = sequence_[depth];
    for (PointIndex q = 0; q < n_; ++q) {
      if (used_[q] || !same_signature(p, q)) continue;
      if (budget_ == 0) {
        exhausted_ = true;
        return false;
      }
      --budget_;
      bool consistent = true;
      for (std::size_t i = 0; i < depth && consistent; ++i) {
        const PointIndex a = sequence_[i];
        consistent = space_.rank(p, a) == space_.rank(q, image_[a]);
      }
      if (!consistent) continue;
      image_[p] = q;
      used_[q] = true;
      if (extend(depth + 1)) return true;
      used_[q] = false;
      image_[p] = n_;
      if (exhausted_) return false;
    }
    return false;
  }

  const FiniteMetricSpace& space_;
  std::size_t& budget_;
  std::size_t n_;
  std::vector<std::vector<FiniteMetricSpace::Rank>> signature_;
  std::vector<PointIndex> order_;
  std::vector<PointIndex> sequence_;
  Permutation image_;
  std::vector<bool> used_;
  bool exhausted_ = false;
};

}  // namespace detail

struct HomogeneityVerdict {
  enum class Kind { homogeneous, witness_pair, budget_exhausted };
  Kind kind = Kind::homogeneous;
  /// For witness_pair: no self-isometry maps first to second.
  std::optional<std::pair<PointIndex, PointIndex>> witness;
  /// Isometries found along the way; their orbit closure is the proof of
  /// homogeneity.
  std::vector<Permutation> generators;
};

/// Decides whether the isometry group acts transitively. Checks the orbit of
/// point 0 under the isometries found so far and only searches for points not
/// yet reached. `budget` bounds the number of candidate assignments tried.
inline HomogeneityVerdict isometric_homogeneity_probe(
    const FiniteMetricSpace& space, std::size_t budget = 1'000'000) {
  HomogeneityVerdict verdict;
  const std::size_t n = space.size();
  detail::IsometrySearch search(space, budget);

  std::vector<bool> reached(n, false);
  reached[0] = true;
  auto close_orbit = [&] {
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& g : verdict.generators) {
        for (PointIndex x = 0; x < n; ++x) {
          if (reached[x] && !reached[g[x]]) {
            reached[g[x]] = true;
            grew = true;
          }
        }
      }
    }
  };

  for (PointIndex y = 1; y < n; ++y) {
    if (reached[y]) continue;
    Permutation iso;
    switch (search.find(0, y, iso)) {
      case detail::IsometrySearch::Outcome::found:
        verdict.generators.push_back(std::move(iso));
        close_orbit();
        break;
      case detail::IsometrySearch::Outcome::impossible:
        verdict.kind = HomogeneityVerdict::Kind::witness_pair;
        verdict.witness = std::make_pair(PointIndex{0}, y);
        return verdict;
      case detail::IsometrySearch::Outcome::exhausted:
        verdict.kind = HomogeneityVerdict::Kind::budget_exhausted;
        return verdict;
    }
  }
  return verdict;
}

/// Whether `perm` is a distance-preserving bijection of the space.
inline bool is_isometry(const FiniteMetricSpace& space, const Permutation& perm) {
  const std::size_t n = space.size();
  if (perm.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (PointIndex x = 0; x < n; ++x) {
    if (perm[x] >= n || hit[perm[x]]) return false;
    hit[perm[x]] = true;
  }
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = 0; y < n; ++y) {
      if (space.rank(x, y) != space.rank(perm[x], perm[y])) return false;
    }
  }
  return true;
}

/// Finds a distance-preserving bijection between two spaces, if one exists
/// within the budget. Used to compare spaces up to relabeling.
inline std::optional<Permutation> find_isometry_between(
    const FiniteMetricSpace& a, const FiniteMetricSpace& b,
    std::size_t budget = 1'000'000) {
  if (a.size() != b.size() || a.distance_values() != b.distance_values()) {
    return std::nullopt;
  }
  const std::size_t n = a.size();
  auto sig = [](const FiniteMetricSpace& s, PointIndex x) {
    std::vector<FiniteMetricSpace::Rank> out;
    for (PointIndex y = 0; y < s.size(); ++y) out.push_back(s.rank(x, y));
    std::sort(out.begin(), out.end());
    return out;
  };
  std::vector<std::vector<FiniteMetricSpace::Rank>> sa(n), sb(n);
  for (PointIndex x = 0; x < n; ++x) {
    sa[x] = sig(a, x);
    sb[x] = sig(b, x);
  }
  Permutation image(n, n);
  std::vector<bool> used(n, false);
  auto extend = [&](auto&& self, PointIndex p) -> bool {
    if (p == n) return true;
    for (PointIndex q = 0; q < n; ++q) {
      if (used[q] || sa[p] != sb[q]) continue;
      if (budget == 0) return false;
      --budget;
      bool ok = true;
      for (PointIndex r = 0; r < p && ok; ++r) {
        ok = a.rank(p, r) == b.rank(q, image[r]);
      }
      if (!ok) continue;
      image[p] = q;
      used[q] = true;
      if (self(self, p + 1)) return true;
      used[q] = false;
    }
    return false;
  };
  if (extend(extend, 0)) return image;
  return std::nullopt;
}

}  // namespace macrospace
