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
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "macrospace/metric_space.hpp"
#include "macrospace/tower.hpp"

namespace macrospace {

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

inline SpacePtr share(FiniteMetricSpace space) {
  return std::make_shared<const FiniteMetricSpace>(std::move(space));
}

inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

/// A relation between the points of two finite spaces. Totality and
/// surjectivity are computed, not assumed.
class MultiMap {
 public:
  using Pair = std::pair<PointIndex, PointIndex>;

  /// Placeholder with no spaces; assign before use.
  MultiMap() = default;

  MultiMap(SpacePtr source, SpacePtr target, std::vector<Pair> pairs)
      : source_(std::move(source)), target_(std::move(target)),
        pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
    for (const auto& [x, y] : pairs_) {
      if (x >= source_->size() || y >= target_->size()) {
        throw input_error("UnknownPoint", "pair refers to a point outside the spaces",
                          {{"source", std::to_string(x)},
                           {"target", std::to_string(y)}});
      }
    }
    images_.resize(source_->size());
    for (const auto& [x, y] : pairs_) images_[x].push_back(y);
  }

  static MultiMap identity(const SpacePtr& space) {
    std::vector<Pair> pairs;
    for (PointIndex x = 0; x < space->size(); ++x) pairs.emplace_back(x, x);
    return MultiMap(space, space, std::move(pairs));
  }

  /// Graph of a function given as image[x].
  static MultiMap graph(SpacePtr source, SpacePtr target,
                        const std::vector<PointIndex>& image) {
    std::vector<Pair> pairs;
    for (PointIndex x = 0; x < image.size(); ++x) pairs.emplace_back(x, image[x]);
    return MultiMap(std::move(source), std::move(target), std::move(pairs));
  }

  const SpacePtr& source() const noexcept { return source_; }
  const SpacePtr& target() const noexcept { return target_; }
  const std::vector<Pair>& pairs() const noexcept { return pairs_; }
  const std::vector<PointIndex>& image(PointIndex x) const { return images_.at(x); }

  PointSet image_of(const PointSet& subset) const {
    PointSet out;
    for (PointIndex x : subset) {
      out.insert(out.end(), images_[x].begin(), images_[x].end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool is_total() const {
    return std::none_of(images_.begin(), images_.end(),
                        [](const auto& img) { return img.empty(); });
  }
  bool is_surjective() const {
    std::vector<bool> hit(target_->size(), false);
    for (const auto& p : pairs_) hit[p.second] = true;
    return std::find(hit.begin(), hit.end(), false) == hit.end();
  }
  bool is_single_valued() const {
    return std::all_of(images_.begin(), images_.end(),
                       [](const auto& img) { return img.size() <= 1; });
  }
  bool is_injective() const {
    std::vector<std::size_t> preimages(target_->size(), 0);
    for (const auto& p : pairs_) {
      if (++preimages[p.second] > 1) return false;
    }
    return true;
  }

  friend bool operator==(const MultiMap& a, const MultiMap& b) {
    return same_space(a.source_, b.source_) && same_space(a.target_, b.target_) &&
           a.pairs_ == b.pairs_;
  }

 private:
  SpacePtr source_;
  SpacePtr target_;
  std::vector<Pair> pairs_;
  std::vector<std::vector<PointIndex>> images_;
};

inline MultiMap invert(const MultiMap& phi) {
  std::vector<MultiMap::Pair> pairs;
  pairs.reserve(phi.pairs().size());
  for (const auto& [x, y] : phi.pairs()) pairs.emplace_back(y, x);
  return MultiMap(phi.target(), phi.source(), std::move(pairs));
}

/// psi o phi, defined when phi's target is psi's source.
inline MultiMap compose(const MultiMap& phi, const MultiMap& psi) {
  if (!same_space(phi.target(), psi.source())) {
    throw input_error("SpaceMismatch",
                      "target of the first map is not the source of the second");
  }
  std::vector<MultiMap::Pair> pairs;
  for (const auto& [x, y] : phi.pairs()) {
    for (PointIndex z : psi.image(y)) pairs.emplace_back(x, z);
  }
  return MultiMap(phi.source(), psi.target(), std::move(pairs));
}

/// omega_Phi(delta) at a list of scales. Exact pointwise; nothing is
/// interpolated between listed scales.
struct OscillationTable {
  struct Entry {
    Distance delta;
    Distance value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> entries;

  friend bool operator==(const OscillationTable&, const OscillationTable&) = default;
};

/// The supremum of diam(Phi(A)) over diam(A) <= delta. Diameter is a max over
/// pairs, so it is enough to take A = {a, b} for every pair with
/// d(a, b) <= delta.
inline OscillationTable oscillation(const MultiMap& phi,
                                    const std::vector<Distance>& scales) {
  if (phi.pairs().empty()) {
    throw input_error("EmptyRelation", "oscillation of an empty relation");
  }
  const auto& src = *phi.source();
  const auto& dst = *phi.target();
  const std::size_t n = src.size();
  using Rank = FiniteMetricSpace::Rank;

  std::vector<Rank> own(n, 0);
  for (PointIndex x = 0; x < n; ++x) {
    const auto& img = phi.image(x);
    for (std::size_t i = 0; i < img.size(); ++i) {
      for (std::size_t j = i + 1; j < img.size(); ++j) {
        own[x] = std::max(own[x], dst.rank(img[i], img[j]));
      }
    }
  }
  // best[r]: largest image diameter among source pairs at distance rank r.
  std::vector<Rank> best(src.distance_values().size(), 0);
  for (PointIndex a = 0; a < n; ++a) {
    best[0] = std::max(best[0], own[a]);
    for (PointIndex b = a + 1; b < n; ++b) {
      Rank value = std::max(own[a], own[b]);
      for (PointIndex u : phi.image(a)) {
        for (PointIndex v : phi.image(b)) value = std::max(value, dst.rank(u, v));
      }
      const Rank r = src.rank(a, b);
      best[r] = std::max(best[r], value);
    }
  }
  for (std::size_t r = 1; r < best.size(); ++r) best[r] = std::max(best[r], best[r - 1]);

  OscillationTable table;
  for (const auto& delta : scales) {
    table.entries.push_back({delta, dst.distance_values()[best[src.rank_at_most(delta)]]});
  }
  return table;
}

/// Predicates of a macro-uniform embedding / equivalence certificate.
struct EquivalenceCheck {
  bool is_total = false;
  bool is_surjective = false;
  OscillationTable forward;
  OscillationTable backward;
  /// Unset when no modulus was supplied.
  std::optional<bool> within_bound;
};

/// `bound`, when given, holds one modulus value per scale; both oscillation
/// tables must stay at or below it.
inline EquivalenceCheck check_equivalence(
    const MultiMap& phi, const std::vector<Distance>& scales,
    const std::optional<std::vector<Distance>>& bound = std::nullopt) {
  EquivalenceCheck check;
  check.is_total = phi.is_total();
  check.is_surjective = phi.is_surjective();
  check.forward = oscillation(phi, scales);
  check.backward = oscillation(invert(phi), scales);
  if (bound) {
    if (bound->size() != scales.size()) {
      throw input_error("BoundMismatch", "one modulus value per scale");
    }
    bool ok = true;
    for (std::size_t i = 0; i < scales.size(); ++i) {
      ok = ok && check.forward.entries[i].value <= (*bound)[i] &&
           check.backward.entries[i].value <= (*bound)[i];
    }
    check.within_bound = ok;
  }
  return check;
}

/// x -> the branch of its components. `tower` must be the canonical tower of
/// `space` at its own level values.
inline MultiMap canonical_map(const SpacePtr& space, const Tower& tower,
                              SpacePtr boundary = nullptr) {
  if (!(canonical_tower(*space, tower.level_values()) == tower)) {
    throw input_error("TowerMismatch", "tower is not the canonical tower of this space");
  }
  if (!boundary) boundary = share(boundary_space(tower));
  auto bottom = epsilon_components(*space, tower.level_value(0));
  return MultiMap::graph(space, std::move(boundary), bottom.block_of);
}

}  // namespace macrospace
