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
#include <string>
#include <utility>
#include <vector>

#include "macrospace/components.hpp"
#include "macrospace/metric_space.hpp"

namespace macrospace {

using LevelIndex = std::size_t;
using NodeIndex = std::size_t;

/// A graded tower: level 0 is the bottom, the last level holds the single
/// root. `parent(l)[i]` is the index at level l + 1 of node i's parent.
///
/// Order intervals, meets and upper cones are recovered by walking parents.
class Tower {
 public:
  Tower(std::vector<Distance> level_values,
        std::vector<std::vector<std::string>> node_ids,
        std::vector<std::vector<NodeIndex>> parents)
      : level_values_(std::move(level_values)),
        node_ids_(std::move(node_ids)),
        parents_(std::move(parents)) {
    validate();
  }

  std::size_t level_count() const noexcept { return level_values_.size(); }
  LevelIndex top() const noexcept { return level_values_.size() - 1; }
  const std::vector<Distance>& level_values() const noexcept {
    return level_values_;
  }
  const Distance& level_value(LevelIndex l) const { return level_values_.at(l); }

  std::size_t node_count(LevelIndex l) const { return node_ids_.at(l).size(); }
  const std::vector<std::vector<std::string>>& node_ids() const noexcept {
    return node_ids_;
  }
  const std::string& node_id(LevelIndex l, NodeIndex i) const {
    return node_ids_.at(l).at(i);
  }
  const std::vector<std::vector<NodeIndex>>& parents() const noexcept {
    return parents_;
  }
  NodeIndex parent(LevelIndex l, NodeIndex i) const { return parents_.at(l).at(i); }

  /// The ancestor of (from, i) at level `to` (to >= from).
  NodeIndex ancestor(LevelIndex from, NodeIndex i, LevelIndex to) const {
    for (LevelIndex l = from; l < to; ++l) i = parents_[l][i];
    return i;
  }

  /// Children of (l, i) at level l - 1, ascending.
  std::vector<NodeIndex> children(LevelIndex l, NodeIndex i) const {
    std::vector<NodeIndex> out;
    if (l == 0) return out;
    const auto& up = parents_[l - 1];
    for (NodeIndex c = 0; c < up.size(); ++c) {
      if (up[c] == i) out.push_back(c);
    }
    return out;
  }

  /// Descendants of (l, i) at level `below` (below <= l), ascending.
  std::vector<NodeIndex> descendants(LevelIndex l, NodeIndex i,
                                     LevelIndex below) const {
    std::vector<NodeIndex> out;
    for (NodeIndex d = 0; d < node_count(below); ++d) {
      if (ancestor(below, d, l) == i) out.push_back(d);
    }
    return out;
  }

  /// Level of the meet of two bottom-level nodes.
  LevelIndex meet_level(NodeIndex a, NodeIndex b) const {
    LevelIndex l = 0;
    while (a != b) {
      a = parents_[l][a];
      b = parents_[l][b];
      ++l;
    }
    return l;
  }

  friend bool operator==(const Tower&, const Tower&) = default;

 private:
  void validate() const {
    if (level_values_.empty()) {
      throw input_error("EmptyLevelSet", "a tower needs at least one level");
    }
    for (std::size_t l = 1; l < level_values_.size(); ++l) {
      if (!(level_values_[l - 1] < level_values_[l])) {
        throw input_error("InvalidTower", "level values must strictly increase",
                          {{"level", std::to_string(l)}});
      }
    }
    if (node_ids_.size() != level_values_.size() ||
        parents_.size() + 1 != level_values_.size()) {
      throw input_error("InvalidTower", "level, node and parent tables disagree");
    }
    for (std::size_t l = 0; l < node_ids_.size(); ++l) {
      if (node_ids_[l].empty()) {
        throw input_error("InvalidTower", "empty level",
                          {{"level", std::to_string(l)}});
      }
    }
    if (node_ids_.back().size() != 1) {
      throw input_error("NotDirected", "the top level must hold a single root",
                        {{"top_nodes", std::to_string(node_ids_.back().size())}});
    }
    for (std::size_t l = 0; l < parents_.size(); ++l) {
      if (parents_[l].size() != node_ids_[l].size()) {
        throw input_error("InvalidTower", "every node needs exactly one parent",
                          {{"level", std::to_string(l)}});
      }
      for (NodeIndex p : parents_[l]) {
        if (p >= node_ids_[l + 1].size()) {
          throw input_error("InvalidTower", "parent index out of range",
                            {{"level", std::to_string(l)}});
        }
      }
    }
  }

  std::vector<Distance> level_values_;
  std::vector<std::vector<std::string>> node_ids_;
  std::vector<std::vector<NodeIndex>> parents_;
};

/// Level-l nodes are the level_values[l]-components of the space, ordered by
/// smallest member; parents are given by component inclusion.
/// The tower only reflects the space well when component meshes stay bounded
/// at the chosen levels (asymptotic dimension zero at these scales).
inline Tower canonical_tower(const FiniteMetricSpace& space,
                             const std::vector<Distance>& levels) {
  if (levels.empty()) {
    throw input_error("EmptyLevelSet", "canonical tower needs a level set");
  }
  for (std::size_t l = 1; l < levels.size(); ++l) {
    if (!(levels[l - 1] < levels[l])) {
      throw input_error("InvalidTower", "level values must strictly increase",
                        {{"index", std::to_string(l)}});
    }
  }
  std::vector<ScalePartition> partitions;
  partitions.reserve(levels.size());
  for (const auto& lambda : levels) {
    partitions.push_back(epsilon_components(space, lambda));
  }
  if (partitions.back().block_count() != 1) {
    throw input_error("NotDirected",
                      "the largest level does not connect the space",
                      {{"level", levels.back().to_string()},
                       {"components",
                        std::to_string(partitions.back().block_count())}});
  }
  std::vector<std::vector<std::string>> ids(levels.size());
  std::vector<std::vector<NodeIndex>> parents(levels.size() - 1);
  for (std::size_t l = 0; l < levels.size(); ++l) {
    for (const auto& block : partitions[l].blocks) {
      ids[l].push_back(levels[l].to_string() + ":" + space.label(block.front()));
    }
    if (l + 1 < levels.size()) {
      for (const auto& block : partitions[l].blocks) {
        parents[l].push_back(partitions[l + 1].block_of[block.front()]);
      }
    }
  }
  return Tower(levels, std::move(ids), std::move(parents));
}

/// Every node above the bottom level has a child.
inline bool is_pruned(const Tower& tower) {
  for (LevelIndex l = 1; l < tower.level_count(); ++l) {
    std::vector<bool> has_child(tower.node_count(l), false);
    for (NodeIndex p : tower.parents()[l - 1]) has_child[p] = true;
    if (std::find(has_child.begin(), has_child.end(), false) != has_child.end()) {
      return false;
    }
  }
  return true;
}

struct DegreeRange {
  std::size_t min = 0;
  std::size_t max = 0;
  friend bool operator==(const DegreeRange&, const DegreeRange&) = default;
};

/// (deg, Deg): min and max over level-l nodes of their number of level-lambda
/// descendants.
inline DegreeRange degrees(const Tower& tower, LevelIndex lambda, LevelIndex l) {
  if (!(lambda < l) || l >= tower.level_count()) {
    throw input_error("BadLevelPair", "need lambda < l within the tower",
                      {{"lambda", std::to_string(lambda)},
                       {"l", std::to_string(l)}});
  }
  std::vector<std::size_t> count(tower.node_count(l), 0);
  for (NodeIndex d = 0; d < tower.node_count(lambda); ++d) {
    ++count[tower.ancestor(lambda, d, l)];
  }
  auto [lo, hi] = std::minmax_element(count.begin(), count.end());
  return {*lo, *hi};
}

/// deg == Deg between every pair of consecutive levels.
inline bool is_homogeneous(const Tower& tower) {
  for (LevelIndex l = 1; l < tower.level_count(); ++l) {
    auto d = degrees(tower, l - 1, l);
    if (d.min != d.max) return false;
  }
  return true;
}

/// Branches of a pruned tower correspond to bottom-level nodes; the distance
/// of two branches is the level value of their meet.
inline FiniteMetricSpace boundary_space(const Tower& tower) {
  if (!is_pruned(tower)) {
    throw input_error("NotPruned", "boundary needs every branch to reach level 0");
  }
  const std::size_t n = tower.node_count(0);
  std::vector<Distance> values{Distance()};
  // Rank of level l is l + 1, or l when level 0 already sits at 0.
  const bool zero_bottom = tower.level_value(0).is_zero();
  for (LevelIndex l = zero_bottom ? 1 : 0; l < tower.level_count(); ++l) {
    values.push_back(tower.level_value(l));
  }
  const auto offset = zero_bottom ? 0u : 1u;
  std::vector<FiniteMetricSpace::Rank> ranks(n * n, 0);
  for (NodeIndex a = 0; a < n; ++a) {
    for (NodeIndex b = a + 1; b < n; ++b) {
      const auto r = static_cast<FiniteMetricSpace::Rank>(tower.meet_level(a, b) + offset);
      ranks[a * n + b] = r;
      ranks[b * n + a] = r;
    }
  }
  return FiniteMetricSpace::from_ranks(tower.node_ids()[0], std::move(values),
                                       std::move(ranks), true);
}

/// Keeps the listed levels (must include the top) and composes parent maps
/// across the dropped ones.
inline Tower level_subtower(const Tower& tower, std::vector<LevelIndex> kept) {
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.empty() || kept.back() != tower.top()) {
    throw input_error("TopLevelDropped", "a level subtower must keep the top level");
  }
  std::vector<Distance> values;
  std::vector<std::vector<std::string>> ids;
  std::vector<std::vector<NodeIndex>> parents;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const LevelIndex l = kept[i];
    if (l >= tower.level_count()) {
      throw input_error("BadLevelPair", "kept level out of range",
                        {{"level", std::to_string(l)}});
    }
    values.push_back(tower.level_value(l));
    ids.push_back(tower.node_ids()[l]);
    if (i + 1 < kept.size()) {
      std::vector<NodeIndex> up(tower.node_count(l));
      for (NodeIndex x = 0; x < up.size(); ++x) {
        up[x] = tower.ancestor(l, x, kept[i + 1]);
      }
      parents.push_back(std::move(up));
    }
  }
  return Tower(std::move(values), std::move(ids), std::move(parents));
}

/// Equal level values and parent maps, ignoring node ids. Node order is
/// meaningful here: canonical towers order each level by smallest member and
/// level_subtower preserves that order.
inline bool same_shape(const Tower& a, const Tower& b) {
  return a.level_values() == b.level_values() && a.parents() == b.parents();
}

}  // namespace macrospace
