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
#include <string>
#include <utility>
#include <vector>

#include "macrospace/multimap.hpp"
#include "macrospace/tower.hpp"

namespace macrospace {

using TowerPtr = std::shared_ptr<const Tower>;

inline TowerPtr share(Tower tower) {
  return std::make_shared<const Tower>(std::move(tower));
}

/// A level-preserving map between towers. node_map[l][i] is the image, at
/// target level level_map[l], of source node (l, i).
struct TowerMorphism {
  TowerPtr source;
  TowerPtr target;
  std::vector<LevelIndex> level_map;
  std::vector<std::vector<NodeIndex>> node_map;
};

struct MorphismViolation {
  std::string kind;
  LevelIndex level = 0;
  std::size_t index = 0;  // a node, or the second level of a level pair
  std::string detail;
};

struct MorphismCheck {
  std::optional<MorphismViolation> violation;
  bool valid() const noexcept { return !violation.has_value(); }
};

/// Checks that the level map is injective and monotone and that the node map
/// commutes with parent maps, i.e. phi(parent(x)) is the ancestor of phi(x)
/// at the image of the parent level. Together these give x < y => phi(x) <
/// phi(y).
inline MorphismCheck validate_morphism(const TowerMorphism& m) {
  auto fail = [](std::string kind, LevelIndex level, std::size_t index,
                 std::string detail) {
    return MorphismCheck{MorphismViolation{std::move(kind), level, index, std::move(detail)}};
  };
  const Tower& s = *m.source;
  const Tower& t = *m.target;
  if (m.level_map.size() != s.level_count()) {
    return fail("LevelMapSize", 0, 0, "one target level per source level");
  }
  for (LevelIndex l = 0; l < m.level_map.size(); ++l) {
    if (m.level_map[l] >= t.level_count()) {
      return fail("LevelOutOfRange", l, 0, "target level does not exist");
    }
  }
  for (LevelIndex a = 0; a < m.level_map.size(); ++a) {
    for (LevelIndex b = a + 1; b < m.level_map.size(); ++b) {
      if (m.level_map[a] == m.level_map[b]) {
        return fail("NonInjectiveLevelMap", a, b, "two levels share an image");
      }
      if (m.level_map[a] > m.level_map[b]) {
        return fail("NonMonotoneLevelMap", a, b, "level order reversed");
      }
    }
  }
  if (m.node_map.size() != s.level_count()) {
    return fail("NodeMapSize", 0, 0, "one node table per source level");
  }
  for (LevelIndex l = 0; l < s.level_count(); ++l) {
    if (m.node_map[l].size() != s.node_count(l)) {
      return fail("NodeMapSize", l, 0, "one image per source node");
    }
    for (NodeIndex x = 0; x < s.node_count(l); ++x) {
      if (m.node_map[l][x] >= t.node_count(m.level_map[l])) {
        return fail("NodeOutOfRange", l, x, "image node does not exist");
      }
    }
  }
  for (LevelIndex l = 0; l + 1 < s.level_count(); ++l) {
    for (NodeIndex x = 0; x < s.node_count(l); ++x) {
      const NodeIndex up = m.node_map[l + 1][s.parent(l, x)];
      const NodeIndex walked =
          t.ancestor(m.level_map[l], m.node_map[l][x], m.level_map[l + 1]);
      if (up != walked) {
        return fail("ParentIncompatible", l, x,
                    "image of the parent is not an ancestor of the image");
      }
    }
  }
  return {};
}

inline bool is_injective(const TowerMorphism& m) {
  for (const auto& level : m.node_map) {
    std::vector<NodeIndex> sorted = level;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  }
  return true;
}

inline bool is_bijective(const TowerMorphism& m) {
  if (m.source->level_count() != m.target->level_count()) return false;
  for (LevelIndex l = 0; l < m.level_map.size(); ++l) {
    if (m.level_map[l] != l || m.node_map[l].size() != m.target->node_count(l)) {
      return false;
    }
  }
  return is_injective(m);
}

namespace detail {

inline void check_level_map(const Tower& s, const Tower& t,
                            const std::vector<LevelIndex>& f) {
  if (f.size() != s.level_count()) {
    throw input_error("InvalidLevelMap", "one target level per source level");
  }
  for (std::size_t l = 0; l < f.size(); ++l) {
    if (f[l] >= t.level_count() || (l > 0 && !(f[l - 1] < f[l]))) {
      throw input_error("InvalidLevelMap", "level map must be strictly increasing",
                        {{"level", std::to_string(l)}});
    }
  }
}

inline Error degree_violation(LevelIndex lambda, const DegreeRange& source,
                              const DegreeRange& target) {
  return construction_error(
      "DegreeConditionViolated", "degree hypothesis fails at a source level",
      {{"level", std::to_string(lambda)},
       {"source_deg", std::to_string(source.min)},
       {"source_Deg", std::to_string(source.max)},
       {"target_deg", std::to_string(target.min)},
       {"target_Deg", std::to_string(target.max)}});
}

}  // namespace detail

/// Top-down construction of an injective level-preserving map with level map
/// f: the root goes to the first node of level f(top); then the children of
/// each mapped node are sent, in node-id order, to distinct level-f(l - 1)
/// descendants of its image, also taken in node-id order. Requires
/// Deg(S) <= deg(T) at every step so that there are always enough
/// descendants.
inline TowerMorphism build_embedding(const TowerPtr& source, const TowerPtr& target,
                                     const std::vector<LevelIndex>& f) {
  const Tower& s = *source;
  const Tower& t = *target;
  if (!is_pruned(s) || !is_pruned(t)) {
    throw input_error("NotPruned", "embedding needs pruned towers");
  }
  detail::check_level_map(s, t, f);
  for (LevelIndex l = 0; l + 1 < s.level_count(); ++l) {
    const auto ds = degrees(s, l, l + 1);
    const auto dt = degrees(t, f[l], f[l + 1]);
    if (ds.max > dt.min) throw detail::degree_violation(l, ds, dt);
  }

  TowerMorphism m{source, target, f, {}};
  m.node_map.resize(s.level_count());
  for (LevelIndex l = 0; l < s.level_count(); ++l) {
    m.node_map[l].assign(s.node_count(l), 0);
  }
  m.node_map[s.top()][0] = 0;
  for (LevelIndex l = s.top(); l > 0; --l) {
    // Group children by parent once per level.
    std::vector<std::vector<NodeIndex>> kids(s.node_count(l));
    for (NodeIndex c = 0; c < s.node_count(l - 1); ++c) {
      kids[s.parent(l - 1, c)].push_back(c);
    }
    std::vector<std::vector<NodeIndex>> below(t.node_count(f[l]));
    for (NodeIndex d = 0; d < t.node_count(f[l - 1]); ++d) {
      below[t.ancestor(f[l - 1], d, f[l])].push_back(d);
    }
    auto by_id = [](const Tower& tower, LevelIndex level, std::vector<NodeIndex>& nodes) {
      std::stable_sort(nodes.begin(), nodes.end(), [&](NodeIndex a, NodeIndex b) {
        return tower.node_id(level, a) < tower.node_id(level, b);
      });
    };
    for (auto& group : kids) by_id(s, l - 1, group);
    for (auto& group : below) by_id(t, f[l - 1], group);
    for (NodeIndex x = 0; x < s.node_count(l); ++x) {
      const auto& slots = below[m.node_map[l][x]];
      for (std::size_t i = 0; i < kids[x].size(); ++i) {
        m.node_map[l - 1][kids[x][i]] = slots.at(i);
      }
    }
  }
  return m;
}

/// Bijective variant: f must be onto the target levels and the degrees must
/// pin each other in both directions.
inline TowerMorphism build_isomorphism(const TowerPtr& source, const TowerPtr& target,
                                       const std::vector<LevelIndex>& f) {
  const Tower& s = *source;
  const Tower& t = *target;
  detail::check_level_map(s, t, f);
  if (s.level_count() != t.level_count()) {
    throw input_error("LevelMapNotSurjective", "level map misses target levels",
                      {{"source_levels", std::to_string(s.level_count())},
                       {"target_levels", std::to_string(t.level_count())}});
  }
  if (!is_pruned(s) || !is_pruned(t)) {
    throw input_error("NotPruned", "isomorphism needs pruned towers");
  }
  for (LevelIndex l = 0; l + 1 < s.level_count(); ++l) {
    const auto ds = degrees(s, l, l + 1);
    const auto dt = degrees(t, f[l], f[l + 1]);
    if (ds.max > dt.min || ds.min < dt.max) throw detail::degree_violation(l, ds, dt);
  }
  return build_embedding(source, target, f);
}

/// Inverse of a bijective morphism.
inline TowerMorphism invert(const TowerMorphism& m) {
  if (!is_bijective(m)) {
    throw input_error("NotBijective", "only tower isomorphisms can be inverted");
  }
  TowerMorphism inv{m.target, m.source, {}, {}};
  inv.level_map.resize(m.level_map.size());
  for (LevelIndex l = 0; l < m.level_map.size(); ++l) inv.level_map[m.level_map[l]] = l;
  inv.node_map.resize(m.node_map.size());
  for (LevelIndex l = 0; l < m.node_map.size(); ++l) {
    inv.node_map[l].resize(m.node_map[l].size());
    for (NodeIndex x = 0; x < m.node_map[l].size(); ++x) {
      inv.node_map[l][m.node_map[l][x]] = x;
    }
  }
  return inv;
}

/// Sends a branch (a bottom node of the source) to every target branch
/// containing its image chain, i.e. to the bottom descendants of the image
/// of its lowest node.
inline MultiMap boundary_multimap(const TowerMorphism& m, SpacePtr source_boundary = nullptr,
                                  SpacePtr target_boundary = nullptr) {
  if (auto check = validate_morphism(m); !check.valid()) {
    throw input_error("InvalidMorphism", check.violation->detail,
                      {{"violation", check.violation->kind},
                       {"level", std::to_string(check.violation->level)},
                       {"index", std::to_string(check.violation->index)}});
  }
  if (!source_boundary) source_boundary = share(boundary_space(*m.source));
  if (!target_boundary) target_boundary = share(boundary_space(*m.target));
  const Tower& t = *m.target;
  const LevelIndex base = m.level_map[0];
  std::vector<std::vector<NodeIndex>> below(t.node_count(base));
  for (NodeIndex d = 0; d < t.node_count(0); ++d) {
    below[t.ancestor(0, d, base)].push_back(d);
  }
  std::vector<MultiMap::Pair> pairs;
  for (NodeIndex b = 0; b < m.source->node_count(0); ++b) {
    for (NodeIndex d : below[m.node_map[0][b]]) pairs.emplace_back(b, d);
  }
  return MultiMap(std::move(source_boundary), std::move(target_boundary), std::move(pairs));
}

}  // namespace macrospace
