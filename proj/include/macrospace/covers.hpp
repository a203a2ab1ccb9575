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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "macrospace/clique_cover.hpp"
#include "macrospace/components.hpp"
#include "macrospace/metric_space.hpp"

namespace macrospace {

inline constexpr std::size_t kDefaultEffortBudget = 200'000;

/// Bracket around cov_delta(A). exact() iff lower == upper.
struct CoverNumber {
  std::size_t lower = 1;
  std::size_t upper = 1;

  bool exact() const noexcept { return lower == upper; }
  friend bool operator==(const CoverNumber&, const CoverNumber&) = default;
};

enum class CoverMethod {
  automatic,         // component count on ultrametric spaces, search otherwise
  component_count,   // only valid on ultrametric spaces
  clique_search,
};

namespace detail {

inline CoverNumber count_components_meeting(const ScalePartition& partition,
                                            const PointSet& subset) {
  std::vector<std::size_t> blocks;
  blocks.reserve(subset.size());
  for (PointIndex x : subset) blocks.push_back(partition.block_of[x]);
  std::sort(blocks.begin(), blocks.end());
  const auto distinct = static_cast<std::size_t>(
      std::unique(blocks.begin(), blocks.end()) - blocks.begin());
  return {distinct, distinct};
}

inline CoverNumber clique_search_cover(const FiniteMetricSpace& space,
                                       const PointSet& subset,
                                       const Distance& delta,
                                       std::size_t budget) {
  const auto limit = space.rank_at_most(delta);
  const std::size_t m = subset.size();
  std::vector<Bitset> adjacency(m, Bitset(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      if (space.rank(subset[a], subset[b]) <= limit) {
        adjacency[a].set(b);
        adjacency[b].set(a);
      }
    }
  }
  auto result = min_clique_cover(adjacency, budget);
  return {result.lower, result.upper};
}

}  // namespace detail

/// cov_delta(subset): the least number of sets of diameter <= delta covering
/// the subset. A set has diameter <= delta iff it is a clique of the
/// threshold graph, so this is a minimum clique cover. On ultrametric spaces
/// the delta-balls partition the space and the answer is the number of
/// delta-components the subset meets.
inline CoverNumber min_cover_number(const FiniteMetricSpace& space,
                                    const PointSet& subset,
                                    const Distance& delta,
                                    std::size_t budget = kDefaultEffortBudget,
                                    CoverMethod method = CoverMethod::automatic) {
  if (subset.empty()) {
    throw input_error("EmptySubset", "cover number of an empty set");
  }
  for (PointIndex x : subset) {
    if (x >= space.size()) {
      throw input_error("UnknownPoint", "subset contains a foreign index",
                        {{"index", std::to_string(x)}});
    }
  }
  if (method == CoverMethod::automatic) {
    method = space.ultrametric() ? CoverMethod::component_count
                                 : CoverMethod::clique_search;
  }
  if (method == CoverMethod::component_count) {
    if (!space.ultrametric()) {
      throw input_error("NotUltrametric",
                        "component counting needs an ultrametric space");
    }
    return detail::count_components_meeting(epsilon_components(space, delta),
                                            subset);
  }
  return detail::clique_search_cover(space, subset, delta, budget);
}

/// cov_delta^eps (min over centers) and Cov_delta^eps (max over centers).
struct CapacityProfile {
  Distance delta;
  Distance epsilon;
  CoverNumber min_over_centers;
  CoverNumber max_over_centers;

  bool exact() const noexcept {
    return min_over_centers.exact() && max_over_centers.exact();
  }
};

inline CapacityProfile cov_profile(const FiniteMetricSpace& space,
                                   const Distance& delta,
                                   const Distance& epsilon,
                                   std::size_t budget = kDefaultEffortBudget,
                                   CoverMethod method = CoverMethod::automatic) {
  if (method == CoverMethod::automatic) {
    method = space.ultrametric() ? CoverMethod::component_count
                                 : CoverMethod::clique_search;
  }
  std::optional<ScalePartition> partition;
  if (method == CoverMethod::component_count) {
    if (!space.ultrametric()) {
      throw input_error("NotUltrametric",
                        "component counting needs an ultrametric space");
    }
    partition = epsilon_components(space, delta);
  }

  CapacityProfile profile{delta, epsilon, {}, {}};
  // Balls repeat across centers (always, on ultrametric spaces).
  std::map<PointSet, CoverNumber> memo;
  bool first = true;
  for (PointIndex x = 0; x < space.size(); ++x) {
    PointSet b = ball(space, x, epsilon);
    auto it = memo.find(b);
    if (it == memo.end()) {
      CoverNumber c = partition
                          ? detail::count_components_meeting(*partition, b)
                          : detail::clique_search_cover(space, b, delta, budget);
      it = memo.emplace(std::move(b), c).first;
    }
    const CoverNumber& c = it->second;
    if (first) {
      profile.min_over_centers = c;
      profile.max_over_centers = c;
      first = false;
    } else {
      auto& lo = profile.min_over_centers;
      auto& hi = profile.max_over_centers;
      lo.lower = std::min(lo.lower, c.lower);
      lo.upper = std::min(lo.upper, c.upper);
      hi.lower = std::max(hi.lower, c.lower);
      hi.upper = std::max(hi.upper, c.upper);
    }
  }
  return profile;
}

/// Finite stand-in for the three coarse geometry classes. `threshold_k`
/// plays the role of the first infinite cardinal.
struct GeometryVerdict {
  enum class Kind {
    bounded_evidence,
    unbounded_evidence,
    isolated_balls_evidence,
    inconclusive
  };
  enum class Label { singleton_type, cantor_type, baire_type, inconclusive };

  Kind kind = Kind::inconclusive;
  Label label = Label::inconclusive;
  std::size_t threshold_k = 2;
  std::vector<CapacityProfile> witness_scales;
  /// Every profile evaluated, in grid order.
  std::vector<CapacityProfile> tested;
  std::vector<Distance> grid;
  std::vector<Distance> diameters;
  bool budget_exhausted = false;
};

inline const char* to_string(GeometryVerdict::Kind kind) {
  switch (kind) {
    case GeometryVerdict::Kind::bounded_evidence: return "bounded_evidence";
    case GeometryVerdict::Kind::unbounded_evidence: return "unbounded_evidence";
    case GeometryVerdict::Kind::isolated_balls_evidence:
      return "isolated_balls_evidence";
    case GeometryVerdict::Kind::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

inline const char* to_string(GeometryVerdict::Label label) {
  switch (label) {
    case GeometryVerdict::Label::singleton_type: return "singleton_type";
    case GeometryVerdict::Label::cantor_type: return "cantor_type";
    case GeometryVerdict::Label::baire_type: return "baire_type";
    case GeometryVerdict::Label::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

/// An indexed family X_first, ..., X_last of growing finite spaces standing in
/// for one infinite space.
struct SpaceFamily {
  std::function<FiniteMetricSpace(std::size_t)> member;
  std::size_t first = 1;
  std::size_t last = 1;
};

inline constexpr const char* kGridPolicy =
    "grid = {0} + realized distances of the last member + their doubles; "
    "delta ranges over grid values below that member's diameter; "
    "epsilon is the next grid value above delta; "
    "family bounded iff diam(last) <= 2 diam(first); "
    "precedence: bounded family, isolated balls, unbounded, bounded";

/// Classifies a family of spaces into one of the three coarse types.
///
/// A family whose diameters stay within twice the first diameter is treated
/// as bounded. Otherwise the last member is probed at consecutive grid scales
/// (delta, next(delta)): per-step capacity is what separates finite from
/// infinite branching, because bounded per-step capacity keeps every
/// cov_delta^eps finite while a single infinite step makes it infinite.
inline GeometryVerdict classify_geometry(const SpaceFamily& family,
                                         std::size_t threshold_k,
                                         std::size_t budget = kDefaultEffortBudget) {
  using Kind = GeometryVerdict::Kind;
  using Label = GeometryVerdict::Label;
  if (threshold_k < 2) {
    throw input_error("InvalidThreshold", "threshold_k must be >= 2");
  }
  if (family.last < family.first) {
    throw input_error("EmptyFamily", "family index range is empty");
  }
  GeometryVerdict verdict;
  verdict.threshold_k = threshold_k;

  std::optional<FiniteMetricSpace> last;
  for (std::size_t i = family.first; i <= family.last; ++i) {
    FiniteMetricSpace x = family.member(i);
    verdict.diameters.push_back(x.diameter());
    if (i == family.last) last.emplace(std::move(x));
  }
  const FiniteMetricSpace& space = *last;
  const Distance& top = space.diameter();

  if (top <= verdict.diameters.front() * Distance(2)) {
    auto profile = cov_profile(space, top, top, budget);
    verdict.tested.push_back(profile);
    verdict.grid = {top};
    if (profile.max_over_centers.upper < threshold_k) {
      verdict.kind = Kind::bounded_evidence;
      verdict.label = Label::singleton_type;
      verdict.witness_scales.push_back(profile);
    }
    return verdict;
  }

  for (const auto& v : space.distance_values()) {
    verdict.grid.push_back(v);
    verdict.grid.push_back(v * Distance(2));
  }
  std::sort(verdict.grid.begin(), verdict.grid.end());
  verdict.grid.erase(std::unique(verdict.grid.begin(), verdict.grid.end()),
                     verdict.grid.end());

  for (std::size_t i = 0; i + 1 < verdict.grid.size(); ++i) {
    if (!(verdict.grid[i] < top)) break;
    auto profile = cov_profile(space, verdict.grid[i], verdict.grid[i + 1], budget);
    verdict.budget_exhausted = verdict.budget_exhausted || !profile.exact();
    verdict.tested.push_back(std::move(profile));
  }

  for (const auto& p : verdict.tested) {
    if (p.min_over_centers.upper == 1) {
      verdict.kind = Kind::isolated_balls_evidence;
      verdict.label = Label::inconclusive;
      verdict.witness_scales.push_back(p);
      return verdict;
    }
  }
  const bool all_wide = std::all_of(
      verdict.tested.begin(), verdict.tested.end(),
      [&](const CapacityProfile& p) { return p.min_over_centers.lower >= threshold_k; });
  if (all_wide && !verdict.tested.empty()) {
    verdict.kind = Kind::unbounded_evidence;
    verdict.label = Label::baire_type;
    verdict.witness_scales = verdict.tested;
    return verdict;
  }
  for (const auto& p : verdict.tested) {
    if (p.max_over_centers.upper < threshold_k) verdict.witness_scales.push_back(p);
  }
  if (!verdict.witness_scales.empty()) {
    verdict.kind = Kind::bounded_evidence;
    verdict.label = Label::cantor_type;
  }
  return verdict;
}

}  // namespace macrospace
