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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "macrospace/components.hpp"
#include "macrospace/covers.hpp"
#include "macrospace/metric_space.hpp"
#include "macrospace/multimap.hpp"
#include "macrospace/tower.hpp"
#include "macrospace/tower_morphism.hpp"

namespace macrospace {

struct ScaleSchedule {
  enum class Kind { level_schedule, separation_schedule };
  Kind kind = Kind::level_schedule;
  std::vector<Distance> values;
  /// gap_ok[i]: 6 * values[i] < values[i + 1].
  std::vector<bool> gap_ok;
};

inline const char* to_string(ScaleSchedule::Kind kind) {
  return kind == ScaleSchedule::Kind::level_schedule ? "level_schedule"
                                                     : "separation_schedule";
}

inline std::vector<bool> six_fold_gaps(const std::vector<Distance>& values) {
  std::vector<bool> out;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    out.push_back(values[i] * Distance(6) < values[i + 1]);
  }
  return out;
}

namespace detail {

inline Error insufficient_capacity(std::size_t step, std::size_t width) {
  return construction_error(
      "InsufficientCapacity", "no scale attains the requested capacity",
      {{"step", std::to_string(step)}, {"achieved_depth", std::to_string(step)},
       {"width", std::to_string(width)}});
}

// s_1 = smallest positive distance; each next value is the smallest realized
// distance c > s_prev with cov_{factor * s_prev}^{c} >= width. The capacity is
// monotone in c, so candidates are probed by doubling the stride and then
// bisecting.
inline std::vector<Distance> grow_schedule(const FiniteMetricSpace& space,
                                           std::size_t width, std::size_t count,
                                           const Distance& factor,
                                           std::size_t budget) {
  const auto positive = space.positive_distances();
  std::vector<Distance> values;
  if (count == 0) return values;
  if (positive.empty()) throw insufficient_capacity(0, width);
  values.push_back(positive.front());
  while (values.size() < count) {
    const Distance delta = values.back() * factor;
    auto first = std::upper_bound(positive.begin(), positive.end(), values.back());
    const std::vector<Distance> candidates(first, positive.end());
    auto wide = [&](std::size_t i) {
      return cov_profile(space, delta, candidates[i], budget).min_over_centers.lower >=
             width;
    };
    std::optional<std::size_t> hit;
    std::size_t miss_below = 0;  // all indices < miss_below are known misses
    for (std::size_t stride = 1, i = 0; i < candidates.size(); stride *= 2) {
      if (wide(i)) {
        hit = i;
        break;
      }
      miss_below = i + 1;
      i += stride;
      if (i >= candidates.size() && miss_below < candidates.size()) {
        i = candidates.size() - 1;
        if (wide(i)) hit = i;
        break;
      }
    }
    if (!hit) throw insufficient_capacity(values.size(), width);
    std::size_t lo = miss_below, hi = *hit;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (wide(mid)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    values.push_back(candidates[hi]);
  }
  return values;
}

}  // namespace detail

/// delta_1 < ... < delta_depth with cov_{delta_{i-1}}^{delta_i} >= width_k.
inline ScaleSchedule find_level_schedule(const FiniteMetricSpace& space,
                                         std::size_t width_k, std::size_t depth,
                                         std::size_t budget = kDefaultEffortBudget) {
  if (width_k == 0 || depth == 0) {
    throw input_error("InvalidArgument", "width and depth must be positive");
  }
  ScaleSchedule schedule;
  schedule.kind = ScaleSchedule::Kind::level_schedule;
  schedule.values = detail::grow_schedule(space, width_k, depth, Distance(1), budget);
  schedule.gap_ok = six_fold_gaps(schedule.values);
  return schedule;
}

/// Tower levels for an equivalence: {0} followed by the schedule, so that
/// branches are single points. Width 1 targets a single point, so there the
/// bottom level is the first scheduled value and components collapse.
inline std::vector<Distance> equivalence_levels(std::size_t width_k,
                                                const std::vector<Distance>& schedule) {
  std::vector<Distance> levels;
  if (width_k != 1) levels.emplace_back();
  levels.insert(levels.end(), schedule.begin(), schedule.end());
  return levels;
}

struct EquivalenceCertificate {
  std::size_t width = 0;
  std::size_t depth = 0;
  ScaleSchedule schedule;
  /// Level set of both towers; see equivalence_levels.
  std::vector<Distance> levels;
  MultiMap multimap;
  TowerMorphism tower_iso;
  OscillationTable oscillation_fwd;
  OscillationTable oscillation_bwd;
};

/// X => width^{<=depth}: canonical map to the boundary of the canonical
/// tower, the boundary map of a tower isomorphism, then back down the
/// canonical map of the truncated Baire space, built on the same levels.
inline EquivalenceCertificate baire_equivalence(const SpacePtr& space,
                                                std::size_t width_k, std::size_t depth,
                                                std::size_t budget = kDefaultEffortBudget) {
  ScaleSchedule schedule = find_level_schedule(*space, width_k, depth, budget);
  const std::vector<Distance> levels = equivalence_levels(width_k, schedule.values);
  if (!is_macro_connected_at(*space, levels.back())) {
    throw construction_error("ScheduleNotSpanning",
                             "the top scheduled level does not connect the space",
                             {{"level", levels.back().to_string()}});
  }
  auto source_tower = share(canonical_tower(*space, levels));
  for (LevelIndex l = 0; l + 1 < levels.size(); ++l) {
    const auto d = degrees(*source_tower, l, l + 1);
    if (d.min != width_k || d.max != width_k) {
      throw construction_error("NotHomogeneousAtSchedule",
                               "canonical tower degrees differ from the width",
                               {{"level", std::to_string(l)},
                                {"deg", std::to_string(d.min)},
                                {"Deg", std::to_string(d.max)},
                                {"width", std::to_string(width_k)}});
    }
  }
  auto target = share(gen_kappa_space({width_k, depth, schedule.values}));
  auto target_tower = share(canonical_tower(*target, levels));

  std::vector<LevelIndex> identity(levels.size());
  for (LevelIndex l = 0; l < identity.size(); ++l) identity[l] = l;
  TowerMorphism iso = build_isomorphism(source_tower, target_tower, identity);

  auto source_boundary = share(boundary_space(*source_tower));
  auto target_boundary = share(boundary_space(*target_tower));
  MultiMap down = canonical_map(space, *source_tower, source_boundary);
  MultiMap across = boundary_multimap(iso, source_boundary, target_boundary);
  MultiMap up = invert(canonical_map(target, *target_tower, target_boundary));
  MultiMap phi = compose(compose(down, across), up);

  auto fwd = oscillation(phi, levels);
  auto bwd = oscillation(invert(phi), levels);
  return {width_k, depth, std::move(schedule), levels, std::move(phi),
          std::move(iso), std::move(fwd), std::move(bwd)};
}

struct SeparationRow {
  std::size_t index = 0;        // max differing coordinate j (1-based)
  Distance required;            // 3 eps_j
  Distance floor;               // max(0, 3 eps_j - 2 sum_{i<j} eps_{i+1})
  Distance min_observed;
  friend bool operator==(const SeparationRow&, const SeparationRow&) = default;
};

struct EmbeddingCertificate {
  std::size_t width = 0;
  std::size_t depth = 0;
  PointIndex base_point = 0;
  ScaleSchedule schedule;  // eps_1 .. eps_{depth+1}
  MultiMap multimap;       // width^{<=depth} -> X
  bool injective = false;
  std::vector<SeparationRow> separation;
  Distance containment_radius;
  Distance containment_observed;
  OscillationTable oscillation_fwd;
  OscillationTable oscillation_bwd;
};

/// Space of words over {0..width-1} of length depth with the schedule's
/// first `depth` values as level distances (a single point when depth = 0).
inline FiniteMetricSpace embedding_domain(std::size_t width, std::size_t depth,
                                          const std::vector<Distance>& eps) {
  if (depth == 0) {
    return FiniteMetricSpace::from_ranks({"()"}, {Distance()}, {0}, true);
  }
  return gen_kappa_space({width, depth, {eps.begin(), eps.begin() + depth}});
}

/// Recomputes separation rows, containment and injectivity for a map g from
/// the embedding domain into `space`.
inline void measure_embedding(const FiniteMetricSpace& space,
                              const std::vector<PointIndex>& g, std::size_t width,
                              std::size_t depth, const std::vector<Distance>& eps,
                              PointIndex base, EmbeddingCertificate& cert) {
  cert.separation.clear();
  Distance prefix;  // sum_{i<j} eps_{i+1}
  for (std::size_t j = 1; j <= depth; ++j) {
    const Distance required = Distance(3) * eps[j - 1];
    cert.separation.push_back(
        {j, required, Distance::saturating_sub(required, Distance(2) * prefix), Distance()});
    prefix += eps[j];
  }
  cert.containment_radius = prefix;

  std::vector<std::optional<Distance>> observed(depth + 1);
  FiniteMetricSpace::Rank far = 0;
  cert.injective = true;
  for (std::size_t a = 0; a < g.size(); ++a) {
    far = std::max(far, space.rank(g[a], base));
    for (std::size_t b = a + 1; b < g.size(); ++b) {
      if (g[a] == g[b]) cert.injective = false;
      std::size_t j = 0, x = a, y = b;
      for (std::size_t pos = 1; x != y; ++pos) {
        if (x % width != y % width) j = pos;
        x /= width;
        y /= width;
      }
      const Distance& d = space.distance(g[a], g[b]);
      if (!observed[j] || d < *observed[j]) observed[j] = d;
    }
  }
  for (auto& row : cert.separation) {
    if (observed[row.index]) row.min_observed = *observed[row.index];
  }
  cert.containment_observed = space.distance_values()[far];
}

/// Embeds width^{<=depth} into `space` around `base_point`. At scale i every
/// needed center x gets a 3 eps_i-separated set S inside its eps_{i+1}-ball,
/// grown greedily from x in index order; a maximal such set covers the ball
/// by 6 eps_i-diameter sets, so it reaches `width` points whenever
/// cov_{6 eps_i}^{eps_{i+1}} >= width. A word sigma is then evaluated from
/// its coarsest coordinate down: y <- S_{n}(y)[sigma_n].
inline EmbeddingCertificate embed_baire(const SpacePtr& space, std::size_t width_k,
                                        std::size_t depth, PointIndex base_point,
                                        std::size_t budget = kDefaultEffortBudget) {
  if (width_k < 2) throw input_error("InvalidArgument", "width must be >= 2");
  if (base_point >= space->size()) {
    throw input_error("UnknownPoint", "base point is not a point of the space");
  }
  EmbeddingCertificate cert;
  cert.width = width_k;
  cert.depth = depth;
  cert.base_point = base_point;
  cert.schedule.kind = ScaleSchedule::Kind::separation_schedule;
  if (depth > 0) {
    cert.schedule.values =
        detail::grow_schedule(*space, width_k, depth + 1, Distance(6), budget);
  }
  cert.schedule.gap_ok = six_fold_gaps(cert.schedule.values);
  const auto& eps = cert.schedule.values;

  std::map<std::pair<std::size_t, PointIndex>, std::vector<PointIndex>> chosen;
  auto separated = [&](std::size_t i, PointIndex x) -> const std::vector<PointIndex>& {
    auto key = std::make_pair(i, x);
    if (auto it = chosen.find(key); it != chosen.end()) return it->second;
    const auto radius = space->rank_at_most(eps[i]);             // eps_{i+1}
    const Distance gap = Distance(3) * eps[i - 1];               // 3 eps_i
    std::vector<PointIndex> s{x};
    for (PointIndex p = 0; p < space->size() && s.size() < width_k; ++p) {
      if (p == x || space->rank(x, p) > radius) continue;
      bool apart = std::all_of(s.begin(), s.end(), [&](PointIndex q) {
        return !(space->distance(p, q) < gap);
      });
      if (apart) s.push_back(p);
    }
    if (s.size() < width_k) {
      throw construction_error("SeparationShortfall",
                               "greedy separated set is smaller than the width",
                               {{"center", space->label(x)},
                                {"index", std::to_string(i)},
                                {"found", std::to_string(s.size())}});
    }
    return chosen.emplace(key, std::move(s)).first->second;
  };

  auto domain = share(embedding_domain(width_k, depth, eps));
  std::vector<PointIndex> g(domain->size());
  for (std::size_t sigma = 0; sigma < g.size(); ++sigma) {
    const auto coords = kappa_coordinates(sigma, width_k, depth);
    PointIndex y = base_point;
    for (std::size_t n = depth; n >= 1; --n) y = separated(n, y)[coords[n - 1]];
    g[sigma] = y;
  }

  measure_embedding(*space, g, width_k, depth, eps, base_point, cert);
  if (!cert.injective) {
    throw construction_error("NotInjective",
                             "the recursive map collided; the schedule gaps are too small");
  }
  cert.multimap = MultiMap::graph(domain, space, g);
  cert.oscillation_fwd = oscillation(cert.multimap, domain->distance_values());
  cert.oscillation_bwd = oscillation(invert(cert.multimap), domain->distance_values());
  return cert;
}

struct SurjectionCertificate {
  PointIndex base_point = 0;
  /// Escape chain x_1, x_2, ... and its radii eps_1 < eps_2 < ...
  std::vector<PointIndex> chain;
  std::vector<Distance> radii;
  /// Z = {1, 4, 9, ...} with the line metric, psi : X -> Z, Phi : Z => Y.
  SpacePtr squares;
  MultiMap psi;
  MultiMap phi;
  MultiMap multimap;  // phi o psi
  Distance target_radius;
  OscillationTable oscillation;      // of multimap, at realized source scales
  OscillationTable oscillation_psi;
};

/// The line {1, 4, ..., count^2}.
inline FiniteMetricSpace square_numbers(std::size_t count) {
  std::vector<std::string> labels;
  std::vector<std::vector<Distance>> matrix(count, std::vector<Distance>(count));
  for (std::size_t a = 1; a <= count; ++a) {
    labels.push_back(std::to_string(a * a));
    for (std::size_t b = 1; b <= count; ++b) {
      const auto hi = std::max(a * a, b * b), lo = std::min(a * a, b * b);
      matrix[a - 1][b - 1] = Distance(static_cast<std::int64_t>(hi - lo));
    }
  }
  return FiniteMetricSpace::from_matrix_unchecked(std::move(labels), matrix,
                                                  count <= 2);
}

/// psi(x): the smallest n with x in C_{radii[n-1]}(base); points outside every
/// listed component go to the last index.
inline std::vector<PointIndex> escape_index(const FiniteMetricSpace& source,
                                            PointIndex base,
                                            const std::vector<Distance>& radii,
                                            std::size_t last) {
  std::vector<PointIndex> out(source.size(), last - 1);
  std::vector<bool> done(source.size(), false);
  for (std::size_t n = 0; n < radii.size(); ++n) {
    const auto part = epsilon_components(source, radii[n]);
    for (PointIndex x : part.blocks[part.block_of[base]]) {
      if (!done[x]) {
        done[x] = true;
        out[x] = n;
      }
    }
  }
  return out;
}

/// A surjective macro-uniform multi-map from a source that is not
/// macro-connected onto any finite target.
inline SurjectionCertificate surjection_onto(const SpacePtr& source, const SpacePtr& target,
                                             PointIndex base_point) {
  const std::size_t m = target->size();
  if (m == 0) throw input_error("EmptyTarget", "target has no points");
  if (base_point >= source->size()) {
    throw input_error("UnknownPoint", "base point is not a point of the source");
  }
  SurjectionCertificate cert;
  cert.base_point = base_point;
  const auto scales = source->positive_distances();

  if (m > 1) {
    auto nearest_outside = [&](const PointSet& inside) -> std::optional<PointIndex> {
      std::vector<bool> in(source->size(), false);
      for (PointIndex x : inside) in[x] = true;
      std::optional<PointIndex> best;
      for (PointIndex x = 0; x < source->size(); ++x) {
        if (in[x]) continue;
        if (!best || source->rank(x, base_point) < source->rank(*best, base_point)) best = x;
      }
      return best;
    };
    auto next = nearest_outside({base_point});
    while (next && cert.chain.size() < m) {
      cert.chain.push_back(*next);
      const std::size_t i = cert.chain.size();  // 1-based
      const Distance& scheduled = scales[std::min(i, scales.size()) - 1];
      cert.radii.push_back(std::max(scheduled, source->distance(*next, base_point)));
      if (cert.chain.size() == m) break;
      const auto part = epsilon_components(*source, cert.radii.back());
      next = nearest_outside(part.blocks[part.block_of[base_point]]);
    }
    if (cert.chain.size() < 2) {
      throw construction_error("MacroConnectedSource",
                               "no point escapes the base component at any realized scale",
                               {{"base", source->label(base_point)}});
    }
  }

  const std::size_t used = std::max<std::size_t>(cert.radii.size(), 1);
  cert.squares = share(square_numbers(used));
  const auto psi = escape_index(*source, base_point, cert.radii, used);
  cert.psi = MultiMap::graph(source, cert.squares, psi);

  // Phi(n^2) = B(y_n, r), r half the smallest target distance; the last index
  // also takes any targets the chain did not reach.
  const auto target_scales = target->positive_distances();
  cert.target_radius = target_scales.empty()
                           ? Distance()
                           : Distance(Rational(target_scales.front().value() / 2));
  std::vector<MultiMap::Pair> phi_pairs;
  for (std::size_t n = 0; n < used; ++n) {
    for (PointIndex y : ball(*target, n, cert.target_radius)) phi_pairs.emplace_back(n, y);
  }
  for (PointIndex y = used; y < m; ++y) phi_pairs.emplace_back(used - 1, y);
  cert.phi = MultiMap(cert.squares, target, std::move(phi_pairs));
  cert.multimap = compose(cert.psi, cert.phi);
  cert.oscillation = oscillation(cert.multimap, source->distance_values());
  cert.oscillation_psi = oscillation(cert.psi, source->distance_values());
  return cert;
}

}  // namespace macrospace
