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
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "macrospace/distance.hpp"
#include "macrospace/error.hpp"

namespace macrospace {

using PointIndex = std::size_t;
/// Sorted, duplicate-free list of point indices.
using PointSet = std::vector<PointIndex>;

inline constexpr std::size_t kDefaultPointBudget = 4096;

/// A finite metric space stored as a table of distinct distance values plus a
/// rank matrix into it. Since the values are sorted, `d(x,y) <= eps` reduces
/// to an integer comparison against `rank_at_most(eps)`, which is exact.
///
/// Instances are immutable; every constructor path either validates the
/// metric axioms or is fed by a generator that satisfies them by
/// construction.
class FiniteMetricSpace {
 public:
  using Rank = std::uint32_t;

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(PointIndex i) const { return labels_.at(i); }

  std::optional<PointIndex> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  PointIndex index_of(std::string_view label) const {
    if (auto found = find(label)) return *found;
    throw input_error("UnknownPoint", "no point with this label",
                      {{"label", std::string(label)}});
  }

  Rank rank(PointIndex i, PointIndex j) const { return ranks_[i * size() + j]; }
  const Distance& distance(PointIndex i, PointIndex j) const {
    return values_[rank(i, j)];
  }

  /// Sorted distinct realized distances; element 0 is always 0.
  const std::vector<Distance>& distance_values() const noexcept {
    return values_;
  }

  /// Realized positive distances, ascending.
  std::vector<Distance> positive_distances() const {
    return {values_.begin() + 1, values_.end()};
  }

  /// Largest rank r with distance_values()[r] <= eps.
  Rank rank_at_most(const Distance& eps) const {
    auto it = std::upper_bound(values_.begin(), values_.end(), eps);
    return static_cast<Rank>((it - values_.begin()) - 1);
  }

  const Distance& diameter() const { return values_.back(); }
  bool ultrametric() const noexcept { return ultrametric_; }

  friend bool operator==(const FiniteMetricSpace& a,
                         const FiniteMetricSpace& b) {
    return a.labels_ == b.labels_ && a.values_ == b.values_ &&
           a.ranks_ == b.ranks_;
  }

  /// Builds a space from a rank matrix into `values` (ascending, values[0] ==
  /// 0). Unused values are dropped. The caller guarantees the metric axioms;
  /// only the ultrametric flag is recomputed when not supplied.
  static FiniteMetricSpace from_ranks(std::vector<std::string> labels,
                                      std::vector<Distance> values,
                                      std::vector<Rank> ranks,
                                      std::optional<bool> ultrametric = {}) {
    FiniteMetricSpace space;
    const std::size_t n = labels.size();
    std::vector<bool> used(values.size(), false);
    used[0] = true;
    for (Rank r : ranks) used[r] = true;
    std::vector<Rank> remap(values.size(), 0);
    Rank next = 0;
    for (std::size_t r = 0; r < values.size(); ++r) {
      if (used[r]) {
        remap[r] = next++;
        space.values_.push_back(values[r]);
      }
    }
    for (Rank& r : ranks) r = remap[r];
    space.labels_ = std::move(labels);
    space.ranks_ = std::move(ranks);
    space.build_index();
    space.ultrametric_ =
        ultrametric ? *ultrametric : space.compute_ultrametric(n);
    return space;
  }

  /// Builds a space from an explicit matrix without checking axioms.
  static FiniteMetricSpace from_matrix_unchecked(
      std::vector<std::string> labels,
      const std::vector<std::vector<Distance>>& matrix,
      std::optional<bool> ultrametric = {}) {
    std::vector<Distance> values{Distance()};
    for (const auto& row : matrix) values.insert(values.end(), row.begin(), row.end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    const std::size_t n = labels.size();
    std::vector<Rank> ranks(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        ranks[i * n + j] = static_cast<Rank>(
            std::lower_bound(values.begin(), values.end(), matrix[i][j]) -
            values.begin());
      }
    }
    return from_ranks(std::move(labels), std::move(values), std::move(ranks),
                      ultrametric);
  }

 private:
  friend FiniteMetricSpace validate_metric(
      std::vector<std::string>, const std::vector<std::vector<Distance>>&);

  FiniteMetricSpace() = default;

  void build_index() {
    index_.clear();
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (!index_.emplace(labels_[i], i).second) {
        throw input_error("DuplicateLabel", "point labels must be unique",
                          {{"label", labels_[i]}});
      }
    }
  }

  bool compute_ultrametric(std::size_t n) const {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const Rank xy = rank(x, y);
        for (std::size_t z = 0; z < n; ++z) {
          if (rank(x, z) > std::max(xy, rank(y, z))) return false;
        }
      }
    }
    return true;
  }

  std::vector<std::string> labels_;
  std::unordered_map<std::string, PointIndex> index_;
  std::vector<Distance> values_;
  std::vector<Rank> ranks_;
  bool ultrametric_ = false;
};

namespace detail {

// Distance values rescaled to a common denominator, when that fits in 62 bits;
// lets the cubic triangle scan run on machine integers.
inline std::optional<std::vector<std::int64_t>> common_scale(
    const std::vector<Distance>& values) {
  using boost::multiprecision::cpp_int;
  cpp_int lcm = 1;
  for (const auto& v : values) {
    lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(v.value()));
  }
  const cpp_int limit = cpp_int(1) << 61;
  std::vector<std::int64_t> out;
  out.reserve(values.size());
  for (const auto& v : values) {
    cpp_int scaled = boost::multiprecision::numerator(v.value()) *
                     (lcm / boost::multiprecision::denominator(v.value()));
    if (scaled >= limit) return std::nullopt;
    out.push_back(scaled.convert_to<std::int64_t>());
  }
  return out;
}

}  // namespace detail

/// Checks the metric axioms and returns the space. Every failure names the
/// witnessing points.
inline FiniteMetricSpace validate_metric(
    std::vector<std::string> labels,
    const std::vector<std::vector<Distance>>& matrix) {
  const std::size_t n = matrix.size();
  if (n == 0) throw input_error("EmptySpace", "a space needs at least one point");
  if (labels.size() != n) {
    throw input_error("LabelCountMismatch", "one label per matrix row",
                      {{"labels", std::to_string(labels.size())},
                       {"rows", std::to_string(n)}});
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) {
      throw input_error("NonSquareMatrix", "distance matrix must be square",
                        {{"row", std::to_string(i)}});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!matrix[i][i].is_zero()) {
      throw input_error("NonzeroDiagonal", "d(x,x) must be 0",
                        {{"x", labels[i]}, {"value", matrix[i][i].to_string()}});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (matrix[i][j] != matrix[j][i]) {
        throw input_error("AsymmetricMatrix", "d(x,y) != d(y,x)",
                          {{"x", labels[i]}, {"y", labels[j]}});
      }
      if (matrix[i][j].is_zero()) {
        throw input_error("ZeroDistanceDistinctPoints",
                          "distinct points at distance 0",
                          {{"x", labels[i]}, {"y", labels[j]}});
      }
    }
  }

  FiniteMetricSpace space =
      FiniteMetricSpace::from_matrix_unchecked(std::move(labels), matrix, false);
  const auto& values = space.distance_values();
  auto violation = [&](std::size_t x, std::size_t y, std::size_t z) {
    return input_error("TriangleViolation", "d(x,z) > d(x,y) + d(y,z)",
                       {{"x", space.label(x)}, {"y", space.label(y)},
                        {"z", space.label(z)}});
  };
  bool ultra = true;
  if (auto scaled = detail::common_scale(values)) {
    const auto& v = *scaled;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const auto xy = space.rank(x, y);
        for (std::size_t z = 0; z < n; ++z) {
          const auto xz = space.rank(x, z);
          const auto yz = space.rank(y, z);
          if (v[xz] > v[xy] + v[yz]) throw violation(x, y, z);
          if (xz > std::max(xy, yz)) ultra = false;
        }
      }
    }
  } else {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const auto xy = space.rank(x, y);
        for (std::size_t z = 0; z < n; ++z) {
          const auto xz = space.rank(x, z);
          const auto yz = space.rank(y, z);
          if (values[xz] > values[xy] + values[yz]) throw violation(x, y, z);
          if (xz > std::max(xy, yz)) ultra = false;
        }
      }
    }
  }
  space.ultrametric_ = ultra;
  return space;
}

/// Parameters of the truncated coproduct k^{<=n}: all length-n words over
/// {0..k-1}, with d(x,y) = level_values[j-1] for the largest differing
/// coordinate j. Empty level_values means 1, 2, ..., n.
struct KappaSpec {
  std::size_t alphabet_size = 2;
  std::size_t depth = 1;
  std::vector<Distance> level_values;

  std::vector<Distance> resolved_levels() const {
    if (!level_values.empty()) return level_values;
    std::vector<Distance> out;
    for (std::size_t i = 1; i <= depth; ++i) {
      out.emplace_back(static_cast<std::int64_t>(i));
    }
    return out;
  }
};

/// Coordinates of point `index` in gen_kappa_space order: coordinate 1 varies
/// fastest.
inline std::vector<std::size_t> kappa_coordinates(std::size_t index,
                                                  std::size_t k,
                                                  std::size_t n) {
  std::vector<std::size_t> coords(n);
  for (std::size_t j = 0; j < n; ++j) {
    coords[j] = index % k;
    index /= k;
  }
  return coords;
}

inline std::string kappa_label(const std::vector<std::size_t>& coords) {
  std::string out = "(";
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(coords[j]);
  }
  return out + ")";
}

inline FiniteMetricSpace gen_kappa_space(
    const KappaSpec& spec, std::size_t point_budget = kDefaultPointBudget) {
  const std::size_t k = spec.alphabet_size;
  const std::size_t n = spec.depth;
  if (k == 0) throw input_error("InvalidKappaSpec", "alphabet size must be >= 1");
  std::vector<Distance> levels = spec.resolved_levels();
  if (levels.size() != n) {
    throw input_error("InvalidKappaSpec", "need one level value per coordinate",
                      {{"depth", std::to_string(n)},
                       {"levels", std::to_string(levels.size())}});
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i].is_zero() || (i > 0 && !(levels[i - 1] < levels[i]))) {
      throw input_error("InvalidKappaSpec",
                        "level values must be positive and strictly increasing",
                        {{"index", std::to_string(i)}});
    }
  }
  std::size_t count = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (count > point_budget / k) {
      throw input_error("BudgetExceeded", "k^n exceeds the point budget",
                        {{"k", std::to_string(k)},
                         {"n", std::to_string(n)},
                         {"budget", std::to_string(point_budget)}});
    }
    count *= k;
  }

  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    labels.push_back(kappa_label(kappa_coordinates(i, k, n)));
  }
  std::vector<Distance> values{Distance()};
  values.insert(values.end(), levels.begin(), levels.end());

  // Rank of (i, j) is the 1-based index of the highest differing digit.
  std::vector<FiniteMetricSpace::Rank> ranks(count * count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      std::size_t a = i, b = j;
      FiniteMetricSpace::Rank highest = 0;
      for (FiniteMetricSpace::Rank pos = 1; a != b; ++pos) {
        if (a % k != b % k) highest = pos;
        a /= k;
        b /= k;
      }
      ranks[i * count + j] = highest;
    }
  }
  return FiniteMetricSpace::from_ranks(std::move(labels), std::move(values),
                                       std::move(ranks), true);
}

/// Strong triangle inequality over all triples; decided at construction.
inline bool is_ultrametric(const FiniteMetricSpace& space) {
  return space.ultrametric();
}

inline PointSet ball(const FiniteMetricSpace& space, PointIndex center,
                     const Distance& radius) {
  if (center >= space.size()) {
    throw input_error("UnknownPoint", "ball center is not a point of the space",
                      {{"index", std::to_string(center)}});
  }
  const auto r = space.rank_at_most(radius);
  PointSet out;
  for (PointIndex y = 0; y < space.size(); ++y) {
    if (space.rank(center, y) <= r) out.push_back(y);
  }
  return out;
}

inline Distance diameter_of(const FiniteMetricSpace& space,
                            const PointSet& points) {
  FiniteMetricSpace::Rank best = 0;
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      best = std::max(best, space.rank(points[a], points[b]));
    }
  }
  return space.distance_values()[best];
}

inline PointSet all_points(const FiniteMetricSpace& space) {
  PointSet out(space.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

}  // namespace macrospace
