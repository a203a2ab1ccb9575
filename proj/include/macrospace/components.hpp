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
#include <vector>

#include "macrospace/disjoint_set.hpp"
#include "macrospace/metric_space.hpp"

namespace macrospace {

/// The cover of a space by its eps-connected components.
struct ScalePartition {
  Distance scale;
  /// Each block sorted; blocks ordered by their smallest member.
  std::vector<PointSet> blocks;
  /// block_of[x] is the index of the block containing x.
  std::vector<std::size_t> block_of;
  Distance mesh;

  std::size_t block_count() const noexcept { return blocks.size(); }
};

/// Single-linkage components at threshold eps: union-find over every pair at
/// distance <= eps.
inline ScalePartition epsilon_components(const FiniteMetricSpace& space,
                                         const Distance& eps) {
  const std::size_t n = space.size();
  const auto limit = space.rank_at_most(eps);
  DisjointSet dsu(n);
  for (PointIndex i = 0; i < n; ++i) {
    for (PointIndex j = i + 1; j < n; ++j) {
      if (space.rank(i, j) <= limit) dsu.unite(i, j);
    }
  }

  ScalePartition out;
  out.scale = eps;
  out.block_of.assign(n, 0);
  std::vector<std::size_t> root_block(n, n);
  for (PointIndex x = 0; x < n; ++x) {
    const auto root = dsu.find(x);
    if (root_block[root] == n) {
      root_block[root] = out.blocks.size();
      out.blocks.emplace_back();
    }
    out.block_of[x] = root_block[root];
    out.blocks[root_block[root]].push_back(x);
  }

  FiniteMetricSpace::Rank mesh_rank = 0;
  for (PointIndex i = 0; i < n; ++i) {
    for (PointIndex j = i + 1; j < n; ++j) {
      if (out.block_of[i] == out.block_of[j]) {
        mesh_rank = std::max(mesh_rank, space.rank(i, j));
      }
    }
  }
  out.mesh = space.distance_values()[mesh_rank];
  return out;
}

struct MeshProfileRow {
  Distance scale;
  Distance mesh;
  std::size_t block_count = 0;
};

inline std::vector<MeshProfileRow> mesh_profile(
    const FiniteMetricSpace& space, const std::vector<Distance>& scales) {
  if (!std::is_sorted(scales.begin(), scales.end())) {
    throw input_error("UnsortedScales", "scales must be sorted ascending");
  }
  std::vector<MeshProfileRow> rows;
  rows.reserve(scales.size());
  for (const auto& eps : scales) {
    auto partition = epsilon_components(space, eps);
    rows.push_back({eps, partition.mesh, partition.block_count()});
  }
  return rows;
}

inline bool is_macro_connected_at(const FiniteMetricSpace& space,
                                  const Distance& eps) {
  return epsilon_components(space, eps).block_count() == 1;
}

}  // namespace macrospace
