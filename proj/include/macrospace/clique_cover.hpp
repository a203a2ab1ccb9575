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

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <vector>

namespace macrospace {

using Bitset = boost::dynamic_bitset<>;

/// Result of a minimum clique cover search. `lower == upper` iff exact.
struct CliqueCoverResult {
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::size_t greedy_upper = 0;
  std::size_t independent_lower = 0;
  std::size_t nodes = 0;
  bool exact() const noexcept { return lower == upper; }
};

namespace detail {

// Vertices are assigned one at a time to an open clique they are adjacent to
// every member of, or to a new clique while that can still beat the
// incumbent. The next vertex is the one with the fewest admissible cliques.
class CliqueCoverSearch {
 public:
  CliqueCoverSearch(const std::vector<Bitset>& adjacency, std::size_t budget)
      : adj_(adjacency), n_(adjacency.size()), budget_(budget) {}

  CliqueCoverResult run() {
    CliqueCoverResult result;
    if (n_ == 0) return result;
    result.greedy_upper = greedy_cover();
    const auto independent = greedy_independent_set();
    result.independent_lower = independent.size();
    best_ = result.greedy_upper;
    lower_ = result.independent_lower;

    if (lower_ < best_) {
      assigned_.assign(n_, false);
      // Pairwise non-adjacent vertices must sit in distinct cliques.
      for (std::size_t v : independent) open_clique(v);
      search(n_ - independent.size());
    }
    result.nodes = nodes_;
    result.upper = best_;
    result.lower = exhausted_ ? lower_ : best_;
    return result;
  }

 private:
  struct Clique {
    Bitset common;  // vertices adjacent to every member
  };

  std::size_t greedy_cover() const {
    Bitset covered(n_);
    std::size_t count = 0;
    for (std::size_t v = 0; v < n_; ++v) {
      if (covered.test(v)) continue;
      ++count;
      covered.set(v);
      Bitset common = adj_[v];
      for (std::size_t u = common.find_first(); u != Bitset::npos;
           u = common.find_next(u)) {
        if (covered.test(u)) continue;
        covered.set(u);
        common &= adj_[u];
      }
    }
    return count;
  }

  std::vector<std::size_t> greedy_independent_set() const {
    Bitset alive(n_);
    alive.set();
    std::vector<std::size_t> out;
    while (alive.any()) {
      std::size_t pick = Bitset::npos;
      std::size_t pick_degree = n_ + 1;
      for (std::size_t v = alive.find_first(); v != Bitset::npos;
           v = alive.find_next(v)) {
        const std::size_t degree = (adj_[v] & alive).count();
        if (degree < pick_degree) {
          pick = v;
          pick_degree = degree;
        }
      }
      out.push_back(pick);
      alive.reset(pick);
      alive -= adj_[pick];
    }
    return out;
  }

  void open_clique(std::size_t v) {
    cliques_.push_back({adj_[v]});
    assigned_[v] = true;
  }

  void search(std::size_t remaining) {
    if (exhausted_ || best_ == lower_) return;
    if (remaining == 0) {
      best_ = std::min(best_, cliques_.size());
      return;
    }
    if (nodes_ >= budget_) {
      exhausted_ = true;
      return;
    }
    ++nodes_;

    std::size_t pick = n_;
    std::size_t pick_options = cliques_.size() + 2;
    for (std::size_t v = 0; v < n_; ++v) {
      if (assigned_[v]) continue;
      std::size_t options = 0;
      for (const auto& c : cliques_) options += c.common.test(v) ? 1 : 0;
      if (options < pick_options) {
        pick = v;
        pick_options = options;
        if (options == 0) break;
      }
    }

    assigned_[pick] = true;
    for (std::size_t c = 0; c < cliques_.size(); ++c) {
      if (!cliques_[c].common.test(pick)) continue;
      Bitset saved = cliques_[c].common;
      cliques_[c].common &= adj_[pick];
      search(remaining - 1);
      cliques_[c].common = std::move(saved);
      if (exhausted_ || best_ == lower_) break;
    }
    if (!exhausted_ && best_ != lower_ && cliques_.size() + 1 < best_) {
      cliques_.push_back({adj_[pick]});
      search(remaining - 1);
      cliques_.pop_back();
    }
    assigned_[pick] = false;
  }

  const std::vector<Bitset>& adj_;
  std::size_t n_;
  std::size_t budget_;
  std::size_t best_ = 0;
  std::size_t lower_ = 0;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<bool> assigned_;
  std::vector<Clique> cliques_;
};

}  // namespace detail

/// Minimum number of cliques covering all vertices of the graph given by
/// `adjacency` (symmetric, no self loops). Returns a bracket when `budget`
/// search nodes do not suffice.
inline CliqueCoverResult min_clique_cover(const std::vector<Bitset>& adjacency,
                                          std::size_t budget) {
  return detail::CliqueCoverSearch(adjacency, budget).run();
}

}  // namespace macrospace
