// SPDX-License-Identifier: Apache-2.0
//
// Result types shared by the solvers.

#ifndef BIMATCH_SOLUTION_HPP
#define BIMATCH_SOLUTION_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bimatch/graph.hpp"

namespace bimatch {

/// Feasible vertex labeling: h_left[l] + h_right[r] >= w(l, r) on every edge.
template <WeightType W>
struct DualLabels {
    std::vector<W> h_left;
    std::vector<W> h_right;

    friend bool operator==(const DualLabels&, const DualLabels&) = default;
};

struct SolveStats {
    std::uint64_t edges_visited = 0;
    std::uint64_t h_adjustments = 0;  // number of delta computations
    std::uint64_t augmentations = 0;  // applied augmenting paths
    std::uint64_t greedy_matches = 0;
    std::uint64_t heap_inserts = 0;
    std::uint64_t heap_extracts = 0;
    std::uint64_t heap_decreases = 0;
    std::uint64_t heap_deletes = 0;
    std::uint64_t searches = 0;  // BFS (or Dijkstra) runs
    // Per-search maxima, for the complexity bounds.
    std::uint64_t max_search_h_adjustments = 0;
    std::uint64_t max_search_edges_visited = 0;
};

/// Snapshot handed to an observer after every augmentation.
/// left_pair[l] is the current partner of l, or -1; partners may be virtual.
template <WeightType W>
struct AugmentEvent {
    const DualLabels<W>& labels;
    std::span<const int> left_pair;
    std::span<const int> right_pair;
};

template <WeightType W>
using AugmentObserver = std::function<void(const AugmentEvent<W>&)>;

template <WeightType W>
struct Solution {
    Matching<W> matching;
    DualLabels<W> labels;
    SolveStats stats;
};

}  // namespace bimatch

#endif  // BIMATCH_SOLUTION_HPP
