// SPDX-License-Identifier: Apache-2.0
//
// Maximum weight matching as min-cost flow on negated weights: one shortest
// path per augmentation, Dijkstra on reduced costs over an addressable heap.
//
// Network: source -> l (cap 1, cost 0), l -> r (cap 1, cost -w),
// r -> sink (cap 1, cost 0). The initial network is acyclic, so the first
// potentials come from one pass in topological order. Augmentation stops as
// soon as the cheapest source-sink path no longer has negative cost.

#ifndef BIMATCH_MCMF_HPP
#define BIMATCH_MCMF_HPP

#include <optional>
#include <vector>

#include "bimatch/graph.hpp"
#include "bimatch/kwok.hpp"
#include "bimatch/solution.hpp"

namespace bimatch {

template <WeightType W>
class FlowNetwork {
public:
    struct Arc {
        int to;
        int capacity;
        W cost;
        int reverse;  // index of the paired arc in arcs(to)
    };

    explicit FlowNetwork(int n_nodes);

    /// Adds u -> v and its zero-capacity residual partner. Returns the index
    /// of the forward arc within arcs(u).
    int add_arc(int u, int v, int capacity, W cost);

    int n_nodes() const noexcept { return static_cast<int>(out_.size()); }
    std::vector<Arc>& arcs(int u) { return out_[u]; }
    const std::vector<Arc>& arcs(int u) const { return out_[u]; }

    std::vector<W>& potentials() noexcept { return potential_; }
    const std::vector<W>& potentials() const noexcept { return potential_; }

    /// Smallest cost(u,v) + p(u) - p(v) over residual arcs with capacity left,
    /// or +infinity if there are none.
    W min_reduced_cost() const;

private:
    std::vector<std::vector<Arc>> out_;
    std::vector<W> potential_;
};

template <WeightType W>
struct McmfOptions {
    std::optional<double> tolerance;  // real mode only
    bool check_reduced_costs = kDebugChecksDefault;
};

/// Labels in the returned Solution are left empty; only the matching and the
/// counters are filled in.
template <WeightType W>
Solution<W> mcmf_dijkstra(const BasicGraph<W>& g, const McmfOptions<W>& options = {});

}  // namespace bimatch

#endif  // BIMATCH_MCMF_HPP
