// SPDX-License-Identifier: Apache-2.0

#include "bimatch/mcmf.hpp"

#include <algorithm>
#include <stdexcept>

#include "bimatch/pairing_heap.hpp"

namespace bimatch {

template <WeightType W>
FlowNetwork<W>::FlowNetwork(int n_nodes)
    : out_(static_cast<std::size_t>(n_nodes)), potential_(static_cast<std::size_t>(n_nodes), W{}) {}

template <WeightType W>
int FlowNetwork<W>::add_arc(int u, int v, int capacity, W cost) {
    const int fwd = static_cast<int>(out_[u].size());
    const int bwd = static_cast<int>(out_[v].size()) + (u == v ? 1 : 0);
    out_[u].push_back({v, capacity, cost, bwd});
    out_[v].push_back({u, 0, -cost, fwd});
    return fwd;
}

template <WeightType W>
W FlowNetwork<W>::min_reduced_cost() const {
    W best = WeightTraits<W>::infinity();
    for (int u = 0; u < n_nodes(); ++u) {
        for (const auto& a : out_[u]) {
            if (a.capacity > 0) best = std::min(best, a.cost + potential_[u] - potential_[a.to]);
        }
    }
    return best;
}

template <WeightType W>
Solution<W> mcmf_dijkstra(const BasicGraph<W>& g, const McmfOptions<W>& options) {
    const int nl = g.n_left();
    const int nr = g.n_right();
    const int source = 0;
    const int sink = nl + nr + 1;
    auto left_node = [](int l) { return 1 + l; };
    auto right_node = [nl](int r) { return 1 + nl + r; };

    W eps{};
    if constexpr (!WeightTraits<W>::exact) {
        eps = options.tolerance ? *options.tolerance : default_tolerance(g.max_abs_weight());
    }

    FlowNetwork<W> net(nl + nr + 2);
    std::vector<std::vector<std::pair<int, int>>> edge_arc(static_cast<std::size_t>(nl));  // (arc index, right)
    for (int l = 0; l < nl; ++l) {
        if (g.adj(l).empty()) continue;
        net.add_arc(source, left_node(l), 1, W{});
        for (const auto& nb : g.adj(l)) {
            if (!(nb.weight > W{})) continue;
            edge_arc[l].push_back({net.add_arc(left_node(l), right_node(nb.right), 1, -nb.weight), nb.right});
        }
    }
    for (int r = 0; r < nr; ++r) net.add_arc(right_node(r), sink, 1, W{});

    // Shortest distances in the initial DAG: source and left nodes at 0,
    // right nodes at their cheapest incoming arc, the sink at the minimum.
    auto& p = net.potentials();
    for (int l = 0; l < nl; ++l) {
        for (const auto& a : net.arcs(left_node(l))) {
            if (a.capacity > 0) p[a.to] = std::min(p[a.to], a.cost);
        }
    }
    for (int r = 0; r < nr; ++r) p[sink] = std::min(p[sink], p[right_node(r)]);

    SolveStats stats;
    const W inf = WeightTraits<W>::infinity();
    const int n = net.n_nodes();
    std::vector<W> dist(static_cast<std::size_t>(n));
    std::vector<int> via_node(static_cast<std::size_t>(n));
    std::vector<int> via_arc(static_cast<std::size_t>(n));
    std::vector<char> done(static_cast<std::size_t>(n));
    std::vector<HeapHandle> handle(static_cast<std::size_t>(n));
    PairingHeap<int, W> heap;

    for (int round = 0; round < nl; ++round) {
        if (options.check_reduced_costs && WeightTraits<W>::is_negative(net.min_reduced_cost(), eps)) {
            throw FeasibilityError("bimatch: negative reduced cost before shortest path search");
        }
        std::fill(dist.begin(), dist.end(), inf);
        std::fill(done.begin(), done.end(), 0);
        std::fill(handle.begin(), handle.end(), HeapHandle{});
        heap.clear();
        dist[source] = W{};
        handle[source] = heap.insert(source, W{});
        ++stats.heap_inserts;
        ++stats.searches;
        std::uint64_t scanned = 0;

        while (!heap.empty()) {
            const auto [u, du] = heap.extract_min();
            ++stats.heap_extracts;
            handle[u] = HeapHandle{};
            done[u] = 1;
            for (int i = 0; i < static_cast<int>(net.arcs(u).size()); ++i) {
                const auto& a = net.arcs(u)[i];
                ++scanned;
                if (a.capacity <= 0 || done[a.to]) continue;
                W rc = a.cost + p[u] - p[a.to];
                if (rc < W{}) rc = W{};  // only reachable in real mode, within tolerance
                const W cand = du + rc;
                if (cand < dist[a.to]) {
                    dist[a.to] = cand;
                    via_node[a.to] = u;
                    via_arc[a.to] = i;
                    if (heap.contains(handle[a.to])) {
                        heap.decrease_key(handle[a.to], cand);
                        ++stats.heap_decreases;
                    } else {
                        handle[a.to] = heap.insert(a.to, cand);
                        ++stats.heap_inserts;
                    }
                }
            }
        }
        stats.edges_visited += scanned;
        stats.max_search_edges_visited = std::max(stats.max_search_edges_visited, scanned);

        if (dist[sink] == inf) break;
        const W path_cost = dist[sink] + p[sink] - p[source];
        if (!WeightTraits<W>::is_negative(path_cost, eps)) break;

        W far{};
        for (int v = 0; v < n; ++v) {
            if (dist[v] != inf) far = std::max(far, dist[v]);
        }
        for (int v = 0; v < n; ++v) p[v] += dist[v] != inf ? dist[v] : far;

        for (int v = sink; v != source; v = via_node[v]) {
            auto& a = net.arcs(via_node[v])[via_arc[v]];
            a.capacity -= 1;
            net.arcs(v)[a.reverse].capacity += 1;
        }
        ++stats.augmentations;
    }

    Solution<W> out;
    for (int l = 0; l < nl; ++l) {
        for (const auto& [idx, r] : edge_arc[l]) {
            if (net.arcs(left_node(l))[idx].capacity == 0) {
                const W w = -net.arcs(left_node(l))[idx].cost;
                out.matching.pairs.push_back({l, r, w});
                out.matching.total_weight = checked_add(out.matching.total_weight, w);
            }
        }
    }
    out.stats = stats;
    return out;
}

template class FlowNetwork<std::int64_t>;
template class FlowNetwork<double>;
template Solution<std::int64_t> mcmf_dijkstra(const BasicGraph<std::int64_t>&, const McmfOptions<std::int64_t>&);
template Solution<double> mcmf_dijkstra(const BasicGraph<double>&, const McmfOptions<double>&);

}  // namespace bimatch
