// SPDX-License-Identifier: Apache-2.0
//
// Random instance generators shared by the unit and acceptance tests.

#ifndef BIMATCH_TESTS_SUPPORT_HPP
#define BIMATCH_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "bimatch/bench.hpp"
#include "bimatch/graph.hpp"

namespace bimatch::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

inline bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

/// Each (l, r) pair present with probability `density`; edges in (l, r)
/// order. Weights are not cleaned.
inline Graph random_graph(Rng& rng, int n_left, int n_right, double density, std::int64_t lo, std::int64_t hi) {
    std::vector<Edge<std::int64_t>> edges;
    for (int l = 0; l < n_left; ++l) {
        for (int r = 0; r < n_right; ++r) {
            if (coin(rng, density)) edges.push_back({l, r, uniform_int(rng, lo, hi)});
        }
    }
    return Graph::build(n_left, n_right, edges);
}

/// As random_graph, but every left vertex gets at least one edge.
inline Graph random_graph_no_isolated(Rng& rng, int n_left, int n_right, double density, std::int64_t lo,
                                      std::int64_t hi) {
    std::vector<Edge<std::int64_t>> edges;
    for (int l = 0; l < n_left; ++l) {
        const auto forced = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n_right)));
        for (int r = 0; r < n_right; ++r) {
            if (r == forced || coin(rng, density)) edges.push_back({l, r, uniform_int(rng, lo, hi)});
        }
    }
    return Graph::build(n_left, n_right, edges);
}

/// Random small shape with |L| in [1, max_left] and |R| in [|L|, max_right].
inline std::pair<int, int> random_shape(Rng& rng, int max_left, int max_right) {
    const int nl = static_cast<int>(uniform_int(rng, 1, max_left));
    const int nr = static_cast<int>(uniform_int(rng, nl, max_right));
    return {nl, nr};
}

inline RealGraph to_real(const Graph& g) {
    std::vector<Edge<double>> edges;
    for (const auto& e : g.edges()) edges.push_back({e.left, e.right, static_cast<double>(e.weight)});
    return RealGraph::build(g.n_left(), g.n_right(), edges);
}

}  // namespace bimatch::testing

#endif  // BIMATCH_TESTS_SUPPORT_HPP
