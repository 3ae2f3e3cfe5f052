// SPDX-License-Identifier: Apache-2.0

#include "bimatch/oracle.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bimatch {

template <WeightType W>
std::pair<Matching<W>, W> brute_force_mwm(const BasicGraph<W>& g) {
    const int nl = g.n_left();
    const int nr = g.n_right();
    if (nr > kOracleMaxRight || nl > kOracleMaxRight) {
        throw OracleLimitError("bimatch: brute force oracle limited to " + std::to_string(kOracleMaxRight) +
                               " vertices per side");
    }
    const std::size_t masks = std::size_t{1} << nr;

    // best[mask]: optimum over left vertices l..nl-1 with `mask` already used.
    // Filled backwards from l = nl; choice[l][mask] keeps the decision.
    std::vector<W> best(masks, W{});
    std::vector<W> next(masks, W{});
    std::vector<std::int8_t> choice(static_cast<std::size_t>(nl) * masks, -1);
    for (int l = nl - 1; l >= 0; --l) {
        for (std::size_t mask = 0; mask < masks; ++mask) {
            W value = best[mask];
            std::int8_t pick = -1;
            for (const auto& nb : g.adj(l)) {
                const std::size_t bit = std::size_t{1} << nb.right;
                if (!(nb.weight > W{}) || (mask & bit)) continue;
                const W cand = nb.weight + best[mask | bit];
                if (cand > value) {
                    value = cand;
                    pick = static_cast<std::int8_t>(nb.right);
                }
            }
            next[mask] = value;
            choice[static_cast<std::size_t>(l) * masks + mask] = pick;
        }
        best.swap(next);
    }

    Matching<W> m;
    std::size_t mask = 0;
    for (int l = 0; l < nl; ++l) {
        const int r = choice[static_cast<std::size_t>(l) * masks + mask];
        if (r < 0) continue;
        const W w = *g.find(l, r);
        m.pairs.push_back({l, r, w});
        m.total_weight += w;
        mask |= std::size_t{1} << r;
    }
    return {m, best[0]};
}

template <WeightType W>
W enumerate_all_matchings_weight(const BasicGraph<W>& g) {
    const auto edges = g.edges();
    if (edges.size() > static_cast<std::size_t>(kOracleMaxEdges)) {
        throw OracleLimitError("bimatch: subset enumeration limited to " + std::to_string(kOracleMaxEdges) +
                               " edges");
    }
    W best{};
    std::vector<char> left_used(static_cast<std::size_t>(g.n_left()));
    std::vector<char> right_used(static_cast<std::size_t>(g.n_right()));
    const std::uint32_t subsets = std::uint32_t{1} << edges.size();
    for (std::uint32_t s = 0; s < subsets; ++s) {
        std::fill(left_used.begin(), left_used.end(), 0);
        std::fill(right_used.begin(), right_used.end(), 0);
        W total{};
        bool ok = true;
        for (std::size_t i = 0; i < edges.size() && ok; ++i) {
            if (!(s >> i & 1u)) continue;
            const auto& e = edges[i];
            if (left_used[e.left] || right_used[e.right]) {
                ok = false;
            } else {
                left_used[e.left] = right_used[e.right] = 1;
                total += e.weight;
            }
        }
        if (ok && total > best) best = total;
    }
    return best;
}

template std::pair<Matching<std::int64_t>, std::int64_t> brute_force_mwm(const BasicGraph<std::int64_t>&);
template std::pair<Matching<double>, double> brute_force_mwm(const BasicGraph<double>&);
template std::int64_t enumerate_all_matchings_weight(const BasicGraph<std::int64_t>&);
template double enumerate_all_matchings_weight(const BasicGraph<double>&);

}  // namespace bimatch
