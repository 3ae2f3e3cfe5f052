// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "bimatch/oracle.hpp"
#include "support.hpp"

namespace bimatch {
namespace {

using E = Edge<std::int64_t>;
using testing::Rng;

Graph two_by_two() {
    const std::vector<E> in{{0, 0, 5}, {0, 1, 1}, {1, 0, 2}, {1, 1, 3}};
    return Graph::build(2, 2, in);
}

// Best perfect assignment of a square dense graph by trying every permutation.
std::int64_t permutation_optimum(const Graph& g) {
    const int n = g.n_left();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::int64_t best = 0;
    do {
        std::int64_t total = 0;
        for (int l = 0; l < n; ++l) {
            const auto* w = g.find(l, perm[l]);
            if (w && *w > 0) total += *w;
        }
        best = std::max(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

TEST(BruteForce, TwoByTwo) {
    const auto [m, w] = brute_force_mwm(two_by_two());
    EXPECT_EQ(w, 8);
    EXPECT_EQ(m.total_weight, 8);
    EXPECT_TRUE(is_matching_of(m, two_by_two()));
}

TEST(BruteForce, EmptyAndSingle) {
    const auto [m0, w0] = brute_force_mwm(Graph::build(0, 0, {}));
    EXPECT_EQ(w0, 0);
    EXPECT_EQ(m0.size(), 0u);
    const std::vector<E> one{{0, 0, 7}};
    EXPECT_EQ(brute_force_mwm(Graph::build(1, 1, one)).second, 7);
}

TEST(BruteForce, IgnoresNonPositiveEdges) {
    const std::vector<E> in{{0, 0, -4}, {1, 1, 0}};
    const auto [m, w] = brute_force_mwm(Graph::build(2, 2, in));
    EXPECT_EQ(w, 0);
    EXPECT_EQ(m.size(), 0u);
}

TEST(BruteForce, RejectsWideRightSide) {
    EXPECT_THROW(brute_force_mwm(Graph::build(1, kOracleMaxRight + 1, {})), OracleLimitError);
}

TEST(BruteForce, MatchesPermutationEnumeration) {
    Rng rng(21);
    for (int t = 0; t < 300; ++t) {
        const int n = static_cast<int>(testing::uniform_int(rng, 1, 6));
        const Graph g = testing::random_graph(rng, n, n, 1.0, 0, 50);
        ASSERT_EQ(brute_force_mwm(g).second, permutation_optimum(g)) << "trial " << t;
    }
}

TEST(Enumerate, Examples) {
    EXPECT_EQ(enumerate_all_matchings_weight(two_by_two()), 8);
    const std::vector<E> shared{{0, 0, 4}, {0, 1, 9}};
    EXPECT_EQ(enumerate_all_matchings_weight(Graph::build(1, 2, shared)), 9);
    const std::vector<E> disjoint{{0, 0, 4}, {1, 1, 9}};
    EXPECT_EQ(enumerate_all_matchings_weight(Graph::build(2, 2, disjoint)), 13);
}

TEST(Enumerate, RejectsManyEdges) {
    Rng rng(22);
    const Graph g = testing::random_graph(rng, 5, 5, 1.0, 1, 3);
    EXPECT_THROW(enumerate_all_matchings_weight(g), OracleLimitError);
}

TEST(Oracles, AgreeOn10000Trials) {
    Rng rng(23);
    for (int t = 0; t < 10000;) {
        const auto [nl, nr] = testing::random_shape(rng, 6, 10);
        const double density = std::min(1.0, 18.0 / (nl * nr)) * testing::uniform_int(rng, 1, 10) / 10.0;
        const Graph g = testing::random_graph(rng, nl, nr, density, -3, 12);
        if (g.n_edges() > static_cast<std::size_t>(kOracleMaxEdges)) continue;
        ++t;
        ASSERT_EQ(brute_force_mwm(g).second, enumerate_all_matchings_weight(g)) << "trial " << t;
    }
}

TEST(Oracles, InvariantUnderPruneAndTranspose) {
    Rng rng(24);
    for (int t = 0; t < 300; ++t) {
        const auto [nl, nr] = testing::random_shape(rng, 6, 12);
        const Graph g = clean(testing::random_graph(rng, nl, nr, 0.7, -2, 15));
        const auto w = brute_force_mwm(g).second;
        EXPECT_EQ(brute_force_mwm(prune_top_l(g)).second, w);
        EXPECT_EQ(brute_force_mwm(Graph::build(nr, nl, transpose(g).edges())).second, w);
    }
}

}  // namespace
}  // namespace bimatch
