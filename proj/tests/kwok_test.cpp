// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "bimatch/certify.hpp"
#include "bimatch/hungarian.hpp"
#include "bimatch/kwok.hpp"
#include "bimatch/oracle.hpp"
#include "support.hpp"

namespace bimatch {
namespace {

using E = Edge<std::int64_t>;
using W = std::int64_t;
using testing::Rng;

Graph make(int nl, int nr, std::vector<E> edges) { return Graph::build(nl, nr, edges); }

std::set<std::pair<int, int>> pair_set(const Matching<W>& m) {
    std::set<std::pair<int, int>> s;
    for (const auto& p : m.pairs) s.insert({p.left, p.right});
    return s;
}

// Registers a right vertex as written so begin_search() clears it later.
void stage_right(SearchState<W>& st, int r) {
    if (!st.right_dirty[r]) {
        st.right_dirty[r] = 1;
        st.right_touched.push_back(r);
    }
}

TEST(Solve, TwoByTwo) {
    const auto sol = solve_kwok(make(2, 2, {{0, 0, 5}, {0, 1, 1}, {1, 0, 2}, {1, 1, 3}}));
    EXPECT_EQ(sol.matching.total_weight, 8);
    EXPECT_EQ(pair_set(sol.matching), (std::set<std::pair<int, int>>{{0, 0}, {1, 1}}));
}

TEST(Solve, SingleEdge) {
    const auto sol = solve_kwok(make(1, 1, {{0, 0, 7}}));
    EXPECT_EQ(sol.matching.total_weight, 7);
    EXPECT_EQ(pair_set(sol.matching), (std::set<std::pair<int, int>>{{0, 0}}));
}

TEST(Solve, SingleLeftTakesHeaviest) {
    const auto sol = solve_kwok(make(1, 2, {{0, 0, 4}, {0, 1, 9}}));
    EXPECT_EQ(sol.matching.total_weight, 9);
    EXPECT_EQ(pair_set(sol.matching), (std::set<std::pair<int, int>>{{0, 1}}));
}

TEST(Solve, RejectsUncleanGraph) {
    EXPECT_THROW(solve_kwok(make(1, 2, {{0, 0, 0}, {0, 1, 3}})), UncleanGraphError);
    EXPECT_THROW(solve_kwok(make(1, 2, {{0, 0, -1}})), UncleanGraphError);
}

TEST(Solve, EmptyAndIsolated) {
    EXPECT_EQ(solve_kwok(make(0, 0, {})).matching.size(), 0u);
    const auto sol = solve_kwok(make(3, 3, {{1, 2, 4}}));
    EXPECT_EQ(sol.matching.total_weight, 4);
    EXPECT_EQ(sol.stats.augmentations + sol.stats.greedy_matches, 1u);
}

TEST(Solve, AgreesWithOracleOn1000Graphs) {
    Rng rng(31);
    for (int t = 0; t < 1000; ++t) {
        const auto [nl, nr] = testing::random_shape(rng, 8, 12);
        const Graph g = clean(testing::random_graph(rng, nl, nr, 0.5, -5, 10));
        ASSERT_EQ(solve_kwok(g).matching.total_weight, brute_force_mwm(g).second) << "trial " << t;
    }
}

TEST(GreedyInit, AllTight) {
    const Graph g = make(2, 2, {{0, 0, 5}, {0, 1, 5}, {1, 0, 5}, {1, 1, 5}});
    KwokMatcher<W> m(g);
    m.init_labels();
    EXPECT_EQ(m.greedy_init(), 2u);
    EXPECT_EQ(m.left_pair(), (std::vector<int>{0, 1}));
}

TEST(GreedyInit, TwoByTwoLabelsAndPairs) {
    const Graph g = make(2, 2, {{0, 0, 5}, {0, 1, 1}, {1, 0, 2}, {1, 1, 3}});
    KwokMatcher<W> m(g);
    m.init_labels();
    EXPECT_EQ(m.labels().h_left, (std::vector<W>{5, 3}));
    EXPECT_EQ(m.labels().h_right, (std::vector<W>{0, 0}));
    EXPECT_EQ(m.greedy_init(), 2u);
    EXPECT_EQ(m.left_pair(), (std::vector<int>{0, 1}));
}

TEST(GreedyInit, SecondVertexNotTight) {
    const Graph g = make(2, 2, {{0, 0, 5}, {1, 0, 4}, {1, 1, 1}});
    KwokMatcher<W> m(g);
    m.init_labels();
    EXPECT_EQ(m.greedy_init(), 1u);
    EXPECT_EQ(m.left_pair(), (std::vector<int>{0, -1}));
}

TEST(Bfs, TightEdgeToUnmatchedNeedsNoDelta) {
    const Graph g = make(2, 3, {{0, 0, 5}, {1, 2, 5}});
    KwokMatcher<W> m(g);
    m.init_labels();
    m.match(0, 0);
    m.begin_search(1);
    m.bfs();
    EXPECT_TRUE(m.state().delta_list.empty());
    EXPECT_EQ(m.left_pair(), (std::vector<int>{0, 2}));
    EXPECT_EQ(m.last_search_adjustments(), 0u);
}

TEST(Bfs, EvictsOrMatchesVirtually) {
    const Graph g = make(2, 2, {{0, 0, 5}, {0, 1, 5}, {1, 0, 5}});
    KwokMatcher<W> m(g);
    m.init_labels();
    m.match(0, 0);
    m.begin_search(1);
    m.bfs();
    EXPECT_EQ(m.matching().total_weight, 10);
    EXPECT_EQ(m.left_pair(), (std::vector<int>{1, 0}));
}

TEST(Bfs, UsesFirstUnmatchedWhenLabelIsZero) {
    const Graph g = make(2, 3, {{0, 0, 5}, {1, 0, 5}});
    KwokMatcher<W> m(g);
    m.init_labels();
    m.match(0, 0);
    m.labels().h_left[1] = 0;
    m.labels().h_right[0] = 5;
    m.begin_search(1);
    EXPECT_EQ(m.state().r_first_unmatched, 1);
    m.bfs();
    EXPECT_EQ(m.left_pair()[1], 1);
    EXPECT_EQ(m.matching().size(), 1u);  // (1, 1) is virtual
}

TEST(Introduce, ReachesRStarWhenFrontierEmpty) {
    const Graph g = make(1, 2, {{0, 1, 4}});
    KwokMatcher<W> m(g);
    m.init_labels();
    m.begin_search(0);
    auto& st = m.state();
    stage_right(st, 0);
    st.slack_prime[0] = 4;
    st.parent[0] = 0;
    st.r_star = 0;
    st.delta_list = {1};
    st.delta_sum = 1;
    st.stage = 1;
    st.stage_left[0] = 1;
    EXPECT_TRUE(m.introduce());
    EXPECT_EQ(st.delta_list.back(), 3);
    EXPECT_EQ(st.delta_sum, 4);
    EXPECT_EQ(m.left_pair()[0], 0);
}

TEST(Introduce, PullsFrontierMinimumFirst) {
    const Graph g = make(2, 3, {{0, 1, 4}, {1, 1, 4}});
    KwokMatcher<W> m(g);
    m.init_labels();
    m.match(1, 1);
    m.begin_search(0);
    auto& st = m.state();
    ASSERT_EQ(st.r_first_unmatched, 0);
    stage_right(st, 0);
    st.slack_prime[0] = 9;
    st.parent[0] = 0;
    stage_right(st, 1);
    st.slack_prime[1] = 4;
    st.parent[1] = 0;
    st.frontier_handle[1] = st.frontier.insert(1, {4, 1});
    st.delta_list = {1};
    st.delta_sum = 1;
    st.stage = 1;
    st.stage_left[0] = 1;
    EXPECT_FALSE(m.introduce());
    EXPECT_EQ(st.delta_list.back(), 3);
    EXPECT_EQ(st.stage, 2);
    EXPECT_TRUE(st.frontier.empty());
    EXPECT_EQ(st.stage_right[1], 2);
    EXPECT_EQ(st.stage_right[0], -1);
    ASSERT_EQ(st.queue.size(), 2u);
    EXPECT_EQ(st.queue.back(), 1);
    EXPECT_EQ(st.stage_left[1], 2);
}

TEST(Introduce, ExtractsAllEqualMinima) {
    const Graph g = make(3, 4, {{0, 1, 4}, {0, 2, 4}, {1, 1, 4}, {2, 2, 4}});
    KwokMatcher<W> m(g);
    m.init_labels();
    m.match(1, 1);
    m.match(2, 2);
    m.begin_search(0);
    auto& st = m.state();
    stage_right(st, 0);
    st.slack_prime[0] = 9;
    st.parent[0] = 0;
    for (int r : {1, 2}) {
        stage_right(st, r);
        st.slack_prime[r] = 4;
        st.parent[r] = 0;
        st.frontier_handle[r] = st.frontier.insert(r, {4, r});
    }
    EXPECT_FALSE(m.introduce());
    EXPECT_EQ(st.delta_list, (std::vector<W>{4}));
    EXPECT_TRUE(st.frontier.empty());
    EXPECT_EQ(st.queue.size(), 3u);
}

TEST(Advance, MatchedVertexQueuesPartner) {
    const Graph g = make(2, 2, {{0, 0, 3}, {1, 0, 3}});
    KwokMatcher<W> m(g);
    m.init_labels();
    m.match(1, 0);
    m.begin_search(0);
    m.state().parent[0] = 0;
    EXPECT_FALSE(m.advance(0));
    EXPECT_EQ(m.state().queue.back(), 1);
    EXPECT_EQ(m.state().stage_left[1], 0);
    EXPECT_EQ(m.state().stage_right[0], 0);
}

TEST(Advance, UnmatchedVertexFlipsPath) {
    const Graph g = make(1, 2, {{0, 1, 3}});
    KwokMatcher<W> m(g);
    m.init_labels();
    m.begin_search(0);
    m.state().parent[1] = 0;
    EXPECT_TRUE(m.advance(1));
    EXPECT_EQ(m.left_pair()[0], 1);
    EXPECT_EQ(m.right_pair()[1], 0);
}

TEST(Advance, RemovesVertexFromFrontier) {
    const Graph g = make(2, 3, {{0, 1, 3}, {1, 1, 3}});
    KwokMatcher<W> m(g);
    m.init_labels();
    m.match(1, 1);
    m.begin_search(0);
    auto& st = m.state();
    stage_right(st, 1);
    st.parent[1] = 0;
    st.frontier_handle[1] = st.frontier.insert(1, {2, 1});
    EXPECT_FALSE(m.advance(1));
    EXPECT_TRUE(st.frontier.empty());
    EXPECT_EQ(m.stats().heap_deletes, 1u);
}

TEST(DeferredUpdate, EmptyDeltaIsNoOp) {
    const Graph g = make(1, 1, {{0, 0, 3}});
    KwokMatcher<W> m(g);
    m.init_labels();
    m.begin_search(0);
    const auto before = m.labels();
    m.deferred_h_update();
    EXPECT_EQ(m.labels(), before);
}

TEST(DeferredUpdate, SingleDelta) {
    const Graph g = make(2, 2, {{0, 0, 9}, {1, 0, 9}});
    KwokMatcher<W> m(g);
    m.init_labels();
    m.begin_search(0);
    auto& st = m.state();
    st.left_in_tree = {0};
    st.stage_left[0] = 0;
    st.right_in_tree = {0};
    st.stage_right[0] = 0;
    st.delta_list = {5};
    st.stage = 1;
    m.deferred_h_update();
    EXPECT_EQ(m.labels().h_left[0], 4);
    EXPECT_EQ(m.labels().h_right[0], 5);
}

TEST(DeferredUpdate, SuffixSumsByStage) {
    const Graph g = make(4, 4, {{0, 0, 20}, {1, 1, 20}, {2, 2, 20}, {3, 3, 20}});
    KwokMatcher<W> m(g);
    m.init_labels();
    m.begin_search(0);
    auto& st = m.state();
    st.delta_list = {2, 3, 1};
    st.stage = 3;
    st.left_in_tree = {0, 1, 2, 3};
    st.right_in_tree = {0, 1, 2, 3};
    for (int v = 0; v < 4; ++v) {
        st.stage_left[v] = v;
        st.stage_right[v] = v;
    }
    m.deferred_h_update();
    EXPECT_EQ(m.labels().h_left, (std::vector<W>{14, 16, 19, 20}));
    EXPECT_EQ(m.labels().h_right, (std::vector<W>{6, 4, 1, 0}));
}

TEST(SortedAdjacency, SameWeightOnExamples) {
    const std::vector<Graph> graphs{
        make(2, 2, {{0, 0, 5}, {0, 1, 1}, {1, 0, 2}, {1, 1, 3}}),
        make(1, 1, {{0, 0, 7}}),
        make(1, 2, {{0, 0, 4}, {0, 1, 9}}),
    };
    for (const auto& g : graphs) {
        EXPECT_EQ(solve_sorted_adjacency(g).matching.total_weight, solve_kwok(g).matching.total_weight);
    }
    EXPECT_EQ(solve_sorted_adjacency(graphs[0]).matching.total_weight, 8);
}

TEST(SortedAdjacency, SkipsRestOfListAfterUnmatchedVertex) {
    const Graph g = make(2, 3, {{0, 0, 10}, {1, 0, 10}, {1, 1, 3}, {1, 2, 2}});
    const KwokOptions<W> plain{.prune = false};
    const auto a = solve_kwok(g, plain);
    const auto b = solve_sorted_adjacency(g, plain);
    EXPECT_EQ(a.matching.total_weight, 13);
    EXPECT_EQ(b.matching.total_weight, 13);
    EXPECT_EQ(a.stats.edges_visited, b.stats.edges_visited + 1);
}

// Checks every per-augmentation property on one graph and returns the
// solution.
Solution<W> solve_checked(const Graph& g, KwokOptions<W> opt) {
    const Graph prepared = prepare_for_kwok(g, opt);
    const int nl = prepared.n_left();
    std::vector<char> was_left(static_cast<std::size_t>(nl), 0);
    std::vector<char> was_right(static_cast<std::size_t>(prepared.n_right()), 0);
    std::size_t last_size = 0;
    bool first = true;
    std::size_t events = 0;
    opt.on_augment = [&](const AugmentEvent<W>& ev) {
        ++events;
        const auto& h = ev.labels;
        std::size_t size = 0;
        for (int l = 0; l < nl; ++l) {
            if (ev.left_pair[l] != -1) ++size;
            if (was_left[l]) EXPECT_NE(ev.left_pair[l], -1) << "left " << l << " became unmatched";
            was_left[l] = ev.left_pair[l] != -1;
            if (!prepared.adj(l).empty()) EXPECT_GE(h.h_left[l], 0);
            for (const auto& nb : prepared.adj(l)) {
                EXPECT_GE(h.h_left[l] + h.h_right[nb.right], nb.weight) << "edge " << l << "," << nb.right;
            }
        }
        for (int r = 0; r < prepared.n_right(); ++r) {
            EXPECT_GE(h.h_right[r], 0);
            if (ev.right_pair[r] == -1) EXPECT_EQ(h.h_right[r], 0);
            if (was_right[r]) EXPECT_NE(ev.right_pair[r], -1) << "right " << r << " became unmatched";
            was_right[r] = ev.right_pair[r] != -1;
        }
        if (!first) EXPECT_EQ(size, last_size + 1);
        first = false;
        last_size = size;
    };
    KwokMatcher<W> m(prepared, opt);
    const Solution<W> sol = m.run();
    EXPECT_EQ(events, sol.stats.augmentations);

    // Tightness, including virtual pairs.
    for (int l = 0; l < nl; ++l) {
        const int r = m.left_pair()[l];
        if (r == -1) continue;
        if (const W* w = prepared.find(l, r)) {
            EXPECT_EQ(sol.labels.h_left[l] + sol.labels.h_right[r], *w);
        } else {
            EXPECT_EQ(sol.labels.h_left[l], 0) << "virtual pair at left " << l;
        }
    }
    const auto rep = certify(prepared, sol.matching, sol.labels);
    EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front());

    std::size_t non_isolated = 0;
    for (int l = 0; l < nl; ++l) non_isolated += prepared.adj(l).empty() ? 0 : 1;
    EXPECT_EQ(sol.stats.augmentations + sol.stats.greedy_matches, non_isolated);

    const auto L = static_cast<std::uint64_t>(nl);
    EXPECT_LE(sol.stats.max_search_h_adjustments, L);
    const std::uint64_t edge_term = opt.prune ? std::min<std::uint64_t>(L * L, prepared.n_edges()) : prepared.n_edges();
    EXPECT_LE(sol.stats.max_search_edges_visited, edge_term + L);
    return sol;
}

TEST(Properties, InvariantsAcrossOptions) {
    Rng rng(32);
    for (int t = 0; t < 300; ++t) {
        const auto [nl, nr] = testing::random_shape(rng, 9, 14);
        const double density = testing::uniform_int(rng, 1, 10) / 10.0;
        const Graph g = clean(testing::random_graph(rng, nl, nr, density, -3, 25));
        const W expected = brute_force_mwm(g).second;
        for (int mask = 0; mask < 8; ++mask) {
            KwokOptions<W> opt;
            opt.greedy = mask & 1;
            opt.prune = mask & 2;
            opt.sorted_adjacency = mask & 4;
            ASSERT_EQ(solve_checked(g, opt).matching.total_weight, expected) << "trial " << t << " mask " << mask;
        }
    }
}

TEST(Properties, LargerGraphsCertify) {
    Rng rng(33);
    for (int t = 0; t < 20; ++t) {
        const int nl = static_cast<int>(testing::uniform_int(rng, 20, 80));
        const int nr = static_cast<int>(testing::uniform_int(rng, nl, 2 * nl));
        const Graph g = clean(testing::random_graph(rng, nl, nr, 0.1, 1, nr));
        solve_checked(g, {});
        solve_checked(g, {.prune = false});
    }
}

TEST(Properties, LabelsMatchEagerVariantAfterEachAugmentation) {
    Rng rng(34);
    for (int t = 0; t < 400; ++t) {
        const int nl = static_cast<int>(testing::uniform_int(rng, 1, 30));
        const int nr = static_cast<int>(testing::uniform_int(rng, nl, 45));
        // Narrow weight ranges produce many slack ties.
        const W hi = t % 2 == 0 ? 4 : 3 * nr;
        const bool greedy = t % 4 < 2;
        const Graph g = testing::random_graph_no_isolated(rng, nl, nr, 0.15, 1, hi);

        std::vector<DualLabels<W>> kwok_trace, eager_trace;
        KwokOptions<W> ko{.greedy = greedy, .prune = false};
        ko.on_augment = [&](const AugmentEvent<W>& ev) { kwok_trace.push_back(ev.labels); };
        const auto ks = solve_kwok(g, ko);

        HungarianOptions<W> ho{.with_virtual_vertices = false, .greedy = greedy};
        ho.on_augment = [&](const AugmentEvent<W>& ev) { eager_trace.push_back(ev.labels); };
        const auto hs = hungarian_eager(DenseCostMatrix<W>::from_graph(g), ho);

        ASSERT_EQ(kwok_trace.size(), eager_trace.size()) << "trial " << t;
        for (std::size_t i = 0; i < kwok_trace.size(); ++i) {
            ASSERT_EQ(kwok_trace[i], eager_trace[i]) << "trial " << t << " augmentation " << i;
        }
        EXPECT_EQ(ks.matching.total_weight, hs.matching.total_weight);
    }
}

TEST(RealMode, MatchesScaledIntegerSolve) {
    Rng rng(35);
    for (int t = 0; t < 200; ++t) {
        const auto [nl, nr] = testing::random_shape(rng, 8, 12);
        const Graph g = clean(testing::random_graph(rng, nl, nr, 0.5, -5, 40));
        std::vector<Edge<double>> quarter;
        for (const auto& e : g.edges()) quarter.push_back({e.left, e.right, e.weight / 4.0});
        const RealGraph rg = RealGraph::build(nl, nr, quarter);
        const auto rs = solve_kwok(rg);
        EXPECT_DOUBLE_EQ(rs.matching.total_weight, brute_force_mwm(g).second / 4.0);
        const auto rep = certify(prepare_for_kwok(rg, KwokOptions<double>{}), rs.matching, rs.labels, 1e-9);
        EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front());
    }
}

TEST(RealMode, IrrationalWeightsAgreeWithOracle) {
    Rng rng(36);
    std::uniform_real_distribution<double> unit(0.01, 1.0);
    for (int t = 0; t < 200; ++t) {
        const auto [nl, nr] = testing::random_shape(rng, 7, 10);
        std::vector<Edge<double>> es;
        for (int l = 0; l < nl; ++l)
            for (int r = 0; r < nr; ++r)
                if (testing::coin(rng, 0.5)) es.push_back({l, r, unit(rng) * 3.7});
        const RealGraph g = RealGraph::build(nl, nr, es);
        const double oracle = brute_force_mwm(g).second;
        EXPECT_NEAR(solve_kwok(g).matching.total_weight, oracle, 1e-9);
        EXPECT_NEAR(solve_sorted_adjacency(g).matching.total_weight, oracle, 1e-9);
    }
}

TEST(Determinism, SameInputSameOutput) {
    Rng rng(37);
    const Graph g = clean(testing::random_graph(rng, 40, 60, 0.2, 1, 100));
    const auto a = solve_kwok(g);
    const auto b = solve_kwok(g);
    EXPECT_EQ(pair_set(a.matching), pair_set(b.matching));
    EXPECT_EQ(a.labels, b.labels);
    EXPECT_EQ(a.stats.edges_visited, b.stats.edges_visited);
}

}  // namespace
}  // namespace bimatch
