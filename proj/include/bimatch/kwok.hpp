// SPDX-License-Identifier: Apache-2.0
//
// Extended non-line-covering Hungarian matcher for maximum weight bipartite
// matching on sparse graphs, worst case O(min(L^3 + E, LE + L^2 log L)).
//
// Differences from the textbook Hungarian search:
//  * no virtual vertices and no virtual edges: every missing edge is stood in
//    for by a single zero-weight edge to the first unmatched right vertex r';
//  * matched right vertices outside the search tree wait in an addressable
//    heap keyed by their offset slack (slack + accumulated delta);
//  * label adjustments are deferred to the end of each search and applied
//    with suffix sums of the recorded deltas, keyed by the stage at which
//    each vertex joined the tree.
//
// Slack ties (choice of r*, heap order) are broken by the lower right index,
// which makes the search follow exactly the same trajectory as the eager
// dense variant in hungarian.hpp when adjacency lists are in index order.

#ifndef BIMATCH_KWOK_HPP
#define BIMATCH_KWOK_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bimatch/graph.hpp"
#include "bimatch/pairing_heap.hpp"
#include "bimatch/solution.hpp"

namespace bimatch {

class UncleanGraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a label or slack falls below zero by more than the tolerance.
class FeasibilityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

#ifdef NDEBUG
inline constexpr bool kDebugChecksDefault = false;
#else
inline constexpr bool kDebugChecksDefault = true;
#endif

template <WeightType W>
struct KwokOptions {
    bool greedy = true;             // initial greedy matching on tight edges
    bool prune = true;              // keep only the top-|L| edges per left vertex
    bool sorted_adjacency = false;  // heaviest-first adjacency with early cut-off
    std::optional<double> tolerance;  // real mode only; default 1e-9 * max|w|
    bool debug_checks = kDebugChecksDefault;
    AugmentObserver<W> on_augment;
};

/// Per-search scratch. Entries outside the tree hold nil (-1) stages and an
/// infinite slack'. The frontier holds matched right vertices outside the
/// tree, keyed by (slack', index).
template <WeightType W>
struct SearchState {
    using FrontierKey = std::pair<W, int>;
    using Frontier = PairingHeap<int, FrontierKey>;

    std::vector<W> slack_prime;
    std::vector<int> parent;
    std::vector<int> stage_left;
    std::vector<int> stage_right;
    std::vector<HeapHandle> frontier_handle;
    Frontier frontier;
    std::vector<int> queue;
    std::size_t queue_head = 0;
    std::vector<W> delta_list;
    W delta_sum{};
    int stage = 0;
    int r_star = -1;
    int r_first_unmatched = -1;

    // Vertices currently in the tree, in the order they joined.
    std::vector<int> left_in_tree;
    std::vector<int> right_in_tree;
    // Right vertices whose slack'/parent/stage/handle were written.
    std::vector<int> right_touched;
    std::vector<char> right_dirty;
};

template <WeightType W>
class KwokMatcher {
public:
    /// `g` must outlive the matcher and must already be prepared (cleaned,
    /// optionally pruned and sorted); see prepare_for_kwok().
    KwokMatcher(const BasicGraph<W>& g, KwokOptions<W> options = {});

    /// h_left[l] = max incident weight (0 when l is isolated), h_right = 0.
    void init_labels();

    /// First-fit matching along tight edges in adjacency order. Returns the
    /// number of pairs formed.
    std::size_t greedy_init();

    /// Resets the search state for a new root and locates r'.
    void begin_search(int root);

    /// Grows the tree from the queued vertices until an augmenting path is
    /// applied.
    void bfs();

    /// One stage step: computes delta, and either reaches r* (returns true,
    /// path applied) or pulls every zero-slack frontier vertex into the tree.
    bool introduce();

    /// Puts r into the tree. If r is matched its partner is queued and false
    /// is returned; otherwise the path ending at r is applied, labels are
    /// brought up to date, and true is returned.
    bool advance(int r);

    /// Applies the postponed label changes with suffix sums of the delta list.
    void deferred_h_update();

    /// Whole solve: labels, greedy pass, one search per unmatched left vertex.
    Solution<W> run();

    /// Pairs that are real edges of the graph (virtual pairs dropped).
    Matching<W> matching() const;

    /// Records (l, r) as a pair. For tests that stage a search by hand.
    void match(int l, int r);

    const BasicGraph<W>& graph() const noexcept { return g_; }
    DualLabels<W>& labels() noexcept { return labels_; }
    const DualLabels<W>& labels() const noexcept { return labels_; }
    SearchState<W>& state() noexcept { return st_; }
    const SearchState<W>& state() const noexcept { return st_; }
    SolveStats& stats() noexcept { return stats_; }
    const SolveStats& stats() const noexcept { return stats_; }
    const std::vector<int>& left_pair() const noexcept { return left_pair_; }
    const std::vector<int>& right_pair() const noexcept { return right_pair_; }

    /// Edges visited and deltas computed by the most recent search.
    std::uint64_t last_search_edges() const noexcept { return search_edges_; }
    std::uint64_t last_search_adjustments() const noexcept { return search_adjustments_; }

private:
    void touch_right(int r);
    bool slack_less(int a, int b) const;
    bool is_zero(W x) const;
    void check_nonnegative(W x, const char* what) const;

    const BasicGraph<W>& g_;
    KwokOptions<W> opt_;
    W eps_{};
    DualLabels<W> labels_;
    std::vector<int> left_pair_;
    std::vector<int> right_pair_;
    SearchState<W> st_;
    SolveStats stats_;
    std::vector<W> suffix_;
    int unmatched_cursor_ = 0;
    std::uint64_t search_edges_ = 0;
    std::uint64_t search_adjustments_ = 0;
};

/// Rejects graphs with non-positive weights, then applies the optional
/// pruning and sorting passes selected in `options`.
template <WeightType W>
BasicGraph<W> prepare_for_kwok(const BasicGraph<W>& g, const KwokOptions<W>& options);

/// Maximum weight matching of a cleaned graph.
template <WeightType W>
Solution<W> solve_kwok(const BasicGraph<W>& g, const KwokOptions<W>& options = {});

/// solve_kwok with heaviest-first adjacency lists and the early cut-off.
template <WeightType W>
Solution<W> solve_sorted_adjacency(const BasicGraph<W>& g, KwokOptions<W> options = {});

}  // namespace bimatch

#endif  // BIMATCH_KWOK_HPP
