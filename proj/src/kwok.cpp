// SPDX-License-Identifier: Apache-2.0

#include "bimatch/kwok.hpp"

#include <algorithm>
#include <string>

namespace bimatch {

template <WeightType W>
KwokMatcher<W>::KwokMatcher(const BasicGraph<W>& g, KwokOptions<W> options) : g_(g), opt_(std::move(options)) {
    const auto nl = static_cast<std::size_t>(g_.n_left());
    const auto nr = static_cast<std::size_t>(g_.n_right());
    if (g_.n_left() > g_.n_right()) {
        throw std::invalid_argument("bimatch: graph must satisfy n_left <= n_right");
    }
    if constexpr (!WeightTraits<W>::exact) {
        eps_ = opt_.tolerance ? *opt_.tolerance : default_tolerance(g_.max_abs_weight());
    }
    labels_.h_left.assign(nl, W{});
    labels_.h_right.assign(nr, W{});
    left_pair_.assign(nl, -1);
    right_pair_.assign(nr, -1);
    st_.slack_prime.assign(nr, WeightTraits<W>::infinity());
    st_.parent.assign(nr, -1);
    st_.stage_left.assign(nl, -1);
    st_.stage_right.assign(nr, -1);
    st_.frontier_handle.assign(nr, HeapHandle{});
    st_.right_dirty.assign(nr, 0);
    st_.delta_list.reserve(nl);
    st_.queue.reserve(nl);
    suffix_.reserve(nl);
}

template <WeightType W>
bool KwokMatcher<W>::is_zero(W x) const {
    return WeightTraits<W>::is_zero(x, eps_);
}

template <WeightType W>
void KwokMatcher<W>::check_nonnegative(W x, const char* what) const {
    if (WeightTraits<W>::is_negative(x, eps_)) {
        throw FeasibilityError(std::string("bimatch: negative ") + what + " during search");
    }
}

template <WeightType W>
void KwokMatcher<W>::touch_right(int r) {
    if (!st_.right_dirty[r]) {
        st_.right_dirty[r] = 1;
        st_.right_touched.push_back(r);
    }
}

template <WeightType W>
bool KwokMatcher<W>::slack_less(int a, int b) const {
    const W sa = st_.slack_prime[a];
    const W sb = st_.slack_prime[b];
    return sa < sb || (sa == sb && a < b);
}

template <WeightType W>
void KwokMatcher<W>::match(int l, int r) {
    left_pair_[l] = r;
    right_pair_[r] = l;
}

template <WeightType W>
void KwokMatcher<W>::init_labels() {
    for (int l = 0; l < g_.n_left(); ++l) {
        W best{};
        bool first = true;
        for (const auto& nb : g_.adj(l)) {
            if (first || nb.weight > best) best = nb.weight;
            first = false;
        }
        labels_.h_left[l] = best;
    }
    std::fill(labels_.h_right.begin(), labels_.h_right.end(), W{});
}

template <WeightType W>
std::size_t KwokMatcher<W>::greedy_init() {
    std::size_t formed = 0;
    for (int l = 0; l < g_.n_left(); ++l) {
        if (left_pair_[l] != -1) continue;
        for (const auto& nb : g_.adj(l)) {
            if (right_pair_[nb.right] == -1 &&
                is_zero(labels_.h_left[l] + labels_.h_right[nb.right] - nb.weight)) {
                match(l, nb.right);
                ++formed;
                break;
            }
        }
    }
    stats_.greedy_matches += formed;
    return formed;
}

template <WeightType W>
void KwokMatcher<W>::begin_search(int root) {
    // Only entries written by the previous search can be non-nil.
    for (int r : st_.right_touched) {
        st_.slack_prime[r] = WeightTraits<W>::infinity();
        st_.parent[r] = -1;
        st_.stage_right[r] = -1;
        st_.frontier_handle[r] = HeapHandle{};
        st_.right_dirty[r] = 0;
    }
    st_.right_touched.clear();
    for (int l : st_.left_in_tree) st_.stage_left[l] = -1;
    st_.left_in_tree.clear();
    st_.right_in_tree.clear();
    st_.frontier.clear();
    st_.queue.clear();
    st_.queue_head = 0;
    st_.delta_list.clear();
    st_.delta_sum = W{};
    st_.stage = 0;

    // Matched right vertices never become unmatched, so the cursor only moves
    // forward over the whole solve.
    while (unmatched_cursor_ < g_.n_right() && right_pair_[unmatched_cursor_] != -1) ++unmatched_cursor_;
    if (unmatched_cursor_ >= g_.n_right()) {
        throw std::logic_error("bimatch: no unmatched right vertex left for a search");
    }
    st_.r_first_unmatched = unmatched_cursor_;
    st_.r_star = unmatched_cursor_;

    st_.stage_left[root] = 0;
    st_.left_in_tree.push_back(root);
    st_.queue.push_back(root);
    search_edges_ = 0;
    search_adjustments_ = 0;
}

template <WeightType W>
void KwokMatcher<W>::bfs() {
    const int r_first = st_.r_first_unmatched;
    while (true) {
        while (st_.queue_head < st_.queue.size()) {
            const int l = st_.queue[st_.queue_head++];
            const W hl = labels_.h_left[l];
            if (opt_.debug_checks && st_.stage_left[l] != st_.stage) {
                // A stale label would be read here if l were from an older stage.
                throw std::logic_error("bimatch: dequeued vertex is not from the current stage");
            }

            // Zero-weight stand-in edge (l, r'): tight exactly when h_left[l] = 0.
            ++search_edges_;
            if (is_zero(hl)) {
                touch_right(r_first);
                st_.parent[r_first] = l;
                advance(r_first);
                return;
            }
            const W via_virtual = hl + st_.delta_sum;
            if (st_.slack_prime[r_first] > via_virtual) {
                touch_right(r_first);
                st_.slack_prime[r_first] = via_virtual;
                st_.parent[r_first] = l;
            }
            if (slack_less(r_first, st_.r_star)) st_.r_star = r_first;

            for (const auto& nb : g_.adj(l)) {
                ++search_edges_;
                const int r = nb.right;
                if (st_.stage_right[r] != -1) continue;

                const W d = hl + labels_.h_right[r] - nb.weight;
                if (opt_.debug_checks) check_nonnegative(d, "slack");
                if (is_zero(d)) {
                    touch_right(r);
                    st_.parent[r] = l;
                    if (advance(r)) return;
                    continue;
                }
                const W offset = d + st_.delta_sum;
                if (st_.slack_prime[r] > offset) {
                    touch_right(r);
                    st_.slack_prime[r] = offset;
                    st_.parent[r] = l;
                    if (right_pair_[r] == -1) {
                        if (slack_less(r, st_.r_star)) st_.r_star = r;
                    } else if (st_.frontier.contains(st_.frontier_handle[r])) {
                        st_.frontier.decrease_key(st_.frontier_handle[r], {offset, r});
                        ++stats_.heap_decreases;
                    } else {
                        st_.frontier_handle[r] = st_.frontier.insert(r, {offset, r});
                        ++stats_.heap_inserts;
                    }
                }
                // With heaviest-first lists, every later neighbour has at least
                // this slack, so the unmatched r dominates them.
                if (opt_.sorted_adjacency && right_pair_[r] == -1) break;
            }
        }
        if (introduce()) return;
    }
}

template <WeightType W>
bool KwokMatcher<W>::introduce() {
    ++st_.stage;
    ++stats_.h_adjustments;
    ++search_adjustments_;

    W delta = st_.slack_prime[st_.r_star] - st_.delta_sum;
    if (!st_.frontier.empty()) {
        delta = std::min(delta, st_.frontier.min_key().first - st_.delta_sum);
    }
    if constexpr (WeightTraits<W>::exact) {
        if (opt_.debug_checks && delta <= 0) {
            throw FeasibilityError("bimatch: non-positive delta in integer mode");
        }
    } else {
        check_nonnegative(delta, "delta");
        if (delta < W{}) delta = W{};
    }
    st_.delta_list.push_back(delta);
    st_.delta_sum += delta;

    if (is_zero(st_.slack_prime[st_.r_star] - st_.delta_sum)) {
        advance(st_.r_star);
        return true;
    }
    while (!st_.frontier.empty() && is_zero(st_.frontier.min_key().first - st_.delta_sum)) {
        const auto [r, key] = st_.frontier.extract_min();
        ++stats_.heap_extracts;
        st_.frontier_handle[r] = HeapHandle{};
        advance(r);  // r is matched: never completes a path
    }
    return false;
}

template <WeightType W>
bool KwokMatcher<W>::advance(int r) {
    touch_right(r);
    st_.stage_right[r] = st_.stage;
    st_.right_in_tree.push_back(r);
    if (st_.frontier.contains(st_.frontier_handle[r])) {
        st_.frontier.erase(st_.frontier_handle[r]);
        ++stats_.heap_deletes;
    }
    st_.frontier_handle[r] = HeapHandle{};

    const int partner = right_pair_[r];
    if (partner != -1) {
        st_.queue.push_back(partner);
        st_.stage_left[partner] = st_.stage;
        st_.left_in_tree.push_back(partner);
        return false;
    }

    // Flip the alternating path back to the root.
    for (int cur = r; cur != -1;) {
        const int l = st_.parent[cur];
        const int prev = left_pair_[l];
        left_pair_[l] = cur;
        right_pair_[cur] = l;
        cur = prev;
    }
    ++stats_.augmentations;
    deferred_h_update();
    return true;
}

template <WeightType W>
void KwokMatcher<W>::deferred_h_update() {
    const auto& delta = st_.delta_list;
    if (delta.empty()) return;
    suffix_.assign(delta.begin(), delta.end());
    for (std::size_t j = suffix_.size() - 1; j-- > 0;) suffix_[j] += suffix_[j + 1];

    const int now = st_.stage;
    for (int l : st_.left_in_tree) {
        const int s = st_.stage_left[l];
        if (s != now) labels_.h_left[l] -= suffix_[s];
    }
    for (int r : st_.right_in_tree) {
        const int s = st_.stage_right[r];
        if (s != now) labels_.h_right[r] += suffix_[s];
    }
}

template <WeightType W>
Matching<W> KwokMatcher<W>::matching() const {
    Matching<W> m;
    for (int l = 0; l < g_.n_left(); ++l) {
        const int r = left_pair_[l];
        if (r == -1) continue;
        if (const W* w = g_.find(l, r)) {
            m.pairs.push_back({l, r, *w});
            m.total_weight = checked_add(m.total_weight, *w);
        }
    }
    return m;
}

template <WeightType W>
Solution<W> KwokMatcher<W>::run() {
    init_labels();
    if (opt_.greedy) greedy_init();

    const auto n_left = static_cast<std::uint64_t>(g_.n_left());
    for (int l = 0; l < g_.n_left(); ++l) {
        if (left_pair_[l] != -1 || g_.adj(l).empty()) continue;
        begin_search(l);
        bfs();
        ++stats_.searches;
        stats_.edges_visited += search_edges_;
        stats_.max_search_edges_visited = std::max(stats_.max_search_edges_visited, search_edges_);
        stats_.max_search_h_adjustments = std::max(stats_.max_search_h_adjustments, search_adjustments_);
        if (opt_.debug_checks && search_adjustments_ > n_left) {
            throw std::logic_error("bimatch: more label adjustments in one search than left vertices");
        }
        if (opt_.on_augment) {
            opt_.on_augment(AugmentEvent<W>{labels_, left_pair_, right_pair_});
        }
    }
    return Solution<W>{matching(), labels_, stats_};
}

template <WeightType W>
BasicGraph<W> prepare_for_kwok(const BasicGraph<W>& g, const KwokOptions<W>& options) {
    for (int l = 0; l < g.n_left(); ++l) {
        for (const auto& nb : g.adj(l)) {
            if (!(nb.weight > W{})) {
                throw UncleanGraphError("bimatch: graph contains a non-positive weight on edge (" +
                                        std::to_string(l) + ", " + std::to_string(nb.right) +
                                        "); call clean() first");
            }
        }
    }
    if (g.n_left() > g.n_right()) {
        throw std::invalid_argument("bimatch: graph must satisfy n_left <= n_right");
    }
    BasicGraph<W> out = options.prune ? prune_top_l(g) : g;
    if (options.sorted_adjacency) out = sort_adjacency_descending(out);
    return out;
}

template <WeightType W>
Solution<W> solve_kwok(const BasicGraph<W>& g, const KwokOptions<W>& options) {
    const BasicGraph<W> prepared = prepare_for_kwok(g, options);
    KwokMatcher<W> matcher(prepared, options);
    return matcher.run();
}

template <WeightType W>
Solution<W> solve_sorted_adjacency(const BasicGraph<W>& g, KwokOptions<W> options) {
    options.sorted_adjacency = true;
    return solve_kwok(g, options);
}

template class KwokMatcher<std::int64_t>;
template class KwokMatcher<double>;
template BasicGraph<std::int64_t> prepare_for_kwok(const BasicGraph<std::int64_t>&, const KwokOptions<std::int64_t>&);
template BasicGraph<double> prepare_for_kwok(const BasicGraph<double>&, const KwokOptions<double>&);
template Solution<std::int64_t> solve_kwok(const BasicGraph<std::int64_t>&, const KwokOptions<std::int64_t>&);
template Solution<double> solve_kwok(const BasicGraph<double>&, const KwokOptions<double>&);
template Solution<std::int64_t> solve_sorted_adjacency(const BasicGraph<std::int64_t>&, KwokOptions<std::int64_t>);
template Solution<double> solve_sorted_adjacency(const BasicGraph<double>&, KwokOptions<double>);

}  // namespace bimatch
