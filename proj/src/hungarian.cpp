// SPDX-License-Identifier: Apache-2.0

#include "bimatch/hungarian.hpp"

#include <algorithm>
#include <stdexcept>

namespace bimatch {

template <WeightType W>
DenseCostMatrix<W>::DenseCostMatrix(int n_left, int n_right)
    : n_left_(n_left), n_right_(n_right), data_(static_cast<std::size_t>(n_left) * n_right, W{}) {
    if (n_left > n_right) throw std::invalid_argument("bimatch: dense matrix needs n_left <= n_right");
}

template <WeightType W>
DenseCostMatrix<W> DenseCostMatrix<W>::from_graph(const BasicGraph<W>& g) {
    DenseCostMatrix m(g.n_left(), g.n_right());
    for (int l = 0; l < g.n_left(); ++l) {
        for (const auto& nb : g.adj(l)) {
            if (nb.weight > W{}) m.set(l, nb.right, nb.weight);
        }
    }
    return m;
}

namespace {

template <WeightType W>
class EagerHungarian {
public:
    EagerHungarian(const DenseCostMatrix<W>& m, const HungarianOptions<W>& opt)
        : m_(m),
          opt_(opt),
          rows_(opt.with_virtual_vertices ? m.n_right() : m.n_left()),
          cols_(m.n_right()) {
        if constexpr (!WeightTraits<W>::exact) {
            W biggest{};
            for (int l = 0; l < m.n_left(); ++l)
                for (int r = 0; r < cols_; ++r) biggest = std::max(biggest, m.at(l, r));
            eps_ = opt.tolerance ? *opt.tolerance : default_tolerance(biggest);
        }
        h_left_.assign(static_cast<std::size_t>(rows_), W{});
        h_right_.assign(static_cast<std::size_t>(cols_), W{});
        left_pair_.assign(static_cast<std::size_t>(rows_), -1);
        right_pair_.assign(static_cast<std::size_t>(cols_), -1);
        parent_.assign(static_cast<std::size_t>(cols_), -1);
        slack_.assign(static_cast<std::size_t>(cols_), WeightTraits<W>::infinity());
        visited_left_.assign(static_cast<std::size_t>(rows_), 0);
        visited_right_.assign(static_cast<std::size_t>(cols_), 0);
    }

    Solution<W> run() {
        for (int l = 0; l < rows_; ++l) {
            W best{};
            for (int r = 0; r < cols_; ++r) best = r == 0 ? weight(l, r) : std::max(best, weight(l, r));
            h_left_[l] = best;
        }

        if (opt_.greedy) {
            for (int l = 0; l < rows_; ++l) {
                for (int r = 0; r < cols_; ++r) {
                    if (right_pair_[r] == -1 && is_zero(h_left_[l] + h_right_[r] - weight(l, r))) {
                        left_pair_[l] = r;
                        right_pair_[r] = l;
                        ++stats_.greedy_matches;
                        break;
                    }
                }
            }
        }

        for (int l = 0; l < rows_; ++l) {
            if (left_pair_[l] != -1) continue;
            for (int v : tree_left_) visited_left_[v] = 0;
            tree_left_.clear();
            std::fill(slack_.begin(), slack_.end(), WeightTraits<W>::infinity());
            std::fill(visited_right_.begin(), visited_right_.end(), 0);
            queue_.clear();
            head_ = 0;
            queue_.push_back(l);
            visited_left_[l] = 1;
            tree_left_.push_back(l);
            search_edges_ = 0;
            search_adjustments_ = 0;

            bfs();

            ++stats_.searches;
            stats_.edges_visited += search_edges_;
            stats_.max_search_edges_visited = std::max(stats_.max_search_edges_visited, search_edges_);
            stats_.max_search_h_adjustments = std::max(stats_.max_search_h_adjustments, search_adjustments_);
            if (opt_.on_augment) {
                DualLabels<W> snapshot = labels();
                std::vector<int> real_left(left_pair_.begin(), left_pair_.begin() + m_.n_left());
                opt_.on_augment(AugmentEvent<W>{snapshot, real_left, right_pair_});
            }
        }

        Solution<W> out;
        for (int l = 0; l < m_.n_left(); ++l) {
            const int r = left_pair_[l];
            if (r == -1) continue;
            const W w = m_.at(l, r);
            if (!(w > W{})) continue;
            out.matching.pairs.push_back({l, r, w});
            out.matching.total_weight = checked_add(out.matching.total_weight, w);
        }
        out.labels = labels();
        out.stats = stats_;
        return out;
    }

private:
    W weight(int l, int r) const noexcept { return l < m_.n_left() ? m_.at(l, r) : W{}; }
    bool is_zero(W x) const { return WeightTraits<W>::is_zero(x, eps_); }

    DualLabels<W> labels() const {
        DualLabels<W> out;
        out.h_left.assign(h_left_.begin(), h_left_.begin() + m_.n_left());
        out.h_right = h_right_;
        return out;
    }

    void bfs() {
        while (true) {
            while (head_ < queue_.size()) {
                const int l = queue_[head_++];
                for (int r = 0; r < cols_; ++r) {
                    ++search_edges_;
                    if (visited_right_[r]) continue;
                    const W d = h_left_[l] + h_right_[r] - weight(l, r);
                    if (is_zero(d)) {
                        parent_[r] = l;
                        if (advance(r)) return;
                    } else if (slack_[r] > d) {
                        slack_[r] = d;
                        parent_[r] = l;
                    }
                }
            }

            ++stats_.h_adjustments;
            ++search_adjustments_;
            W delta = WeightTraits<W>::infinity();
            for (int r = 0; r < cols_; ++r) {
                if (!visited_right_[r]) delta = std::min(delta, slack_[r]);
            }
            if (delta == WeightTraits<W>::infinity()) {
                throw std::logic_error("bimatch: search tree cannot grow");
            }
            for (int l : tree_left_) h_left_[l] -= delta;
            for (int r = 0; r < cols_; ++r) {
                if (visited_right_[r]) {
                    h_right_[r] += delta;
                } else {
                    slack_[r] -= delta;
                }
            }
            for (int r = 0; r < cols_; ++r) {
                if (!visited_right_[r] && is_zero(slack_[r]) && advance(r)) return;
            }
        }
    }

    bool advance(int r) {
        visited_right_[r] = 1;
        const int partner = right_pair_[r];
        if (partner != -1) {
            queue_.push_back(partner);
            visited_left_[partner] = 1;
            tree_left_.push_back(partner);
            return false;
        }
        for (int cur = r; cur != -1;) {
            const int l = parent_[cur];
            const int prev = left_pair_[l];
            left_pair_[l] = cur;
            right_pair_[cur] = l;
            cur = prev;
        }
        ++stats_.augmentations;
        return true;
    }

    const DenseCostMatrix<W>& m_;
    const HungarianOptions<W>& opt_;
    int rows_;
    int cols_;
    W eps_{};
    std::vector<W> h_left_, h_right_, slack_;
    std::vector<int> left_pair_, right_pair_, parent_;
    std::vector<char> visited_left_, visited_right_;
    std::vector<int> tree_left_;
    std::vector<int> queue_;
    std::size_t head_ = 0;
    SolveStats stats_;
    std::uint64_t search_edges_ = 0;
    std::uint64_t search_adjustments_ = 0;
};

}  // namespace

template <WeightType W>
Solution<W> hungarian_eager(const DenseCostMatrix<W>& m, const HungarianOptions<W>& options) {
    return EagerHungarian<W>(m, options).run();
}

template class DenseCostMatrix<std::int64_t>;
template class DenseCostMatrix<double>;
template Solution<std::int64_t> hungarian_eager(const DenseCostMatrix<std::int64_t>&,
                                                const HungarianOptions<std::int64_t>&);
template Solution<double> hungarian_eager(const DenseCostMatrix<double>&, const HungarianOptions<double>&);

}  // namespace bimatch
