// SPDX-License-Identifier: Apache-2.0

#include "bimatch/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace bimatch {

namespace {

template <WeightType W>
std::string describe_edge(std::size_t index, const Edge<W>& e) {
    std::ostringstream os;
    os << "edge #" << index << " (" << e.left << ", " << e.right << ", " << e.weight << ")";
    return os.str();
}

}  // namespace

template <WeightType W>
BasicGraph<W> BasicGraph<W>::build(int n_left_raw, int n_right_raw, std::span<const Edge<W>> edges) {
    if (n_left_raw < 0 || n_right_raw < 0) {
        throw GraphError("bimatch: negative vertex count", -1);
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        if (e.left < 0 || e.left >= n_left_raw || e.right < 0 || e.right >= n_right_raw) {
            throw GraphError("bimatch: vertex index out of range in " + describe_edge(i, e),
                             static_cast<std::ptrdiff_t>(i));
        }
        if (!WeightTraits<W>::acceptable(e.weight)) {
            throw GraphError("bimatch: unsupported weight in " + describe_edge(i, e),
                             static_cast<std::ptrdiff_t>(i));
        }
    }

    const bool swap_sides = n_left_raw > n_right_raw;
    BasicGraph g;
    g.n_left_ = swap_sides ? n_right_raw : n_left_raw;
    g.n_right_ = swap_sides ? n_left_raw : n_right_raw;
    g.transposed_ = swap_sides;

    auto endpoints = [swap_sides](const Edge<W>& e) {
        return swap_sides ? std::pair{e.right, e.left} : std::pair{e.left, e.right};
    };

    // Counting sort by left endpoint keeps input order within each list.
    std::vector<std::size_t> count(static_cast<std::size_t>(g.n_left_) + 1, 0);
    for (const auto& e : edges) ++count[endpoints(e).first + 1];
    for (std::size_t i = 1; i < count.size(); ++i) count[i] += count[i - 1];
    std::vector<Neighbor<W>> bucketed(edges.size());
    {
        auto cursor = count;
        for (const auto& e : edges) {
            auto [l, r] = endpoints(e);
            bucketed[cursor[l]++] = Neighbor<W>{r, e.weight};
        }
    }

    // Collapse duplicates per left vertex with a slot table over R.
    std::vector<std::size_t> slot(static_cast<std::size_t>(g.n_right_), std::numeric_limits<std::size_t>::max());
    g.offsets_.assign(static_cast<std::size_t>(g.n_left_) + 1, 0);
    g.entries_.clear();
    g.entries_.reserve(edges.size());
    for (int l = 0; l < g.n_left_; ++l) {
        const std::size_t begin = g.entries_.size();
        for (std::size_t k = count[l]; k < count[l + 1]; ++k) {
            const auto& nb = bucketed[k];
            auto& s = slot[nb.right];
            if (s != std::numeric_limits<std::size_t>::max() && s >= begin) {
                g.entries_[s].weight = std::max(g.entries_[s].weight, nb.weight);
            } else {
                s = g.entries_.size();
                g.entries_.push_back(nb);
            }
        }
        g.offsets_[l + 1] = g.entries_.size();
    }
    return g;
}

template <WeightType W>
BasicGraph<W> BasicGraph<W>::from_adjacency(int n_left, int n_right,
                                            const std::vector<std::vector<Neighbor<W>>>& adjacency,
                                            bool transposed) {
    BasicGraph g;
    g.n_left_ = n_left;
    g.n_right_ = n_right;
    g.transposed_ = transposed;
    g.offsets_.assign(static_cast<std::size_t>(n_left) + 1, 0);
    for (int l = 0; l < n_left; ++l) {
        if (static_cast<std::size_t>(l) < adjacency.size()) {
            g.entries_.insert(g.entries_.end(), adjacency[l].begin(), adjacency[l].end());
        }
        g.offsets_[l + 1] = g.entries_.size();
    }
    return g;
}

template <WeightType W>
std::vector<Edge<W>> BasicGraph<W>::edges() const {
    std::vector<Edge<W>> out;
    out.reserve(entries_.size());
    for (int l = 0; l < n_left_; ++l) {
        for (const auto& nb : adj(l)) out.push_back({l, nb.right, nb.weight});
    }
    return out;
}

template <WeightType W>
W BasicGraph<W>::max_abs_weight() const noexcept {
    W best{};
    for (const auto& nb : entries_) {
        const W a = nb.weight < W{} ? -nb.weight : nb.weight;
        best = std::max(best, a);
    }
    return best;
}

template <WeightType W>
const W* BasicGraph<W>::find(int l, int r) const noexcept {
    for (const auto& nb : adj(l)) {
        if (nb.right == r) return &nb.weight;
    }
    return nullptr;
}

namespace {

template <WeightType W>
std::vector<std::vector<Neighbor<W>>> adjacency_of(const BasicGraph<W>& g) {
    std::vector<std::vector<Neighbor<W>>> adj(static_cast<std::size_t>(g.n_left()));
    for (int l = 0; l < g.n_left(); ++l) adj[l].assign(g.adj(l).begin(), g.adj(l).end());
    return adj;
}

}  // namespace

template <WeightType W>
BasicGraph<W> clean(const BasicGraph<W>& g) {
    auto adj = adjacency_of(g);
    for (auto& list : adj) {
        std::erase_if(list, [](const Neighbor<W>& nb) { return !(nb.weight > W{}); });
    }
    return BasicGraph<W>::from_adjacency(g.n_left(), g.n_right(), adj, g.transposed());
}

template <WeightType W>
BasicGraph<W> prune_top_l(const BasicGraph<W>& g) {
    const auto keep = static_cast<std::size_t>(g.n_left());
    auto adj = adjacency_of(g);
    for (auto& list : adj) {
        if (list.size() <= keep) continue;
        std::nth_element(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(keep) - 1, list.end(),
                         [](const Neighbor<W>& a, const Neighbor<W>& b) { return a.weight > b.weight; });
        list.resize(keep);
    }
    return BasicGraph<W>::from_adjacency(g.n_left(), g.n_right(), adj, g.transposed());
}

template <WeightType W>
BasicGraph<W> sort_adjacency_descending(const BasicGraph<W>& g) {
    auto adj = adjacency_of(g);
    for (auto& list : adj) {
        std::stable_sort(list.begin(), list.end(),
                         [](const Neighbor<W>& a, const Neighbor<W>& b) { return a.weight > b.weight; });
    }
    return BasicGraph<W>::from_adjacency(g.n_left(), g.n_right(), adj, g.transposed());
}

template <WeightType W>
BasicGraph<W> transpose(const BasicGraph<W>& g) {
    std::vector<std::vector<Neighbor<W>>> adj(static_cast<std::size_t>(g.n_right()));
    for (int l = 0; l < g.n_left(); ++l) {
        for (const auto& nb : g.adj(l)) adj[nb.right].push_back({l, nb.weight});
    }
    return BasicGraph<W>::from_adjacency(g.n_right(), g.n_left(), adj, !g.transposed());
}

template <WeightType W>
std::vector<Diagnostic> validate(const BasicGraph<W>& g) {
    std::vector<Diagnostic> out;
    if (g.n_left() > g.n_right()) {
        out.push_back({Diagnostic::Kind::SideOrder, -1, -1, "n_left exceeds n_right"});
    }
    std::vector<int> last_seen(static_cast<std::size_t>(std::max(g.n_right(), 0)), -1);
    for (int l = 0; l < g.n_left(); ++l) {
        for (const auto& nb : g.adj(l)) {
            if (nb.right < 0 || nb.right >= g.n_right()) {
                out.push_back({Diagnostic::Kind::RangeViolation, l, nb.right,
                               "right index " + std::to_string(nb.right) + " outside [0, " +
                                   std::to_string(g.n_right()) + ")"});
                continue;
            }
            if (last_seen[nb.right] == l) {
                out.push_back({Diagnostic::Kind::Duplicate, l, nb.right,
                               "duplicate edge (" + std::to_string(l) + ", " + std::to_string(nb.right) + ")"});
            }
            last_seen[nb.right] = l;
        }
    }
    return out;
}

template <WeightType W>
Matching<W> to_input_orientation(const Matching<W>& m, const BasicGraph<W>& g) {
    if (!g.transposed()) return m;
    Matching<W> out = m;
    for (auto& p : out.pairs) std::swap(p.left, p.right);
    std::sort(out.pairs.begin(), out.pairs.end(),
              [](const MatchedPair<W>& a, const MatchedPair<W>& b) { return a.left < b.left; });
    return out;
}

template <WeightType W>
bool is_matching_of(const Matching<W>& m, const BasicGraph<W>& g) {
    std::vector<char> left_used(static_cast<std::size_t>(g.n_left()), 0);
    std::vector<char> right_used(static_cast<std::size_t>(g.n_right()), 0);
    W total{};
    for (const auto& p : m.pairs) {
        if (p.left < 0 || p.left >= g.n_left() || p.right < 0 || p.right >= g.n_right()) return false;
        if (left_used[p.left] || right_used[p.right]) return false;
        left_used[p.left] = right_used[p.right] = 1;
        const W* w = g.find(p.left, p.right);
        if (w == nullptr || *w != p.weight) return false;
        total += p.weight;
    }
    if constexpr (WeightTraits<W>::exact) {
        return total == m.total_weight;
    } else {
        return std::fabs(total - m.total_weight) <= 1e-9 * std::max(1.0, std::fabs(total));
    }
}

#define BIMATCH_INSTANTIATE(W)                                                              \
    template class BasicGraph<W>;                                                           \
    template BasicGraph<W> clean(const BasicGraph<W>&);                                     \
    template BasicGraph<W> prune_top_l(const BasicGraph<W>&);                               \
    template BasicGraph<W> sort_adjacency_descending(const BasicGraph<W>&);                 \
    template BasicGraph<W> transpose(const BasicGraph<W>&);                                 \
    template std::vector<Diagnostic> validate(const BasicGraph<W>&);                        \
    template Matching<W> to_input_orientation(const Matching<W>&, const BasicGraph<W>&);    \
    template bool is_matching_of(const Matching<W>&, const BasicGraph<W>&);

BIMATCH_INSTANTIATE(std::int64_t)
BIMATCH_INSTANTIATE(double)

#undef BIMATCH_INSTANTIATE

}  // namespace bimatch
