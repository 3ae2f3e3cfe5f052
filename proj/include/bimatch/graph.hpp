// SPDX-License-Identifier: Apache-2.0
//
// Weighted bipartite graph in compressed adjacency form.
//
// Vertices on each side are 0-based indices. After construction the graph is
// normalized so that n_left() <= n_right(); if the caller supplied the sides the
// other way round, they are swapped and transposed() reports it. Graphs are
// immutable: clean() and prune_top_l() return new graphs.

#ifndef BIMATCH_GRAPH_HPP
#define BIMATCH_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bimatch/weight.hpp"

namespace bimatch {

template <WeightType W>
struct Edge {
    int left = 0;
    int right = 0;
    W weight{};

    friend bool operator==(const Edge&, const Edge&) = default;
};

template <WeightType W>
struct Neighbor {
    int right = 0;
    W weight{};

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Raised by build() for malformed input. Carries the offending edge position.
class GraphError : public std::invalid_argument {
public:
    GraphError(const std::string& what, std::ptrdiff_t edge_index)
        : std::invalid_argument(what), edge_index_(edge_index) {}

    /// Position of the offending edge in the input sequence, or -1.
    std::ptrdiff_t edge_index() const noexcept { return edge_index_; }

private:
    std::ptrdiff_t edge_index_;
};

template <WeightType W>
class BasicGraph {
public:
    using weight_type = W;

    BasicGraph() : offsets_(1, 0) {}

    /// Builds a normalized graph. Duplicate (l, r) entries collapse to the
    /// maximum weight; the first occurrence fixes the adjacency position.
    /// Sides are swapped when n_left_raw > n_right_raw.
    static BasicGraph build(int n_left_raw, int n_right_raw, std::span<const Edge<W>> edges);

    /// Unchecked construction from per-left adjacency lists. Used by the
    /// graph transformations and by tests that need malformed graphs.
    static BasicGraph from_adjacency(int n_left, int n_right,
                                     const std::vector<std::vector<Neighbor<W>>>& adjacency,
                                     bool transposed = false);

    int n_left() const noexcept { return n_left_; }
    int n_right() const noexcept { return n_right_; }
    bool transposed() const noexcept { return transposed_; }
    std::size_t n_edges() const noexcept { return entries_.size(); }

    std::span<const Neighbor<W>> adj(int l) const noexcept {
        return {entries_.data() + offsets_[l], entries_.data() + offsets_[l + 1]};
    }

    /// All edges in adjacency order, normalized orientation.
    std::vector<Edge<W>> edges() const;

    W max_abs_weight() const noexcept;

    /// Weight of edge (l, r) if present. Linear in deg(l).
    const W* find(int l, int r) const noexcept;

private:
    int n_left_ = 0;
    int n_right_ = 0;
    bool transposed_ = false;
    std::vector<std::size_t> offsets_;
    std::vector<Neighbor<W>> entries_;
};

using Graph = BasicGraph<std::int64_t>;
using RealGraph = BasicGraph<double>;

/// Drops every edge with weight <= 0. Vertex counts are unchanged.
template <WeightType W>
BasicGraph<W> clean(const BasicGraph<W>& g);

/// Keeps only the n_left heaviest edges of each left vertex whose degree
/// exceeds n_left (selection, not sorting; ties broken arbitrarily). The
/// maximum matching weight is unchanged.
template <WeightType W>
BasicGraph<W> prune_top_l(const BasicGraph<W>& g);

/// Stable sort of every adjacency list by weight, heaviest first.
template <WeightType W>
BasicGraph<W> sort_adjacency_descending(const BasicGraph<W>& g);

/// Returns a copy with sides exchanged (and the transposed flag flipped).
/// The result may violate n_left <= n_right; it is meant for round-trip checks.
template <WeightType W>
BasicGraph<W> transpose(const BasicGraph<W>& g);

struct Diagnostic {
    enum class Kind { RangeViolation, Duplicate, SideOrder };
    Kind kind;
    int left = -1;
    int right = -1;
    std::string message;
};

/// Reports invariant violations without modifying the graph.
template <WeightType W>
std::vector<Diagnostic> validate(const BasicGraph<W>& g);

template <WeightType W>
struct MatchedPair {
    int left = 0;
    int right = 0;
    W weight{};

    friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

template <WeightType W>
struct Matching {
    std::vector<MatchedPair<W>> pairs;
    W total_weight{};

    std::size_t size() const noexcept { return pairs.size(); }
};

/// Maps a matching on a normalized graph back to the caller's orientation.
template <WeightType W>
Matching<W> to_input_orientation(const Matching<W>& m, const BasicGraph<W>& g);

/// True if m is a matching of g (disjoint endpoints, every pair an edge with
/// the stated weight, total consistent).
template <WeightType W>
bool is_matching_of(const Matching<W>& m, const BasicGraph<W>& g);

}  // namespace bimatch

#endif  // BIMATCH_GRAPH_HPP
