// SPDX-License-Identifier: Apache-2.0
//
// Reference solvers: the classic non-line-covering Hungarian method with
// eager label updates on a dense matrix.
//
// Missing edges are stored as weight 0, which makes "every left vertex
// matched" equivalent to maximum weight matching once zero pairs are dropped.
// With `with_virtual_vertices` the matrix is padded to square with all-zero
// rows (kept implicit); without it the method runs directly on |L| <= |R|.

#ifndef BIMATCH_HUNGARIAN_HPP
#define BIMATCH_HUNGARIAN_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "bimatch/graph.hpp"
#include "bimatch/solution.hpp"

namespace bimatch {

template <WeightType W>
class DenseCostMatrix {
public:
    DenseCostMatrix() = default;
    DenseCostMatrix(int n_left, int n_right);

    /// Non-positive graph weights become 0 (never worth matching).
    static DenseCostMatrix from_graph(const BasicGraph<W>& g);

    int n_left() const noexcept { return n_left_; }
    int n_right() const noexcept { return n_right_; }

    W at(int l, int r) const noexcept { return data_[static_cast<std::size_t>(l) * n_right_ + r]; }
    void set(int l, int r, W w) noexcept { data_[static_cast<std::size_t>(l) * n_right_ + r] = w; }

private:
    int n_left_ = 0;
    int n_right_ = 0;
    std::vector<W> data_;
};

template <WeightType W>
struct HungarianOptions {
    bool with_virtual_vertices = false;
    bool greedy = true;
    std::optional<double> tolerance;  // real mode only
    AugmentObserver<W> on_augment;    // called after each search; real rows only
};

/// Eager-update Hungarian method. The returned labels cover the real left
/// vertices and every right vertex; pairs of weight 0 are dropped.
template <WeightType W>
Solution<W> hungarian_eager(const DenseCostMatrix<W>& m, const HungarianOptions<W>& options = {});

}  // namespace bimatch

#endif  // BIMATCH_HUNGARIAN_HPP
