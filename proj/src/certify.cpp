// SPDX-License-Identifier: Apache-2.0

#include "bimatch/certify.hpp"

#include <sstream>

namespace bimatch {

template <WeightType W>
CertificateReport certify(const BasicGraph<W>& g, const Matching<W>& m, const DualLabels<W>& labels,
                          double tolerance, std::size_t max_failures) {
    CertificateReport rep;
    auto fail = [&](auto&&... parts) {
        if (rep.failures.size() >= max_failures) return;
        std::ostringstream os;
        (os << ... << parts);
        rep.failures.push_back(os.str());
    };
    const W eps = WeightTraits<W>::exact ? W{} : static_cast<W>(tolerance);
    auto negative = [eps](W x) { return WeightTraits<W>::is_negative(x, eps); };
    auto zero = [eps](W x) { return WeightTraits<W>::is_zero(x, eps); };

    if (labels.h_left.size() != static_cast<std::size_t>(g.n_left()) ||
        labels.h_right.size() != static_cast<std::size_t>(g.n_right())) {
        fail("label vectors do not match the graph size");
        return rep;
    }
    if (!is_matching_of(m, g)) fail("pairs do not form a matching of the graph");

    std::vector<int> left_pair(static_cast<std::size_t>(g.n_left()), -1);
    std::vector<int> right_pair(static_cast<std::size_t>(g.n_right()), -1);
    for (const auto& p : m.pairs) {
        if (p.left < 0 || p.left >= g.n_left() || p.right < 0 || p.right >= g.n_right()) continue;
        left_pair[p.left] = p.right;
        right_pair[p.right] = p.left;
    }

    W dual_total{};
    for (int l = 0; l < g.n_left(); ++l) {
        const W hl = labels.h_left[l];
        if (g.adj(l).empty()) continue;
        dual_total += hl;
        if (negative(hl)) fail("h_left[", l, "] = ", hl, " is negative");
        if (left_pair[l] == -1 && !zero(hl)) fail("unmatched left ", l, " has h_left = ", hl);
        for (const auto& nb : g.adj(l)) {
            const W d = hl + labels.h_right[nb.right] - nb.weight;
            if (negative(d)) fail("edge (", l, ", ", nb.right, ") violates feasibility by ", -d);
            if (left_pair[l] == nb.right && !zero(d)) fail("matched edge (", l, ", ", nb.right, ") is not tight");
        }
    }
    for (int r = 0; r < g.n_right(); ++r) {
        const W hr = labels.h_right[r];
        dual_total += hr;
        if (negative(hr)) fail("h_right[", r, "] = ", hr, " is negative");
        if (right_pair[r] == -1 && !zero(hr)) fail("unmatched right ", r, " has h_right = ", hr);
    }
    const W gap = dual_total - m.total_weight;
    if (!zero(gap)) fail("dual objective ", dual_total, " differs from matching weight ", m.total_weight);
    return rep;
}

template CertificateReport certify(const BasicGraph<std::int64_t>&, const Matching<std::int64_t>&,
                                   const DualLabels<std::int64_t>&, double, std::size_t);
template CertificateReport certify(const BasicGraph<double>&, const Matching<double>&, const DualLabels<double>&,
                                   double, std::size_t);

}  // namespace bimatch
