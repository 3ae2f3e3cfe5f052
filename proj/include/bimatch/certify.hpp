// SPDX-License-Identifier: Apache-2.0
//
// LP-duality optimality certificate for a matching and a vertex labeling.
//
// The matching is maximum if, on the graph it was computed on:
//   feasibility   h_left[l] + h_right[r] >= w(l, r) on every edge,
//   tightness     equality on every matched pair,
//   sign          h_right >= 0, and h_left >= 0 for every non-isolated l,
//   slackness     h_right[r] = 0 for unmatched r, h_left[l] = 0 for unmatched
//                 non-isolated l,
//   balance       total weight = sum of h_left (non-isolated) + sum of h_right.

#ifndef BIMATCH_CERTIFY_HPP
#define BIMATCH_CERTIFY_HPP

#include <string>
#include <vector>

#include "bimatch/graph.hpp"
#include "bimatch/solution.hpp"

namespace bimatch {

struct CertificateReport {
    std::vector<std::string> failures;

    bool ok() const noexcept { return failures.empty(); }
};

/// `tolerance` is ignored in integer mode. At most `max_failures` messages
/// are recorded.
template <WeightType W>
CertificateReport certify(const BasicGraph<W>& g, const Matching<W>& m, const DualLabels<W>& labels,
                          double tolerance = 0.0, std::size_t max_failures = 16);

}  // namespace bimatch

#endif  // BIMATCH_CERTIFY_HPP
