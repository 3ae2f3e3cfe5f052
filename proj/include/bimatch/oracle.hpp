// SPDX-License-Identifier: Apache-2.0
//
// Exhaustive maximum weight matching for small instances. Two independent
// routes: a DP over (left index, set of used right vertices), and plain
// enumeration of every edge subset.

#ifndef BIMATCH_ORACLE_HPP
#define BIMATCH_ORACLE_HPP

#include <stdexcept>
#include <utility>

#include "bimatch/graph.hpp"

namespace bimatch {

class OracleLimitError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr int kOracleMaxRight = 20;
inline constexpr int kOracleMaxEdges = 20;

/// Exact optimum by DP over right-vertex subsets. Requires n_right <= 20.
/// Accepts any graph, including non-positive weights (never chosen).
template <WeightType W>
std::pair<Matching<W>, W> brute_force_mwm(const BasicGraph<W>& g);

/// Maximum over all edge subsets that form a matching. Requires |E| <= 20.
template <WeightType W>
W enumerate_all_matchings_weight(const BasicGraph<W>& g);

}  // namespace bimatch

#endif  // BIMATCH_ORACLE_HPP
