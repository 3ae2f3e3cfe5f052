// SPDX-License-Identifier: Apache-2.0
//
// Weight representation shared by every solver.
//
// Two concrete weight types are supported: std::int64_t (exact, the default)
// and double (real mode, equality tests use a tolerance). All solvers are
// templates instantiated for exactly these two types.

#ifndef BIMATCH_WEIGHT_HPP
#define BIMATCH_WEIGHT_HPP

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace bimatch {

template <class W>
concept WeightType = std::same_as<W, std::int64_t> || std::same_as<W, double>;

/// Largest accepted |w| in integer mode. Labels, slacks and shortest-path
/// potentials stay within a small multiple of |L| * this bound, which leaves
/// headroom in 64 bits for graphs up to 2^20 left vertices.
inline constexpr std::int64_t kMaxAbsIntegerWeight = std::int64_t{1} << 40;

template <WeightType W>
struct WeightTraits;

template <>
struct WeightTraits<std::int64_t> {
    static constexpr bool exact = true;
    static constexpr std::int64_t infinity() { return std::numeric_limits<std::int64_t>::max(); }
    static constexpr bool is_zero(std::int64_t x, std::int64_t /*eps*/) { return x == 0; }
    static constexpr bool is_negative(std::int64_t x, std::int64_t /*eps*/) { return x < 0; }
    static bool acceptable(std::int64_t w) { return w >= -kMaxAbsIntegerWeight && w <= kMaxAbsIntegerWeight; }
};

template <>
struct WeightTraits<double> {
    static constexpr bool exact = false;
    static constexpr double infinity() { return std::numeric_limits<double>::infinity(); }
    static bool is_zero(double x, double eps) { return std::fabs(x) <= eps; }
    static bool is_negative(double x, double eps) { return x < -eps; }
    static bool acceptable(double w) { return std::isfinite(w); }
};

/// Sum with overflow detection in integer mode.
template <WeightType W>
W checked_add(W a, W b) {
    if constexpr (std::is_integral_v<W>) {
        W out{};
        if (__builtin_add_overflow(a, b, &out)) {
            throw std::overflow_error("bimatch: weight sum overflows 64 bits");
        }
        return out;
    } else {
        return a + b;
    }
}

/// Default equality tolerance for real mode: 1e-9 * max |w|.
inline double default_tolerance(double max_abs_weight) { return 1e-9 * max_abs_weight; }

}  // namespace bimatch

#endif  // BIMATCH_WEIGHT_HPP
