// SPDX-License-Identifier: Apache-2.0
//
// Random instance generation and the timing / edge-visit harnesses behind the
// `mwm` command line tool.
//
// Randomness comes from std::mt19937_64, whose output sequence is fixed by the
// C++ standard, combined with rejection sampling for bounded integers, so a
// seed yields the same instance on every platform.

#ifndef BIMATCH_BENCH_HPP
#define BIMATCH_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bimatch/graph.hpp"
#include "bimatch/solution.hpp"

namespace bimatch {

/// Uniform integer in [0, n) by rejection; n > 0.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

/// splitmix64 finalizer; derives per-round seeds from a base seed.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);

enum class BudgetRule {
    CLgR,   // |E| = floor(c * |L| * log2 |R|)
    Frac,   // |E| = floor(|L| * |R| / k)
    Fixed,  // |E| = count
};

struct EdgeBudget {
    BudgetRule rule = BudgetRule::Fixed;
    double value = 0;  // c, k or count

    std::string to_string() const;
};

/// "c_lgR:0.5", "frac:10" or "fixed:8".
EdgeBudget parse_budget(std::string_view text);

struct InstanceSpec {
    int n_left = 0;
    int ratio = 1;  // |L| : |R| = 1 : ratio
    EdgeBudget budget;
    std::int64_t weight_lo = 1;
    std::int64_t weight_hi = 1;
    std::uint64_t seed = 0;

    int n_right() const { return n_left * ratio; }
    std::size_t edge_count() const;
};

/// Distinct (l, r) pairs uniform over L x R (Floyd's method for sparse
/// budgets, partial shuffle for dense ones), uniform integer weights.
/// Edges are emitted in (l, r) order. Throws if the budget exceeds |L||R|.
Graph gen(const InstanceSpec& spec);

enum class Algorithm { Kwok, Hungarian, HungarianVirtual, Mcmf };

std::string_view algorithm_name(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

struct RunOptions {
    bool greedy = true;
    bool prune = true;
    bool sorted_adjacency = false;
};

struct RunResult {
    Matching<std::int64_t> matching;
    std::uint64_t wall_ns = 0;
    SolveStats stats;
};

/// Solves a cleaned graph; the clock covers the solver call only.
RunResult run_algorithm(Algorithm a, const Graph& g, const RunOptions& options = {});

struct RunRecord {
    Algorithm algorithm = Algorithm::Kwok;
    int n_left = 0;
    int n_right = 0;
    std::size_t n_edges = 0;
    int round = 0;
    std::uint64_t seed = 0;
    std::int64_t weight = 0;
    std::uint64_t wall_ns = 0;
    SolveStats stats;
};

struct BenchRecord {
    Algorithm algorithm = Algorithm::Kwok;
    InstanceSpec spec;
    int rounds = 0;
    double mean_ms = 0;
    double stddev_ms = 0;
    SolveStats totals;
};

struct BenchConfig {
    std::vector<InstanceSpec> specs;
    std::vector<Algorithm> algorithms;
    int rounds = 10;
    RunOptions run;
    bool parallel = false;
};

struct BenchResult {
    std::vector<RunRecord> runs;
    std::vector<BenchRecord> records;
    bool timing_comparable = true;
};

class DisagreementError : public std::runtime_error {
public:
    DisagreementError(const std::string& what, std::uint64_t seed) : std::runtime_error(what), seed_(seed) {}
    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
};

/// Per spec: one untimed warm-up round, then `rounds` timed rounds, each on a
/// fresh graph shared by all algorithms. Throws DisagreementError if the
/// algorithms return different weights on any round.
BenchResult bench(const BenchConfig& config);

/// sqrt(sum (x - mean)^2 / (n - 1)); 0 for fewer than two samples.
double sample_stddev(std::span<const double> xs);

struct ScalingConfig {
    std::vector<std::size_t> edge_counts;
    int left_points = 8;
    double max_left_fraction = 0.25;  // |L| sweep ends at |E| * fraction
    int rounds = 10;
    std::uint64_t seed = 0;
    RunOptions run;
};

struct ScalingPoint {
    std::size_t n_edges = 0;
    int n_left = 0;
    double mean_edges_visited = 0;
    double mean_h_ratio = 0;  // h_adjustments / |L|
};

struct ScalingResult {
    std::vector<RunRecord> runs;
    std::vector<ScalingPoint> points;
    std::vector<std::pair<std::size_t, double>> maxima;  // per |E|: max mean edges visited
    std::optional<double> exponent;
    std::size_t runs_in_h_band = 0;
    std::size_t total_runs = 0;
};

inline constexpr double kHBandLow = 0.25;
inline constexpr double kHBandHigh = 6.0;

/// Geometric |L| grid from ceil(sqrt(E)) to max(that, E * max_fraction).
std::vector<int> left_sweep(std::size_t n_edges, int points, double max_fraction);

/// For each |E|: sweep |L| = |R| with weights in [1, |R|^2], average Kwok's
/// edges visited over rounds, keep the maximum over the sweep, then fit the
/// log-log slope of the maxima against |E|.
ScalingResult scaling_study(const ScalingConfig& config);

/// Least-squares slope of log(y) against log(x); nullopt with fewer than two
/// distinct x values.
std::optional<double> fit_loglog_slope(std::span<const std::pair<double, double>> points);

using Config = std::map<std::string, std::string>;

/// key=value lines; '#' starts a comment line. Throws ParseError.
Config parse_config(std::istream& in);

/// "lo:hi" where each bound is an integer, "R" (|R|) or "R2" (|R|^2).
std::pair<std::int64_t, std::int64_t> parse_weight_range(std::string_view text, int n_right);

BenchConfig bench_config_from(const Config& cfg, std::uint64_t default_seed);
ScalingConfig scaling_config_from(const Config& cfg, std::uint64_t default_seed);

void write_runs_csv(std::ostream& out, std::span<const RunRecord> runs, bool timing_comparable = true);

/// Human-readable summary: one row per spec, "mean ± sd" ms per algorithm.
std::string format_bench_table(const BenchResult& result);

}  // namespace bimatch

#endif  // BIMATCH_BENCH_HPP
