// SPDX-License-Identifier: Apache-2.0

#include "bimatch/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>
#include <unordered_set>

#include "bimatch/graph_io.hpp"
#include "bimatch/hungarian.hpp"
#include "bimatch/kwok.hpp"
#include "bimatch/mcmf.hpp"

namespace bimatch {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    while (true) {
        const std::uint64_t x = rng();
        if (x >= threshold) return x % n;
    }
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::string EdgeBudget::to_string() const {
    std::ostringstream os;
    switch (rule) {
        case BudgetRule::CLgR: os << "c_lgR:" << value; break;
        case BudgetRule::Frac: os << "frac:" << value; break;
        case BudgetRule::Fixed: os << "fixed:" << static_cast<std::uint64_t>(value); break;
    }
    return os.str();
}

EdgeBudget parse_budget(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("edge budget must look like rule:value, got '" + std::string(text) + "'");
    }
    const std::string rule(text.substr(0, colon));
    const std::string value(text.substr(colon + 1));
    EdgeBudget b;
    try {
        b.value = std::stod(value);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad edge budget value '" + value + "'");
    }
    if (rule == "c_lgR") {
        b.rule = BudgetRule::CLgR;
    } else if (rule == "frac") {
        b.rule = BudgetRule::Frac;
        if (b.value <= 0) throw std::invalid_argument("frac divisor must be positive");
    } else if (rule == "fixed") {
        b.rule = BudgetRule::Fixed;
    } else {
        throw std::invalid_argument("unknown edge budget rule '" + rule + "'");
    }
    if (b.value < 0) throw std::invalid_argument("edge budget must be non-negative");
    return b;
}

std::size_t InstanceSpec::edge_count() const {
    const double nl = n_left;
    const double nr = n_right();
    switch (budget.rule) {
        case BudgetRule::CLgR:
            return nr <= 1 ? 0 : static_cast<std::size_t>(std::floor(budget.value * nl * std::log2(nr)));
        case BudgetRule::Frac:
            return static_cast<std::size_t>(static_cast<std::uint64_t>(n_left) * n_right() /
                                            static_cast<std::uint64_t>(budget.value));
        case BudgetRule::Fixed:
            return static_cast<std::size_t>(budget.value);
    }
    return 0;
}

Graph gen(const InstanceSpec& spec) {
    if (spec.n_left < 0 || spec.ratio < 1) throw std::invalid_argument("bad instance shape");
    if (spec.weight_lo > spec.weight_hi) throw std::invalid_argument("empty weight range");
    const std::uint64_t universe = static_cast<std::uint64_t>(spec.n_left) * spec.n_right();
    const std::uint64_t k = spec.edge_count();
    if (k > universe) {
        throw std::invalid_argument("edge budget " + std::to_string(k) + " exceeds |L||R| = " +
                                    std::to_string(universe));
    }

    std::mt19937_64 rng(spec.seed);
    std::vector<std::uint64_t> picked;
    picked.reserve(k);
    if (k * 4 <= universe) {
        // Floyd: each j in [universe - k, universe) adds exactly one new element.
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(k * 2);
        for (std::uint64_t j = universe - k; j < universe; ++j) {
            const std::uint64_t t = uniform_below(rng, j + 1);
            const std::uint64_t v = seen.contains(t) ? j : t;
            seen.insert(v);
            picked.push_back(v);
        }
    } else {
        std::vector<std::uint64_t> all(universe);
        std::iota(all.begin(), all.end(), std::uint64_t{0});
        for (std::uint64_t i = 0; i < k; ++i) {
            const std::uint64_t j = i + uniform_below(rng, universe - i);
            std::swap(all[i], all[j]);
        }
        picked.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
    }
    std::sort(picked.begin(), picked.end());

    const auto span = static_cast<std::uint64_t>(spec.weight_hi - spec.weight_lo) + 1;
    std::vector<Edge<std::int64_t>> edges;
    edges.reserve(k);
    const auto nr = static_cast<std::uint64_t>(spec.n_right());
    for (std::uint64_t code : picked) {
        const auto w = spec.weight_lo + static_cast<std::int64_t>(uniform_below(rng, span));
        edges.push_back({static_cast<int>(code / nr), static_cast<int>(code % nr), w});
    }
    return Graph::build(spec.n_left, spec.n_right(), edges);
}

std::string_view algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Kwok: return "kwok";
        case Algorithm::Hungarian: return "hungarian";
        case Algorithm::HungarianVirtual: return "hungarian-virtual";
        case Algorithm::Mcmf: return "mcmf";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    for (auto a : {Algorithm::Kwok, Algorithm::Hungarian, Algorithm::HungarianVirtual, Algorithm::Mcmf}) {
        if (algorithm_name(a) == name) return a;
    }
    throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

RunResult run_algorithm(Algorithm a, const Graph& g, const RunOptions& options) {
    using clock = std::chrono::steady_clock;
    RunResult out;
    auto timed = [&](auto&& solve) {
        const auto t0 = clock::now();
        Solution<std::int64_t> s = solve();
        const auto t1 = clock::now();
        out.wall_ns = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
        out.matching = std::move(s.matching);
        out.stats = s.stats;
    };
    switch (a) {
        case Algorithm::Kwok: {
            KwokOptions<std::int64_t> opt;
            opt.greedy = options.greedy;
            opt.prune = options.prune;
            opt.sorted_adjacency = options.sorted_adjacency;
            timed([&] { return solve_kwok(g, opt); });
            break;
        }
        case Algorithm::Hungarian:
        case Algorithm::HungarianVirtual: {
            // The dense matrix is the baseline's input format; building it is not timed.
            const auto m = DenseCostMatrix<std::int64_t>::from_graph(g);
            HungarianOptions<std::int64_t> opt;
            opt.with_virtual_vertices = a == Algorithm::HungarianVirtual;
            opt.greedy = options.greedy;
            timed([&] { return hungarian_eager(m, opt); });
            break;
        }
        case Algorithm::Mcmf:
            timed([&] { return mcmf_dijkstra(g); });
            break;
    }
    return out;
}

double sample_stddev(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    double ss = 0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

namespace {

void accumulate_stats(SolveStats& into, const SolveStats& s) {
    into.edges_visited += s.edges_visited;
    into.h_adjustments += s.h_adjustments;
    into.augmentations += s.augmentations;
    into.greedy_matches += s.greedy_matches;
    into.heap_inserts += s.heap_inserts;
    into.heap_extracts += s.heap_extracts;
    into.heap_decreases += s.heap_decreases;
    into.heap_deletes += s.heap_deletes;
    into.searches += s.searches;
    into.max_search_h_adjustments = std::max(into.max_search_h_adjustments, s.max_search_h_adjustments);
    into.max_search_edges_visited = std::max(into.max_search_edges_visited, s.max_search_edges_visited);
}

// One round: every algorithm on one graph. Returns one record per algorithm.
std::vector<RunRecord> run_round(const BenchConfig& cfg, const InstanceSpec& base, int round) {
    InstanceSpec spec = base;
    spec.seed = mix_seed(base.seed, static_cast<std::uint64_t>(round));
    const Graph g = gen(spec);
    std::vector<RunRecord> out;
    for (Algorithm a : cfg.algorithms) {
        const RunResult r = run_algorithm(a, g, cfg.run);
        RunRecord rec;
        rec.algorithm = a;
        rec.n_left = g.n_left();
        rec.n_right = g.n_right();
        rec.n_edges = g.n_edges();
        rec.round = round;
        rec.seed = spec.seed;
        rec.weight = r.matching.total_weight;
        rec.wall_ns = r.wall_ns;
        rec.stats = r.stats;
        out.push_back(rec);
    }
    for (const auto& rec : out) {
        if (rec.weight != out.front().weight) {
            std::ostringstream os;
            os << "weight disagreement on n_left=" << spec.n_left << " ratio=1:" << spec.ratio
               << " budget=" << spec.budget.to_string() << " seed=" << spec.seed << ": "
               << algorithm_name(out.front().algorithm) << "=" << out.front().weight << " vs "
               << algorithm_name(rec.algorithm) << "=" << rec.weight;
            throw DisagreementError(os.str(), spec.seed);
        }
    }
    return out;
}

}  // namespace

BenchResult bench(const BenchConfig& cfg) {
    if (cfg.rounds < 2) throw std::invalid_argument("bench needs at least 2 rounds");
    if (cfg.algorithms.empty()) throw std::invalid_argument("bench needs at least one algorithm");
    BenchResult result;
    result.timing_comparable = !cfg.parallel;

    for (const InstanceSpec& spec : cfg.specs) {
        run_round(cfg, spec, 0);  // warm-up, discarded

        std::vector<std::vector<RunRecord>> rounds(static_cast<std::size_t>(cfg.rounds));
        if (cfg.parallel) {
            std::atomic<int> next{1};
            std::vector<std::exception_ptr> errors(std::max(1u, std::thread::hardware_concurrency()));
            std::vector<std::thread> workers;
            for (std::size_t w = 0; w < errors.size(); ++w) {
                workers.emplace_back([&, w] {
                    try {
                        for (int r = next++; r <= cfg.rounds; r = next++) rounds[r - 1] = run_round(cfg, spec, r);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
            for (auto& t : workers) t.join();
            for (auto& e : errors) {
                if (e) std::rethrow_exception(e);
            }
        } else {
            for (int r = 1; r <= cfg.rounds; ++r) rounds[r - 1] = run_round(cfg, spec, r);
        }

        for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
            BenchRecord rec;
            rec.algorithm = cfg.algorithms[ai];
            rec.spec = spec;
            rec.rounds = cfg.rounds;
            std::vector<double> ms;
            for (const auto& round : rounds) {
                const RunRecord& run = round[ai];
                ms.push_back(static_cast<double>(run.wall_ns) / 1e6);
                accumulate_stats(rec.totals, run.stats);
            }
            rec.mean_ms = std::accumulate(ms.begin(), ms.end(), 0.0) / static_cast<double>(ms.size());
            rec.stddev_ms = sample_stddev(ms);
            result.records.push_back(rec);
        }
        for (auto& round : rounds) result.runs.insert(result.runs.end(), round.begin(), round.end());
    }
    return result;
}

std::vector<int> left_sweep(std::size_t n_edges, int points, double max_fraction) {
    const int lo = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_edges))));
    const int hi = std::max(lo, static_cast<int>(std::floor(static_cast<double>(n_edges) * max_fraction)));
    std::vector<int> out;
    if (points <= 1 || hi == lo) {
        out.push_back(lo);
        return out;
    }
    const double step = std::log(static_cast<double>(hi) / lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
        const int v = static_cast<int>(std::lround(lo * std::exp(step * i)));
        const int clamped = std::clamp(v, lo, hi);
        if (out.empty() || clamped > out.back()) out.push_back(clamped);
    }
    return out;
}

std::optional<double> fit_loglog_slope(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) return std::nullopt;
    double sx = 0, sy = 0;
    for (const auto& [x, y] : points) {
        sx += std::log(x);
        sy += std::log(y);
    }
    const double n = static_cast<double>(points.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        sxx += (std::log(x) - mx) * (std::log(x) - mx);
        sxy += (std::log(x) - mx) * (std::log(y) - my);
    }
    if (sxx <= 0) return std::nullopt;
    return sxy / sxx;
}

ScalingResult scaling_study(const ScalingConfig& cfg) {
    ScalingResult result;
    std::vector<std::pair<double, double>> fit_points;
    std::uint64_t salt = 0;
    for (std::size_t e : cfg.edge_counts) {
        double best = -1;
        for (int n : left_sweep(e, cfg.left_points, cfg.max_left_fraction)) {
            ScalingPoint point;
            point.n_edges = e;
            point.n_left = n;
            for (int round = 0; round < cfg.rounds; ++round) {
                InstanceSpec spec;
                spec.n_left = n;
                spec.ratio = 1;
                spec.budget = {BudgetRule::Fixed, static_cast<double>(e)};
                spec.weight_lo = 1;
                spec.weight_hi = static_cast<std::int64_t>(n) * n;
                spec.seed = mix_seed(cfg.seed, salt++);
                const Graph g = gen(spec);
                const RunResult r = run_algorithm(Algorithm::Kwok, g, cfg.run);

                RunRecord rec;
                rec.algorithm = Algorithm::Kwok;
                rec.n_left = n;
                rec.n_right = n;
                rec.n_edges = g.n_edges();
                rec.round = round;
                rec.seed = spec.seed;
                rec.weight = r.matching.total_weight;
                rec.wall_ns = r.wall_ns;
                rec.stats = r.stats;
                result.runs.push_back(rec);

                const double ratio = static_cast<double>(r.stats.h_adjustments) / n;
                point.mean_edges_visited += static_cast<double>(r.stats.edges_visited);
                point.mean_h_ratio += ratio;
                ++result.total_runs;
                if (ratio >= kHBandLow && ratio <= kHBandHigh) ++result.runs_in_h_band;
            }
            point.mean_edges_visited /= cfg.rounds;
            point.mean_h_ratio /= cfg.rounds;
            best = std::max(best, point.mean_edges_visited);
            result.points.push_back(point);
        }
        result.maxima.push_back({e, best});
        if (best > 0) fit_points.push_back({static_cast<double>(e), best});
    }
    std::sort(fit_points.begin(), fit_points.end());
    const bool distinct = fit_points.size() >= 2 && fit_points.front().first != fit_points.back().first;
    if (distinct) result.exponent = fit_loglog_slope(fit_points);
    return result;
}

namespace {

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string get(const Config& cfg, const std::string& key, const std::string& fallback) {
    const auto it = cfg.find(key);
    return it == cfg.end() ? fallback : it->second;
}

bool get_bool(const Config& cfg, const std::string& key, bool fallback) {
    const auto it = cfg.find(key);
    if (it == cfg.end()) return fallback;
    if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
    if (it->second == "false" || it->second == "0" || it->second == "no") return false;
    throw std::invalid_argument("config key '" + key + "' expects a boolean, got '" + it->second + "'");
}

long long get_int(const Config& cfg, const std::string& key, long long fallback) {
    const auto it = cfg.find(key);
    if (it == cfg.end()) return fallback;
    try {
        std::size_t used = 0;
        const long long v = std::stoll(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "' expects an integer, got '" + it->second + "'");
    }
}

std::uint64_t get_seed(const Config& cfg, std::uint64_t fallback) {
    const auto it = cfg.find("seed");
    if (it == cfg.end()) return fallback;
    try {
        return std::stoull(it->second);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key 'seed' expects an unsigned integer");
    }
}

std::int64_t resolve_bound(const std::string& token, int n_right) {
    if (token == "R") return n_right;
    if (token == "R2") return static_cast<std::int64_t>(n_right) * n_right;
    try {
        std::size_t used = 0;
        const long long v = std::stoll(token, &used);
        if (used == token.size()) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("bad weight bound '" + token + "'");
}

}  // namespace

std::pair<std::int64_t, std::int64_t> parse_weight_range(std::string_view text, int n_right) {
    const auto parts = split(std::string(text), ':');
    if (parts.size() != 2) throw std::invalid_argument("weight range must look like lo:hi");
    return {resolve_bound(parts[0], n_right), resolve_bound(parts[1], n_right)};
}

Config parse_config(std::istream& in) {
    Config cfg;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError(number, "expected key=value");
        const std::string key = trim(t.substr(0, eq));
        if (key.empty()) throw ParseError(number, "empty key");
        cfg[key] = trim(t.substr(eq + 1));
    }
    return cfg;
}

BenchConfig bench_config_from(const Config& cfg, std::uint64_t default_seed) {
    BenchConfig out;
    const int n_left = static_cast<int>(get_int(cfg, "n_left", 1000));
    const std::uint64_t seed = get_seed(cfg, default_seed);
    std::vector<int> ratios;
    for (const auto& r : split(get(cfg, "ratios", "1,2,4,8"), ',')) ratios.push_back(std::stoi(r));
    std::vector<EdgeBudget> budgets;
    for (const auto& b : split(get(cfg, "budgets", "c_lgR:0.5"), ',')) budgets.push_back(parse_budget(b));
    const std::string weights = get(cfg, "weights", "1:R");

    std::uint64_t salt = 0;
    for (const auto& b : budgets) {
        for (int ratio : ratios) {
            InstanceSpec s;
            s.n_left = n_left;
            s.ratio = ratio;
            s.budget = b;
            std::tie(s.weight_lo, s.weight_hi) = parse_weight_range(weights, s.n_right());
            s.seed = mix_seed(seed, salt++);
            out.specs.push_back(s);
        }
    }
    for (const auto& a : split(get(cfg, "algorithms", "kwok,hungarian,hungarian-virtual,mcmf"), ',')) {
        out.algorithms.push_back(parse_algorithm(a));
    }
    out.rounds = static_cast<int>(get_int(cfg, "rounds", 10));
    out.run.greedy = get_bool(cfg, "greedy", true);
    out.run.prune = get_bool(cfg, "prune", true);
    out.run.sorted_adjacency = get_bool(cfg, "sorted_adj", false);
    out.parallel = get_bool(cfg, "parallel", false);
    return out;
}

ScalingConfig scaling_config_from(const Config& cfg, std::uint64_t default_seed) {
    ScalingConfig out;
    const std::string edges = get(cfg, "edges", "1000:20000:1000");
    const auto range = split(edges, ':');
    if (range.size() == 3) {
        const auto lo = std::stoull(range[0]);
        const auto hi = std::stoull(range[1]);
        const auto step = std::stoull(range[2]);
        if (step == 0) throw std::invalid_argument("edge step must be positive");
        for (auto e = lo; e <= hi; e += step) out.edge_counts.push_back(e);
    } else {
        for (const auto& e : split(edges, ',')) out.edge_counts.push_back(std::stoull(e));
    }
    out.left_points = static_cast<int>(get_int(cfg, "left_points", 8));
    out.max_left_fraction = std::stod(get(cfg, "max_left_fraction", "0.25"));
    out.rounds = static_cast<int>(get_int(cfg, "rounds", 10));
    out.seed = get_seed(cfg, default_seed);
    out.run.greedy = get_bool(cfg, "greedy", true);
    out.run.prune = get_bool(cfg, "prune", true);
    out.run.sorted_adjacency = get_bool(cfg, "sorted_adj", false);
    return out;
}

void write_runs_csv(std::ostream& out, std::span<const RunRecord> runs, bool timing_comparable) {
    if (!timing_comparable) out << "# timing non-comparable (--parallel)\n";
    out << "algorithm,n_left,n_right,n_edges,round,seed,weight,wall_ns,edges_visited,h_adjustments,augmentations\n";
    for (const auto& r : runs) {
        out << algorithm_name(r.algorithm) << ',' << r.n_left << ',' << r.n_right << ',' << r.n_edges << ','
            << r.round << ',' << r.seed << ',' << r.weight << ',' << r.wall_ns << ',' << r.stats.edges_visited
            << ',' << r.stats.h_adjustments << ',' << r.stats.augmentations << '\n';
    }
}

std::string format_bench_table(const BenchResult& result) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    std::string last_budget;
    for (std::size_t i = 0; i < result.records.size();) {
        const auto& spec = result.records[i].spec;
        const std::string budget = spec.budget.to_string();
        if (budget != last_budget) {
            os << "\n|E| rule " << budget << ", |L| = " << spec.n_left << " (ms, mean ± sample sd)\n";
            os << std::left << std::setw(8) << "L:R";
            for (std::size_t j = i; j < result.records.size() && result.records[j].spec.seed == spec.seed; ++j) {
                os << std::setw(24) << algorithm_name(result.records[j].algorithm);
            }
            os << '\n';
            last_budget = budget;
        }
        os << std::left << std::setw(8) << ("1:" + std::to_string(spec.ratio));
        for (; i < result.records.size() && result.records[i].spec.seed == spec.seed; ++i) {
            std::ostringstream cell;
            cell << std::fixed << std::setprecision(2) << result.records[i].mean_ms << " ± "
                 << result.records[i].stddev_ms;
            os << std::setw(24) << cell.str();
        }
        os << '\n';
    }
    if (!result.timing_comparable) os << "(timings taken with --parallel; not comparable)\n";
    return os.str();
}

}  // namespace bimatch
