// SPDX-License-Identifier: Apache-2.0
//
// mwm: solve, generate and benchmark maximum weight bipartite matchings.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "bimatch/bench.hpp"
#include "bimatch/certify.hpp"
#include "bimatch/graph_io.hpp"
#include "bimatch/hungarian.hpp"
#include "bimatch/kwok.hpp"
#include "bimatch/mcmf.hpp"

using namespace bimatch;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitFailure = 1;
constexpr int kExitDisagreement = 3;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("MWM_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring MWM_SEED='" << env << "'\n";
        }
    }
    return 1;
}

struct SolveFlags {
    std::string path;
    std::string algo = "kwok";
    bool no_greedy = false;
    bool no_prune = false;
    bool sorted_adj = false;
    bool stats = false;
    bool certify = false;
};

void print_stats(const SolveStats& s) {
    std::cout << "edges_visited " << s.edges_visited << '\n'
              << "h_adjustments " << s.h_adjustments << '\n'
              << "augmentations " << s.augmentations << '\n'
              << "greedy_matches " << s.greedy_matches << '\n'
              << "searches " << s.searches << '\n'
              << "heap_inserts " << s.heap_inserts << '\n'
              << "heap_extracts " << s.heap_extracts << '\n'
              << "heap_decreases " << s.heap_decreases << '\n'
              << "heap_deletes " << s.heap_deletes << '\n'
              << "max_search_h_adjustments " << s.max_search_h_adjustments << '\n'
              << "max_search_edges_visited " << s.max_search_edges_visited << '\n';
}

template <WeightType W>
int solve_graph(const BasicGraph<W>& input, const SolveFlags& f) {
    const Algorithm algo = parse_algorithm(f.algo);
    const BasicGraph<W> g = clean(input);

    Solution<W> sol;
    const BasicGraph<W>* certified_on = &g;
    BasicGraph<W> prepared;
    switch (algo) {
        case Algorithm::Kwok: {
            KwokOptions<W> opt;
            opt.greedy = !f.no_greedy;
            opt.prune = !f.no_prune;
            opt.sorted_adjacency = f.sorted_adj;
            // Certify against the graph the matcher actually searched: pruned
            // edges carry no label guarantee.
            prepared = prepare_for_kwok(g, opt);
            KwokMatcher<W> matcher(prepared, opt);
            sol = matcher.run();
            certified_on = &prepared;
            break;
        }
        case Algorithm::Hungarian:
        case Algorithm::HungarianVirtual: {
            HungarianOptions<W> opt;
            opt.with_virtual_vertices = algo == Algorithm::HungarianVirtual;
            opt.greedy = !f.no_greedy;
            sol = hungarian_eager(DenseCostMatrix<W>::from_graph(g), opt);
            break;
        }
        case Algorithm::Mcmf:
            sol = mcmf_dijkstra(g);
            break;
    }

    if constexpr (!std::is_integral_v<W>) {
        std::cout << std::setprecision(std::numeric_limits<double>::max_digits10);
    }
    const Matching<W> out = to_input_orientation(sol.matching, g);
    std::cout << "weight " << out.total_weight << '\n';
    for (const auto& p : out.pairs) std::cout << p.left << ' ' << p.right << ' ' << p.weight << '\n';
    if (f.stats) print_stats(sol.stats);

    if (f.certify) {
        if (algo == Algorithm::Mcmf) {
            std::cerr << "error: --certify needs dual labels; mcmf does not produce them\n";
            return kExitFailure;
        }
        double tol = 0;
        if constexpr (!std::is_integral_v<W>) tol = 1e3 * default_tolerance(g.max_abs_weight());
        const CertificateReport rep = certify(*certified_on, sol.matching, sol.labels, tol);
        if (!rep.ok()) {
            for (const auto& msg : rep.failures) std::cerr << "certificate: " << msg << '\n';
            std::cout << "certificate FAILED\n";
            return kExitFailure;
        }
        std::cout << "certificate OK\n";
    }
    return 0;
}

int run_solve(const SolveFlags& f) {
    AnyGraph g;
    try {
        g = read_graph_file(f.path);
    } catch (const ParseError& e) {
        std::cerr << f.path << ": " << e.what() << '\n';
        return kExitParse;
    }
    return std::visit([&](const auto& graph) { return solve_graph(graph, f); }, g);
}

Config read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    return parse_config(in);
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maximum weight bipartite matching"};
    app.require_subcommand(1);

    SolveFlags sf;
    auto* solve = app.add_subcommand("solve", "Solve a graph file and print the matching");
    solve->add_option("file", sf.path, "Graph file")->required();
    solve->add_option("--algo", sf.algo, "Solver")
        ->check(CLI::IsMember({"kwok", "hungarian", "hungarian-virtual", "mcmf"}));
    solve->add_flag("--no-greedy", sf.no_greedy, "Skip the initial greedy matching");
    solve->add_flag("--no-prune", sf.no_prune, "Keep every edge (kwok)");
    solve->add_flag("--sorted-adj", sf.sorted_adj, "Heaviest-first adjacency with early cut-off (kwok)");
    solve->add_flag("--stats", sf.stats, "Print solver counters");
    solve->add_flag("--certify", sf.certify, "Check the dual certificate");

    InstanceSpec spec;
    std::string budget = "c_lgR:0.5";
    std::string weights = "1:R";
    std::optional<std::uint64_t> gen_seed;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random graph file");
    gen_cmd->add_option("--n-left", spec.n_left, "Left vertices")->required()->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--ratio", spec.ratio, "k in |L|:|R| = 1:k")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--budget", budget, "c_lgR:<c>, frac:<k> or fixed:<count>");
    gen_cmd->add_option("--weights", weights, "lo:hi; bounds may be R or R2");
    gen_cmd->add_option("--seed", gen_seed, "Seed (default MWM_SEED or 1)");
    gen_cmd->add_option("-o,--output", gen_out, "Output file")->required();

    std::string bench_cfg, bench_out;
    bool parallel = false;
    auto* bench_cmd = app.add_subcommand("bench", "Timing comparison across solvers");
    bench_cmd->add_option("config", bench_cfg, "key=value config file")->required();
    bench_cmd->add_option("-o,--output", bench_out, "CSV output")->required();
    bench_cmd->add_flag("--parallel", parallel, "Run rounds on worker threads (timings not comparable)");

    std::string scaling_cfg, scaling_out;
    auto* scaling_cmd = app.add_subcommand("scaling", "Edges-visited scaling study");
    scaling_cmd->add_option("config", scaling_cfg, "key=value config file")->required();
    scaling_cmd->add_option("-o,--output", scaling_out, "CSV output")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) return run_solve(sf);

        if (*gen_cmd) {
            spec.budget = parse_budget(budget);
            std::tie(spec.weight_lo, spec.weight_hi) = parse_weight_range(weights, spec.n_right());
            spec.seed = gen_seed.value_or(default_seed());
            const Graph g = gen(spec);
            auto out = open_output(gen_out);
            out << "# n_left=" << spec.n_left << " ratio=1:" << spec.ratio << " budget=" << spec.budget.to_string()
                << " weights=" << spec.weight_lo << ':' << spec.weight_hi << " seed=" << spec.seed << '\n';
            write_graph(out, g);
            return 0;
        }

        if (*bench_cmd) {
            BenchConfig cfg = bench_config_from(read_config(bench_cfg), default_seed());
            cfg.parallel = cfg.parallel || parallel;
            const BenchResult res = bench(cfg);
            auto out = open_output(bench_out);
            write_runs_csv(out, res.runs, res.timing_comparable);
            std::cout << format_bench_table(res);
            return 0;
        }

        if (*scaling_cmd) {
            const ScalingConfig cfg = scaling_config_from(read_config(scaling_cfg), default_seed());
            const ScalingResult res = scaling_study(cfg);
            auto out = open_output(scaling_out);
            write_runs_csv(out, res.runs);

            std::cout << std::left << std::setw(10) << "|E|" << std::setw(10) << "|L|" << std::setw(18)
                      << "edges_visited" << "h_adj/|L|\n";
            for (const auto& p : res.points) {
                std::cout << std::setw(10) << p.n_edges << std::setw(10) << p.n_left << std::setw(18) << std::fixed
                          << std::setprecision(1) << p.mean_edges_visited << std::setprecision(3) << p.mean_h_ratio
                          << '\n';
            }
            std::cout << "maxima:";
            for (const auto& [e, v] : res.maxima) std::cout << ' ' << e << ':' << std::setprecision(1) << v;
            std::cout << '\n';
            if (res.exponent) {
                std::cout << "exponent " << std::setprecision(3) << *res.exponent << '\n';
            } else {
                std::cout << "exponent: insufficient points\n";
            }
            std::cout << "h_adjustments/|L| in [" << kHBandLow << ", " << kHBandHigh << "]: " << res.runs_in_h_band
                      << '/' << res.total_runs << " runs\n";
            for (const auto& r : res.runs) {
                const double ratio = static_cast<double>(r.stats.h_adjustments) / r.n_left;
                if (ratio < kHBandLow || ratio > kHBandHigh) {
                    std::cout << "flagged: |E|=" << r.n_edges << " |L|=" << r.n_left << " seed=" << r.seed
                              << " ratio=" << ratio << '\n';
                }
            }
            return 0;
        }
    } catch (const DisagreementError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDisagreement;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return 0;
}
