// SPDX-License-Identifier: Apache-2.0

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bimatch/bench.hpp"
#include "bimatch/certify.hpp"
#include "bimatch/graph_io.hpp"
#include "bimatch/hungarian.hpp"
#include "bimatch/kwok.hpp"
#include "bimatch/mcmf.hpp"
#include "bimatch/oracle.hpp"

namespace py = pybind11;
using namespace bimatch;

namespace {

template <WeightType W>
struct PyResult {
    W weight{};
    std::vector<std::tuple<int, int, W>> pairs;  // caller's orientation
    std::vector<W> h_left;
    std::vector<W> h_right;
    py::dict stats;
    std::optional<bool> certified;
};

py::dict stats_dict(const SolveStats& s) {
    py::dict d;
    d["edges_visited"] = s.edges_visited;
    d["h_adjustments"] = s.h_adjustments;
    d["augmentations"] = s.augmentations;
    d["greedy_matches"] = s.greedy_matches;
    d["searches"] = s.searches;
    d["heap_inserts"] = s.heap_inserts;
    d["heap_extracts"] = s.heap_extracts;
    d["heap_decreases"] = s.heap_decreases;
    d["heap_deletes"] = s.heap_deletes;
    d["max_search_h_adjustments"] = s.max_search_h_adjustments;
    d["max_search_edges_visited"] = s.max_search_edges_visited;
    return d;
}

template <WeightType W>
BasicGraph<W> make_graph(int n_left, int n_right, const std::vector<std::tuple<int, int, W>>& edges) {
    std::vector<Edge<W>> es;
    es.reserve(edges.size());
    for (const auto& [l, r, w] : edges) es.push_back({l, r, w});
    return BasicGraph<W>::build(n_left, n_right, es);
}

template <WeightType W>
std::vector<std::tuple<int, int, W>> edge_tuples(const BasicGraph<W>& g) {
    std::vector<std::tuple<int, int, W>> out;
    for (const auto& e : g.edges()) out.emplace_back(e.left, e.right, e.weight);
    return out;
}

template <WeightType W>
PyResult<W> solve(const BasicGraph<W>& input, const std::string& algorithm, bool greedy, bool prune,
                  bool sorted_adjacency, bool check) {
    const Algorithm algo = parse_algorithm(algorithm);
    const BasicGraph<W> g = clean(input);
    Solution<W> sol;
    BasicGraph<W> searched = g;
    {
        py::gil_scoped_release release;
        switch (algo) {
            case Algorithm::Kwok: {
                KwokOptions<W> opt;
                opt.greedy = greedy;
                opt.prune = prune;
                opt.sorted_adjacency = sorted_adjacency;
                searched = prepare_for_kwok(g, opt);
                sol = KwokMatcher<W>(searched, opt).run();
                break;
            }
            case Algorithm::Hungarian:
            case Algorithm::HungarianVirtual: {
                HungarianOptions<W> opt;
                opt.with_virtual_vertices = algo == Algorithm::HungarianVirtual;
                opt.greedy = greedy;
                sol = hungarian_eager(DenseCostMatrix<W>::from_graph(g), opt);
                break;
            }
            case Algorithm::Mcmf:
                sol = mcmf_dijkstra(g);
                break;
        }
    }
    PyResult<W> out;
    const Matching<W> m = to_input_orientation(sol.matching, g);
    out.weight = m.total_weight;
    for (const auto& p : m.pairs) out.pairs.emplace_back(p.left, p.right, p.weight);
    out.h_left = sol.labels.h_left;
    out.h_right = sol.labels.h_right;
    out.stats = stats_dict(sol.stats);
    if (check) {
        if (algo == Algorithm::Mcmf) throw py::value_error("mcmf produces no dual labels to certify");
        double tol = 0;
        if constexpr (!std::is_integral_v<W>) tol = 1e3 * default_tolerance(g.max_abs_weight());
        out.certified = certify(searched, sol.matching, sol.labels, tol).ok();
    }
    return out;
}

template <WeightType W>
void bind_graph(py::module_& m, const char* name, const char* result_name) {
    using G = BasicGraph<W>;
    py::class_<G>(m, name)
        .def(py::init(&make_graph<W>), py::arg("n_left"), py::arg("n_right"), py::arg("edges"))
        .def_property_readonly("n_left", &G::n_left)
        .def_property_readonly("n_right", &G::n_right)
        .def_property_readonly("n_edges", &G::n_edges)
        .def_property_readonly("transposed", &G::transposed)
        .def("edges", &edge_tuples<W>, "Edges in normalized orientation")
        .def("clean", [](const G& g) { return clean(g); })
        .def("prune_top_l", [](const G& g) { return prune_top_l(g); })
        .def("__repr__", [name](const G& g) {
            std::ostringstream os;
            os << "<" << name << " n_left=" << g.n_left() << " n_right=" << g.n_right() << " n_edges=" << g.n_edges()
               << ">";
            return os.str();
        });

    using R = PyResult<W>;
    py::class_<R>(m, result_name)
        .def_readonly("weight", &R::weight)
        .def_readonly("pairs", &R::pairs)
        .def_readonly("h_left", &R::h_left)
        .def_readonly("h_right", &R::h_right)
        .def_readonly("stats", &R::stats)
        .def_readonly("certified", &R::certified);

    m.def("solve", &solve<W>, py::arg("graph"), py::arg("algorithm") = "kwok", py::arg("greedy") = true,
          py::arg("prune") = true, py::arg("sorted_adjacency") = false, py::arg("certify") = false);
    m.def("brute_force", [](const G& g) { return brute_force_mwm(g).second; }, py::arg("graph"));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Maximum weight bipartite matching";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);
    py::register_exception<UncleanGraphError>(m, "UncleanGraphError", PyExc_ValueError);
    py::register_exception<OracleLimitError>(m, "OracleLimitError", PyExc_ValueError);

    bind_graph<std::int64_t>(m, "Graph", "Result");
    bind_graph<double>(m, "RealGraph", "RealResult");

    m.def("read_graph", [](const std::string& path) -> py::object {
        return std::visit([](auto&& g) { return py::cast(std::move(g)); }, read_graph_file(path));
    }, py::arg("path"));

    m.def(
        "generate",
        [](int n_left, int ratio, const std::string& budget, const std::string& weights, std::uint64_t seed) {
            InstanceSpec spec;
            spec.n_left = n_left;
            spec.ratio = ratio;
            spec.budget = parse_budget(budget);
            std::tie(spec.weight_lo, spec.weight_hi) = parse_weight_range(weights, spec.n_right());
            spec.seed = seed;
            return gen(spec);
        },
        py::arg("n_left"), py::arg("ratio") = 1, py::arg("budget") = "c_lgR:0.5", py::arg("weights") = "1:R",
        py::arg("seed") = 1);
}
