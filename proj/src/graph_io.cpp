// SPDX-License-Identifier: Apache-2.0

#include "bimatch/graph_io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace bimatch {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
    std::vector<Line> out;
    std::string text;
    int number = 0;
    while (std::getline(in, text)) {
        ++number;
        const auto first = text.find_first_not_of(" \t\r");
        if (first == std::string::npos || text[first] == '#') continue;
        Line line{number, {}};
        std::istringstream words(text);
        std::string w;
        while (words >> w) line.tokens.push_back(w);
        out.push_back(std::move(line));
    }
    return out;
}

template <class T>
T parse_int(const std::string& s, int line, const char* what) {
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(line, std::string("expected integer ") + what + ", got '" + s + "'");
    }
    return value;
}

double parse_real(const std::string& s, int line) {
    // strtod rather than from_chars<double>: the latter is missing from older libstdc++.
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw ParseError(line, "expected real weight, got '" + s + "'");
    }
    return v;
}

bool looks_real(std::string_view s) { return s.find_first_of(".eE") != std::string_view::npos; }

template <WeightType W>
BasicGraph<W> assemble(const std::vector<Line>& lines, int n_left, int n_right, std::size_t n_edges) {
    std::vector<Edge<W>> edges;
    edges.reserve(n_edges);
    for (std::size_t i = 0; i < n_edges; ++i) {
        const Line& ln = lines[i + 1];
        Edge<W> e;
        e.left = parse_int<int>(ln.tokens[0], ln.number, "left index");
        e.right = parse_int<int>(ln.tokens[1], ln.number, "right index");
        if constexpr (std::is_integral_v<W>) {
            e.weight = parse_int<W>(ln.tokens[2], ln.number, "weight");
        } else {
            e.weight = parse_real(ln.tokens[2], ln.number);
        }
        edges.push_back(e);
    }
    try {
        return BasicGraph<W>::build(n_left, n_right, edges);
    } catch (const GraphError& err) {
        const int where = err.edge_index() >= 0 ? lines[static_cast<std::size_t>(err.edge_index()) + 1].number
                                                : lines.front().number;
        throw ParseError(where, err.what());
    }
}

}  // namespace

AnyGraph read_graph(std::istream& in) {
    const auto lines = tokenize(in);
    if (lines.empty()) throw ParseError(1, "missing header 'n_left n_right n_edges'");
    const Line& header = lines.front();
    if (header.tokens.size() != 3) {
        throw ParseError(header.number, "header must be 'n_left n_right n_edges'");
    }
    const int n_left = parse_int<int>(header.tokens[0], header.number, "n_left");
    const int n_right = parse_int<int>(header.tokens[1], header.number, "n_right");
    const auto n_edges = parse_int<std::size_t>(header.tokens[2], header.number, "n_edges");
    if (n_left < 0 || n_right < 0) throw ParseError(header.number, "negative vertex count");

    if (lines.size() - 1 < n_edges) {
        const int last = lines.back().number;
        throw ParseError(last + 1, "expected " + std::to_string(n_edges) + " edge lines, found " +
                                       std::to_string(lines.size() - 1));
    }
    if (lines.size() - 1 > n_edges) {
        throw ParseError(lines[n_edges + 1].number, "unexpected content after the last edge");
    }
    bool real = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].tokens.size() != 3) {
            throw ParseError(lines[i].number, "edge line must be 'l r w'");
        }
        real = real || looks_real(lines[i].tokens[2]);
    }
    if (real) return assemble<double>(lines, n_left, n_right, n_edges);
    return assemble<std::int64_t>(lines, n_left, n_right, n_edges);
}

AnyGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_graph(in);
}

template <WeightType W>
void write_graph(std::ostream& out, const BasicGraph<W>& g) {
    out << g.n_left() << ' ' << g.n_right() << ' ' << g.n_edges() << '\n';
    if constexpr (!std::is_integral_v<W>) {
        out << std::setprecision(std::numeric_limits<double>::max_digits10);
    }
    for (int l = 0; l < g.n_left(); ++l) {
        for (const auto& nb : g.adj(l)) {
            out << l << ' ' << nb.right << ' ';
            if constexpr (!std::is_integral_v<W>) {
                // Keep a '.' or exponent so the file reads back in real mode.
                std::ostringstream w;
                w << std::setprecision(std::numeric_limits<double>::max_digits10) << nb.weight;
                std::string s = w.str();
                if (!looks_real(s)) s += ".0";
                out << s;
            } else {
                out << nb.weight;
            }
            out << '\n';
        }
    }
}

template void write_graph(std::ostream&, const BasicGraph<std::int64_t>&);
template void write_graph(std::ostream&, const BasicGraph<double>&);

}  // namespace bimatch
