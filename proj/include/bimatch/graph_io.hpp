// SPDX-License-Identifier: Apache-2.0
//
// Plain-text graph format, one graph per file:
//
//   # comment lines start with '#'
//   n_left n_right n_edges
//   l r w          (n_edges lines, 0-based indices)
//
// Tokens are whitespace separated. Weights are integers unless any weight in
// the file contains '.' or an exponent, in which case the whole file is read
// in real mode.

#ifndef BIMATCH_GRAPH_IO_HPP
#define BIMATCH_GRAPH_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include "bimatch/graph.hpp"

namespace bimatch {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

using AnyGraph = std::variant<Graph, RealGraph>;

AnyGraph read_graph(std::istream& in);
AnyGraph read_graph_file(const std::string& path);

/// Writes g in normalized orientation.
template <WeightType W>
void write_graph(std::ostream& out, const BasicGraph<W>& g);

}  // namespace bimatch

#endif  // BIMATCH_GRAPH_IO_HPP
