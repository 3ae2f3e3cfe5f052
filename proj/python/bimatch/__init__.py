"""Maximum weight bipartite matching."""

from ._core import (
    Graph,
    GraphError,
    OracleLimitError,
    ParseError,
    RealGraph,
    RealResult,
    Result,
    UncleanGraphError,
    brute_force,
    generate,
    read_graph,
    solve,
)

__all__ = [
    "Graph",
    "GraphError",
    "OracleLimitError",
    "ParseError",
    "RealGraph",
    "RealResult",
    "Result",
    "UncleanGraphError",
    "brute_force",
    "generate",
    "read_graph",
    "solve",
]
