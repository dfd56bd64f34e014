"""Shortest paths with negative lengths on sparse graphs."""

from ._core import (
    BudgetUnmet,
    Error,
    Graph,
    NegativeCycle,
    ParseError,
    Solution,
    Unreachable,
    bellman_ford,
    default_gamma,
    dijkstra,
    divide,
    generate,
    load_dimacs,
    load_dimacs_file,
    plant_negative_cycle,
    solve,
    solve_multi,
)

__all__ = [
    "BudgetUnmet",
    "Error",
    "Graph",
    "NegativeCycle",
    "ParseError",
    "Solution",
    "Unreachable",
    "bellman_ford",
    "default_gamma",
    "dijkstra",
    "divide",
    "generate",
    "load_dimacs",
    "load_dimacs_file",
    "plant_negative_cycle",
    "solve",
    "solve_multi",
]
