"""Exact equitable graph coloring by DSatur-style branch and bound."""

from .bounds import lower_bound, naive_heuristic
from .coloring import (
    EquitableColoring,
    PartialColoring,
    check_p1,
    check_p2,
    extend,
    initial_partial,
    validate_equitable,
)
from .graph import Graph, greedy_maximal_clique, parse_dimacs, random_graph, read_dimacs, write_dimacs
from .oracle import brute_force_chi_eq
from .search import ColorOrder, Engine, Pruning, SolverConfig, SolveResult, Status, Strategy, solve

__all__ = [
    "ColorOrder",
    "Engine",
    "EquitableColoring",
    "Graph",
    "PartialColoring",
    "Pruning",
    "SolveResult",
    "SolverConfig",
    "Status",
    "Strategy",
    "brute_force_chi_eq",
    "check_p1",
    "check_p2",
    "extend",
    "greedy_maximal_clique",
    "initial_partial",
    "lower_bound",
    "naive_heuristic",
    "parse_dimacs",
    "random_graph",
    "read_dimacs",
    "solve",
    "validate_equitable",
    "write_dimacs",
]
