"""Initial bounds: greedy equitable coloring (upper) and clique/degree (lower)."""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import EquitableColoring
from .graph import Graph, greedy_maximal_clique


@dataclass
class Bounds:
    lb: int
    ub: int
    incumbent: EquitableColoring


def _greedy_equitable(g: Graph, k: int, order: list[int]) -> tuple[int, ...] | None:
    n = g.n
    floor_, ceil_, n_big = n // k, -(-n // k), n % k
    sizes = [0] * (k + 1)
    big = 0  # classes currently above floor_
    assigned = [0] * n
    for v in order:
        used = {assigned[w] for w in g.adjacency[v]}
        best = 0
        for j in range(1, k + 1):
            if j in used:
                continue
            s = sizes[j]
            if s < floor_ or (s < ceil_ and big < n_big):
                if not best or s < sizes[best]:
                    best = j
        if not best:
            return None
        if sizes[best] == floor_:
            big += 1
        sizes[best] += 1
        assigned[v] = best
    return tuple(assigned)


def naive_heuristic(g: Graph, start_k: int) -> EquitableColoring:
    """Greedy equitable coloring trying k = start_k, start_k + 1, ... , n.

    Vertices go in non-increasing degree order into the smallest admissible
    class. A class is admissible while it stays below ``ceil(n/k)`` and at most
    ``n mod k`` classes rise above ``floor(n/k)``, so any completed pass is
    equitable. ``k = n`` always succeeds with singletons.
    """
    if not 1 <= start_k <= g.n:
        raise ValueError(f"start_k must lie in [1, {g.n}], got {start_k}")
    order = sorted(range(g.n), key=lambda v: (-g.degree[v], v))
    for k in range(start_k, g.n + 1):
        assigned = _greedy_equitable(g, k, order)
        if assigned is not None:
            return EquitableColoring(k, assigned)
    raise AssertionError("unreachable: k = n always succeeds")


def degree_bound(g: Graph) -> int:
    """Smallest k with ``floor(n/k) <= n - maxdeg``.

    The class holding a maximum-degree vertex has at least ``floor(n/k)``
    members and none of them are its neighbors.
    """
    n, free = g.n, g.n - g.max_degree
    k = 1
    while n // k > free:
        k += 1
    return k


def lower_bound(g: Graph) -> int:
    return max(len(greedy_maximal_clique(g)), degree_bound(g))


def initial_bounds(g: Graph) -> Bounds:
    lb = lower_bound(g)
    inc = naive_heuristic(g, lb)
    return Bounds(lb, inc.k, inc)
