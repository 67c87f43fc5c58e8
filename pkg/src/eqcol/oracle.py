"""Exhaustive equitable chromatic number for small graphs (test ground truth)."""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import EquitableColoring
from .graph import Graph


@dataclass(frozen=True)
class OracleResult:
    chi_eq: int
    witness: EquitableColoring


def _find_eqcol(g: Graph, k: int) -> tuple[int, ...] | None:
    n = g.n
    lo, hi = n // k, -(-n // k)
    assigned = [0] * n
    sizes = [0] * (k + 1)

    def rec(v: int, used: int) -> bool:
        if v == n:
            return used == k and all(lo <= sizes[j] <= hi for j in range(1, k + 1))
        # remaining vertices must be able to fill the unopened colors
        if k - used > n - v:
            return False
        for j in range(1, min(used + 1, k) + 1):
            if sizes[j] == hi:
                continue
            if any(assigned[w] == j for w in g.adjacency[v] if w < v):
                continue
            assigned[v] = j
            sizes[j] += 1
            if rec(v + 1, max(used, j)):
                return True
            sizes[j] -= 1
            assigned[v] = 0
        return False

    return tuple(assigned) if rec(0, 0) else None


def brute_force_chi_eq(g: Graph, max_n: int = 12) -> OracleResult:
    """Smallest k admitting an equitable k-coloring, by plain enumeration.

    Vertex ``v`` may only take colors ``1..(largest color so far) + 1``, which
    fixes the labelling of classes without losing any partition.
    """
    if g.n > max_n:
        raise ValueError(f"oracle limited to n <= {max_n}, got n={g.n}")
    for k in range(1, g.n + 1):
        found = _find_eqcol(g, k)
        if found is not None:
            return OracleResult(k, EquitableColoring(k, found))
    raise AssertionError("unreachable: k = n always admits singletons")
