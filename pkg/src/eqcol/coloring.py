"""Partial colorings, the extension step, equity checks and pruning rules.

Colors are ``1..n``; ``0`` marks an uncolored vertex. Feasible color sets are
stored inverted: ``forb[v]`` has bit ``j`` set when some colored neighbor of
``v`` holds color ``j``, so ``j`` is feasible for ``v`` iff that bit is clear.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph


@dataclass(frozen=True)
class EquitableColoring:
    k: int
    assigned: tuple[int, ...]  # color in 1..k per vertex

    @property
    def class_sizes(self) -> tuple[int, ...]:
        counts = Counter(self.assigned)
        return tuple(counts.get(j, 0) for j in range(1, self.k + 1))

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for v, c in enumerate(self.assigned):
            out[c - 1].append(v)
        return out

    def format(self) -> str:
        """``s <k>`` header, then ``<vertex> <color>`` per vertex, both 1-based."""
        lines = [f"s {self.k}"]
        lines += [f"{v + 1} {c}" for v, c in enumerate(self.assigned)]
        return "\n".join(lines) + "\n"


def is_proper(g: Graph, assigned: Sequence[int]) -> bool:
    return all(assigned[u] != assigned[v] for u, v in g.edges())


def validate_equitable(g: Graph, c: EquitableColoring) -> bool:
    """True iff ``c`` is proper, uses every color 1..k, and is balanced."""
    if len(c.assigned) != g.n:
        raise ValueError(f"assignment covers {len(c.assigned)} vertices, graph has {g.n}")
    for v, col in enumerate(c.assigned):
        if not 1 <= col <= c.k:
            raise ValueError(f"vertex {v} has color {col} outside 1..{c.k}")
    if not is_proper(g, c.assigned):
        return False
    lo, hi = g.n // c.k, -(-g.n // c.k)
    return all(s >= 1 and lo <= s <= hi for s in c.class_sizes)


# --------------------------------------------------------------------------
# pruning predicates on raw quantities


def p1_condition(n: int, n_uncolored: int, class_sizes: Iterable[int], ub: int) -> bool:
    """Uncolored vertices suffice to lift every class to the equity threshold.

    The threshold is ``max(M - 1, n // (ub - 1))`` with ``M`` the largest class.
    """
    if ub <= 1:
        raise ValueError(f"P.1 needs ub >= 2, got {ub}")
    sizes = list(class_sizes)
    target = max(max(sizes) - 1, n // (ub - 1))
    deficit = sum(target - s for s in sizes if s < target)
    return n_uncolored >= deficit


def p2_condition(n: int, k: int, max_size: int, lb: int) -> bool:
    """Largest class fits under ``ceil(n / max(k, lb))``."""
    return max_size <= -(-n // max(k, lb))


# --------------------------------------------------------------------------
# partial coloring


class PartialColoring:
    """Mutable partial coloring with an undo log.

    :meth:`apply` colors one vertex in place and returns an undo record;
    :meth:`rollback` must receive records in LIFO order. :func:`extend` gives
    the value-level (copying) version of the same step.
    """

    __slots__ = ("graph", "n", "k", "M", "color", "size", "forb", "sat", "level",
                 "uncolored", "n_uncolored")

    def __init__(self, g: Graph):
        self.graph = g
        self.n = g.n
        self.k = 0
        self.M = 0
        self.color = [0] * g.n
        self.size = [0] * (g.n + 2)
        self.forb = [0] * g.n
        self.sat = [0] * g.n
        # level[s]: bitmask of uncolored vertices with saturation s
        self.level = [0] * (g.n + 2)
        self.uncolored = (1 << g.n) - 1
        self.level[0] = self.uncolored
        self.n_uncolored = g.n

    def copy(self) -> PartialColoring:
        new = PartialColoring.__new__(PartialColoring)
        new.graph, new.n, new.k, new.M = self.graph, self.n, self.k, self.M
        new.color = self.color[:]
        new.size = self.size[:]
        new.forb = self.forb[:]
        new.sat = self.sat[:]
        new.level = self.level[:]
        new.uncolored = self.uncolored
        new.n_uncolored = self.n_uncolored
        return new

    # -- queries ----------------------------------------------------------

    @property
    def uncolored_vertices(self) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if not self.color[v])

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(self.size[1 : self.k + 1])

    def color_class(self, j: int) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if self.color[v] == j)

    def feasible(self, u: int, limit: int | None = None) -> frozenset[int]:
        """F(u) restricted to colors ``1..limit`` (default ``n``)."""
        top = self.n if limit is None else limit
        f = self.forb[u]
        return frozenset(j for j in range(1, top + 1) if not f >> j & 1)

    def saturation(self, u: int) -> int:
        return self.sat[u]

    def is_complete(self) -> bool:
        return self.n_uncolored == 0

    def to_coloring(self) -> EquitableColoring:
        if self.n_uncolored:
            raise ValueError("partial coloring still has uncolored vertices")
        return EquitableColoring(self.k, tuple(self.color))

    # -- mutation ----------------------------------------------------------

    def apply(self, u: int, j: int) -> tuple:
        """Put ``u`` into class ``j`` in place; returns the undo record."""
        color = self.color
        if color[u]:
            raise ValueError(f"vertex {u} is already colored")
        if self.forb[u] >> j & 1 or not 1 <= j <= self.k + 1:
            raise ValueError(f"color {j} is not feasible for vertex {u}")
        k, M = self.k, self.M
        return (u, k, M, self._place(u, j))

    def _place(self, u: int, j: int) -> list[int]:
        # unchecked hot path shared with the search
        self.color[u] = j
        self.uncolored &= ~(1 << u)
        self.level[self.sat[u]] &= ~(1 << u)
        self.n_uncolored -= 1
        s = self.size[j] + 1
        self.size[j] = s
        if s > self.M:
            self.M = s
        if j > self.k:
            self.k = j
        bit = 1 << j
        forb, sat, color, level = self.forb, self.sat, self.color, self.level
        touched = []
        for v in self.graph.adjacency[u]:
            if not color[v] and not forb[v] & bit:
                forb[v] |= bit
                s = sat[v]
                vb = 1 << v
                level[s] ^= vb
                level[s + 1] |= vb
                sat[v] = s + 1
                touched.append(v)
        return touched

    def rollback(self, record: tuple) -> None:
        u, k, M, touched = record
        j = self.color[u]
        mask = ~(1 << j)
        forb, sat, level = self.forb, self.sat, self.level
        for v in touched:
            forb[v] &= mask
            s = sat[v]
            vb = 1 << v
            level[s] ^= vb
            level[s - 1] |= vb
            sat[v] = s - 1
        self.size[j] -= 1
        self.color[u] = 0
        self.uncolored |= 1 << u
        self.level[sat[u]] |= 1 << u
        self.n_uncolored += 1
        self.k = k
        self.M = M


def initial_partial(g: Graph, clique: Iterable[int]) -> PartialColoring:
    """The partial q-coloring putting the i-th clique member (ascending) in class i."""
    members = sorted(clique)
    if not members:
        raise ValueError("clique must be nonempty")
    if not g.is_clique(members):
        raise ValueError(f"{members} is not a clique")
    pc = PartialColoring(g)
    for i, v in enumerate(members, start=1):
        pc.apply(v, i)
    return pc


def extend(pc: PartialColoring, u: int, j: int) -> PartialColoring:
    """Return a new partial coloring with ``u`` added to class ``j``."""
    new = pc.copy()
    new.apply(u, j)
    return new


def check_p1(pc: PartialColoring, ub: int) -> bool:
    return p1_condition(pc.n, pc.n_uncolored, pc.class_sizes, ub)


def check_p2(pc: PartialColoring, lb: int) -> bool:
    return p2_condition(pc.n, pc.k, pc.M, lb)
