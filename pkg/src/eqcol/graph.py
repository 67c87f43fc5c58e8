"""Simple undirected graphs, DIMACS ``.col`` I/O and instance generators.

Vertices are ``0..n-1`` internally. DIMACS files use 1-based labels and the
conversion happens only in :func:`parse_dimacs` / :func:`write_dimacs`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, TextIO

VertexSet = frozenset  # members are vertex indices in [0, n)


class DimacsError(ValueError):
    """Malformed DIMACS input; ``lineno`` is 1-based (0 when not line-specific)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[frozenset[int], ...]
    # bit v of adj_mask[u] is set iff {u, v} is an edge
    adj_mask: tuple[int, ...] = field(init=False, repr=False, compare=False)
    degree: tuple[int, ...] = field(init=False, repr=False, compare=False)
    m: int = field(init=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={self.n}")
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency length does not match n")
        for u, nbrs in enumerate(self.adjacency):
            if u in nbrs:
                raise ValueError(f"self-loop at vertex {u}")
            for v in nbrs:
                if not 0 <= v < self.n:
                    raise ValueError(f"neighbor {v} of {u} out of range")
                if u not in self.adjacency[v]:
                    raise ValueError(f"adjacency not symmetric at {{{u}, {v}}}")
        masks = tuple(sum(1 << v for v in nbrs) for nbrs in self.adjacency)
        object.__setattr__(self, "adj_mask", masks)
        object.__setattr__(self, "degree", tuple(len(a) for a in self.adjacency))
        object.__setattr__(self, "m", sum(self.degree) // 2)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(a) for a in adj))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adjacency[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    @property
    def max_degree(self) -> int:
        return max(self.degree)

    @property
    def density(self) -> float:
        if self.n < 2:
            return 0.0
        return self.m / (self.n * (self.n - 1) / 2)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(u, v) for u, v in combinations(vs, 2))


# --------------------------------------------------------------------------
# DIMACS


def parse_dimacs(text: str | TextIO) -> Graph:
    """Parse DIMACS ``.col`` text (``c`` comments, ``p edge n m``, ``e u v``).

    The declared edge count is ignored; duplicates and reversed copies of an
    edge collapse into one.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    n = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(lines, start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        kind = tokens[0]
        if kind == "p":
            if n is not None:
                raise DimacsError("second problem line", lineno)
            if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                raise DimacsError(f"malformed problem line {raw.strip()!r}", lineno)
            try:
                n, _declared_m = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise DimacsError(f"non-integer in problem line {raw.strip()!r}", lineno) from None
            if n < 1:
                raise DimacsError(f"vertex count must be positive, got {n}", lineno)
        elif kind == "e":
            if n is None:
                raise DimacsError("edge line before problem line", lineno)
            if len(tokens) != 3:
                raise DimacsError(f"malformed edge line {raw.strip()!r}", lineno)
            try:
                u, v = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise DimacsError(f"non-integer vertex in {raw.strip()!r}", lineno) from None
            for x in (u, v):
                if not 1 <= x <= n:
                    raise DimacsError(f"vertex {x} outside [1, {n}]", lineno)
            if u == v:
                raise DimacsError(f"self-loop on vertex {u}", lineno)
            edges.add((min(u, v) - 1, max(u, v) - 1))
        else:
            raise DimacsError(f"unknown line type {kind!r}", lineno)
    if n is None:
        raise DimacsError("missing problem line 'p edge <n> <m>'")
    return Graph.from_edges(n, edges)


def read_dimacs(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_dimacs(fh.read())


def write_dimacs(g: Graph, comments: Iterable[str] = ()) -> str:
    out = [f"c {c}" for c in comments]
    edges = g.edges()
    out.append(f"p edge {g.n} {len(edges)}")
    out.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# generators


def random_graph(n: int, density: float, seed: int) -> Graph:
    """G(n, p) with pairs visited in lexicographic ``u < v`` order.

    Uses :class:`random.Random` (Mersenne Twister) seeded with ``seed``; each
    pair consumes exactly one draw, so the same arguments give the same graph.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must lie in [0, 1], got {density}")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density]
    return Graph.from_edges(n, edges)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves}; the center is vertex 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def queen_graph(rows: int, cols: int | None = None) -> Graph:
    """Queen moves on a board, squares numbered row-major (DIMACS ``queenR_C``)."""
    cols = rows if cols is None else cols
    cells = [(r, c) for r in range(rows) for c in range(cols)]
    edges = [
        (i, j)
        for (i, (r1, c1)), (j, (r2, c2)) in combinations(enumerate(cells), 2)
        if r1 == r2 or c1 == c2 or abs(r1 - r2) == abs(c1 - c2)
    ]
    return Graph.from_edges(rows * cols, edges)


def mycielski_graph(i: int) -> Graph:
    """DIMACS ``myciel{i}``: chromatic number ``i + 1``, no triangles.

    Built by applying the Mycielskian ``i - 1`` times to K2; vertex ``v`` gets
    shadow ``n + v`` and the apex is ``2n``, which reproduces the DIMACS
    labelling.
    """
    if i < 1:
        raise ValueError("i must be >= 1")
    g = complete_graph(2)
    for _ in range(i - 1):
        n = g.n
        edges = list(g.edges())
        for u, v in g.edges():
            edges += [(u, n + v), (v, n + u)]
        edges += [(n + i, 2 * n) for i in range(n)]
        g = Graph.from_edges(2 * n + 1, edges)
    return g


# --------------------------------------------------------------------------
# cliques


def greedy_maximal_clique(g: Graph) -> VertexSet:
    """Grow a clique from a maximum-degree vertex by highest-degree candidates.

    Ties go to the lowest index. The result is maximal (not maximum).
    """
    deg = g.degree
    first = max(range(g.n), key=lambda v: (deg[v], -v))
    clique = [first]
    candidates = set(g.adjacency[first])
    while candidates:
        v = max(candidates, key=lambda w: (deg[w], -w))
        clique.append(v)
        candidates &= g.adjacency[v]
    return frozenset(clique)


def is_maximal_clique(g: Graph, q: Iterable[int]) -> bool:
    q = set(q)
    if not g.is_clique(q):
        return False
    return not any(q <= g.adjacency[v] for v in range(g.n) if v not in q)
