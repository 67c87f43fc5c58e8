"""DSatur-style branch and bound for the equitable chromatic number.

The search walks partial colorings depth first, starting from a clique whose
members get colors ``1..q``. Every node picks one uncolored vertex and tries
each feasible color below the incumbent size. Under ``Pruning.EQUITY`` a child
is only visited when it can still grow into an equitable coloring with fewer
colors than the incumbent (rules P.1 and P.2 in :mod:`eqcol.coloring`), which
also makes every completed coloring equitable without a leaf test.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

from . import _kernel
from .bounds import lower_bound, naive_heuristic
from .coloring import EquitableColoring, PartialColoring, initial_partial
from .graph import Graph, complete_graph, greedy_maximal_clique


class Strategy(str, Enum):
    BRELAZ = "brelaz"
    SEWELL = "sewell"
    PASS = "pass"


class ColorOrder(str, Enum):
    INDEX = "index"
    SIZE_ASC = "size"


class Pruning(str, Enum):
    EQUITY = "equity"
    TRIVIAL = "trivial"


class Engine(str, Enum):
    COMPILED = "compiled"
    PYTHON = "python"


class Status(str, Enum):
    OPTIMAL = "OPTIMAL"
    TIME_LIMIT = "TIME_LIMIT"
    NODE_LIMIT = "NODE_LIMIT"


@dataclass(frozen=True)
class SolverConfig:
    strategy: Strategy = Strategy.PASS
    color_order: ColorOrder = ColorOrder.SIZE_ASC
    pruning: Pruning = Pruning.EQUITY
    time_limit: float = 7200.0
    node_limit: Optional[int] = None
    # both engines walk the same tree; tracing always uses the Python one
    engine: Engine = Engine.COMPILED

    def __post_init__(self):
        # accept plain strings, e.g. from the command line
        object.__setattr__(self, "strategy", Strategy(self.strategy))
        object.__setattr__(self, "color_order", ColorOrder(self.color_order))
        object.__setattr__(self, "pruning", Pruning(self.pruning))
        object.__setattr__(self, "engine", Engine(self.engine))
        if not self.time_limit > 0:
            raise ValueError(f"time_limit must be positive, got {self.time_limit}")
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError(f"node_limit must be positive, got {self.node_limit}")

    @property
    def label(self) -> str:
        return f"{self.strategy.value}-{self.color_order.value}-{self.pruning.value}"


# named configurations used by the benchmark harness
PRESETS = {
    "eqds1": dict(strategy=Strategy.PASS, color_order=ColorOrder.INDEX, pruning=Pruning.EQUITY),
    "eqds2": dict(strategy=Strategy.PASS, color_order=ColorOrder.SIZE_ASC, pruning=Pruning.EQUITY),
    "trivial": dict(strategy=Strategy.PASS, color_order=ColorOrder.INDEX, pruning=Pruning.TRIVIAL),
}


def config_from_label(label: str, **kwargs) -> SolverConfig:
    """``eqds1``/``eqds2``/``trivial`` or ``<strategy>-<order>-<pruning>``."""
    key = label.strip().lower()
    if key in PRESETS:
        return SolverConfig(**PRESETS[key], **kwargs)
    parts = key.split("-")
    if len(parts) != 3:
        raise ValueError(f"unknown config {label!r}")
    return SolverConfig(*parts, **kwargs)


@dataclass
class SolveResult:
    status: Status
    chi_eq: Optional[int]
    lb_final: int
    ub_final: int
    incumbent: EquitableColoring
    nodes: int
    wall_time: float
    lb0: int
    ub0: int

    @property
    def relative_gap(self) -> float:
        if self.status is Status.OPTIMAL:
            return 0.0
        return 100.0 * (self.ub_final - self.lb_final) / self.ub_final


# --------------------------------------------------------------------------
# branching rules


def select_vertex(pc: PartialColoring, strategy: Strategy) -> int:
    """Uncolored vertex of maximum saturation, ties broken per ``strategy``.

    BRELAZ prefers the largest degree among uncolored vertices. SEWELL prefers
    the vertex sharing the most feasible colors (among ``1..k``) with its
    uncolored neighbors; PASS counts only neighbors that are themselves in the
    maximum-saturation set. Remaining ties go to the lowest index.
    """
    if not pc.n_uncolored:
        raise ValueError("no uncolored vertex to select")
    level = pc.level
    s = pc.k
    while not level[s]:
        s -= 1
    pool = level[s]
    if not pool & (pool - 1):
        return pool.bit_length() - 1
    cands = []
    m = pool
    while m:
        low = m & -m
        cands.append(low.bit_length() - 1)
        m ^= low

    adj_mask = pc.graph.adj_mask
    if strategy is Strategy.BRELAZ:
        unc = pc.uncolored
        return max(cands, key=lambda v: ((adj_mask[v] & unc).bit_count(), -v))

    if strategy is not Strategy.PASS:
        pool = pc.uncolored
    forb = pc.forb
    kmask = (1 << (pc.k + 1)) - 2
    chosen, chosen_score = cands[0], -1
    for u in cands:
        fu = kmask & ~forb[u]
        score = 0
        m = adj_mask[u] & pool
        while m:
            low = m & -m
            score += (fu & ~forb[low.bit_length() - 1]).bit_count()
            m ^= low
        if score > chosen_score:
            chosen, chosen_score = u, score
    return chosen


def color_limit(k: int, ub: int) -> int:
    """Highest color a node may try: one new class at most, and below ``ub``."""
    return min(k + 1, ub - 1)


def order_colors(pc: PartialColoring, u: int, ub: int, policy: ColorOrder) -> list[int]:
    """Feasible colors for ``u`` up to :func:`color_limit`, in visiting order."""
    f = pc.forb[u]
    top = pc.k + 1 if pc.k + 1 < ub - 1 else ub - 1
    colors = [j for j in range(1, top + 1) if not f >> j & 1]
    if policy is ColorOrder.SIZE_ASC and len(colors) > 1:
        size = pc.size
        colors.sort(key=lambda j: (size[j], j))
    return colors


# --------------------------------------------------------------------------
# search


class _Stop(Exception):
    def __init__(self, status: Status | None):
        self.status = status  # None: proven optimal early (UB reached LB)


Trace = Callable[[str, dict], None]


class _Search:
    def __init__(self, g: Graph, config: SolverConfig, lb: int, ub: int,
                 incumbent: tuple[int, ...], deadline: float, trace: Trace | None):
        self.g = g
        self.n = g.n
        self.strategy = config.strategy
        self.order = config.color_order
        self.equity = config.pruning is Pruning.EQUITY
        self.node_limit = config.node_limit
        self.deadline = deadline
        self.lb = lb
        self.ub = ub
        self.incumbent = incumbent
        self.nodes = 0
        self.trace = trace
        self.pc: PartialColoring | None = None

    def run(self, pc: PartialColoring) -> None:
        self.pc = pc
        self.node()

    def record(self) -> None:
        pc = self.pc
        old = self.ub
        self.ub = pc.k
        self.incumbent = tuple(pc.color)
        if self.trace is not None:
            self.trace("incumbent", {"k": pc.k, "assigned": self.incumbent,
                                     "lb": self.lb, "ub_before": old})
        if self.ub <= self.lb:
            raise _Stop(None)

    def node(self) -> None:
        if self.nodes == self.node_limit:
            raise _Stop(Status.NODE_LIMIT)
        self.nodes += 1
        if time.perf_counter() > self.deadline:
            raise _Stop(Status.TIME_LIMIT)
        pc = self.pc
        if pc.k >= self.ub:
            return
        n = self.n

        if pc.n_uncolored == 0:
            if self.equity:
                recorded = True
            else:
                sizes = pc.size[1 : pc.k + 1]
                recorded = max(sizes) - min(sizes) <= 1
            if self.trace is not None:
                self.trace("leaf", {"k": pc.k, "assigned": tuple(pc.color),
                                    "recorded": recorded, "ub": self.ub})
            if recorded:
                self.record()
            return

        u = select_vertex(pc, self.strategy)
        size, forb = pc.size, pc.forb
        equity, lb = self.equity, self.lb
        ub = self.ub
        cap = (1 << ub) - 2  # colors 1..ub-1
        for j in order_colors(pc, u, ub, self.order):
            if self.ub != ub:
                # incumbent improved inside a previous sibling
                ub = self.ub
                if pc.k >= ub:
                    return
                cap = (1 << ub) - 2
                if any(not pc.color[v] and v != u and forb[v] & cap == cap for v in range(n)):
                    return
            if j >= ub:
                continue
            k2 = j if j > pc.k else pc.k
            sj = size[j] + 1
            M2 = sj if sj > pc.M else pc.M
            if equity:
                # P.2
                if M2 > -(-n // (k2 if k2 > lb else lb)):
                    continue
                # P.1 on the child's class sizes
                target = max(M2 - 1, n // (ub - 1))
                deficit = target - sj if sj < target else 0
                for r in range(1, k2 + 1):
                    if r != j:
                        s = size[r]
                        if s < target:
                            deficit += target - s
                if pc.n_uncolored - 1 < deficit:
                    continue
            if self.trace is not None:
                self.trace("assign", {"vertex": u, "color": j, "ub": ub})
            rec = (u, pc.k, pc.M, pc._place(u, j))
            dead = False
            for v in rec[3]:
                if forb[v] & cap == cap:
                    dead = True
                    break
            if not dead:
                self.node()
            pc.rollback(rec)


_CODES = {Strategy.BRELAZ: _kernel.BRELAZ, Strategy.SEWELL: _kernel.SEWELL, Strategy.PASS: _kernel.PASS,
          ColorOrder.INDEX: _kernel.INDEX, ColorOrder.SIZE_ASC: _kernel.SIZE_ASC}
PAUSE_EVERY = 1 << 14  # nodes between clock checks


def _run_compiled(root: PartialColoring, config: SolverConfig, lb: int, ub: int,
                  incumbent: tuple[int, ...], deadline: float):
    state = _kernel.KernelState(root, lb, ub, incumbent, _CODES[config.strategy],
                                _CODES[config.color_order], config.pruning is Pruning.EQUITY)
    node_limit = -1 if config.node_limit is None else config.node_limit
    while True:
        code = state.step(node_limit, state.nodes + PAUSE_EVERY)
        if code == _kernel.DONE:
            status = Status.OPTIMAL
            break
        if code == _kernel.NODE_LIMIT:
            status = Status.NODE_LIMIT
            break
        if time.perf_counter() > deadline:
            status = Status.TIME_LIMIT
            break
    return status, state.ub, state.incumbent_tuple(), state.nodes


_warm = False


def warm_up() -> None:
    """Compile (or load from cache) the compiled engine outside any timing."""
    global _warm
    if _warm:
        return
    _warm = True
    _run_compiled(initial_partial(complete_graph(2), [0, 1]), SolverConfig(), 1, 3, (1, 2),
                  time.perf_counter() + 60)


def branch_and_bound(g: Graph, config: SolverConfig, lb: int, incumbent: EquitableColoring,
                     clique=None, trace: Trace | None = None,
                     _start: float | None = None) -> SolveResult:
    """Run the tree search from explicit starting bounds.

    ``lb`` must not exceed the equitable chromatic number and ``incumbent``
    must be an equitable coloring; the root colors ``clique`` (default: the
    greedy maximal clique) with ``1..q``.
    """
    if config.engine is Engine.COMPILED and trace is None and _start is None:
        warm_up()
    start = time.perf_counter() if _start is None else _start
    if clique is None:
        clique = greedy_maximal_clique(g)
    ub = incumbent.k
    if lb > ub:
        raise ValueError(f"lower bound {lb} exceeds incumbent size {ub}")

    def result(status, ub_final, assigned, nodes):
        opt = status is Status.OPTIMAL
        return SolveResult(
            status=status,
            chi_eq=ub_final if opt else None,
            lb_final=ub_final if opt else lb,
            ub_final=ub_final,
            incumbent=EquitableColoring(ub_final, assigned),
            nodes=nodes,
            wall_time=time.perf_counter() - start,
            lb0=lb,
            ub0=ub,
        )

    if trace is not None:
        trace("incumbent", {"k": ub, "assigned": incumbent.assigned, "lb": lb, "ub_before": None})
    if ub == lb:
        return result(Status.OPTIMAL, ub, incumbent.assigned, 0)

    deadline = start + config.time_limit
    root = initial_partial(g, clique)
    if config.engine is Engine.COMPILED and trace is None:
        status, ub_final, assigned, nodes = _run_compiled(root, config, lb, ub, incumbent.assigned,
                                                          deadline)
        return result(status, ub_final, assigned, nodes)

    search = _Search(g, config, lb, ub, incumbent.assigned, deadline, trace)
    status = Status.OPTIMAL
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * g.n + 1000))
    try:
        search.run(root)
    except _Stop as stop:
        if stop.status is not None:
            status = stop.status
    finally:
        sys.setrecursionlimit(old_limit)
    return result(status, search.ub, search.incumbent, search.nodes)


def solve(g: Graph, config: SolverConfig | None = None, trace: Trace | None = None) -> SolveResult:
    """Compute the equitable chromatic number of ``g``.

    Starts from the greedy clique, the clique/degree lower bound and the
    greedy equitable coloring. ``trace(event, payload)``, if given, is called
    on every incumbent (``"incumbent"``), every completed coloring (``"leaf"``)
    and every color assignment (``"assign"``); it exists for instrumentation.
    """
    config = config or SolverConfig()
    if config.engine is Engine.COMPILED and trace is None:
        warm_up()
    start = time.perf_counter()
    clique = greedy_maximal_clique(g)
    lb = max(lower_bound(g), len(clique))
    naive = naive_heuristic(g, lb)
    return branch_and_bound(g, config, lb, naive, clique, trace, _start=start)
