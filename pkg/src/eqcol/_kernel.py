"""Compiled twin of the tree search in :mod:`eqcol.search`.

The search is the same depth-first walk with the same vertex and color
choices, rewritten as an explicit-stack loop over numpy arrays so numba can
compile it. Node counts match the Python engine exactly (see
``tests/test_kernel.py``). The loop stops every ``pause_at`` nodes so the
caller can check the wall clock and call again; all progress lives in the
arrays of :class:`KernelState`.

Vertex sets are uint64 words over colors: bit ``j`` of ``forb[v]`` (spread
over ``W`` words) marks color ``j`` as used by a neighbor of ``v``.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .coloring import PartialColoring

# return codes
DONE, NODE_LIMIT, PAUSED = 0, 1, 2
# strategy / order codes
BRELAZ, SEWELL, PASS = 0, 1, 2
INDEX, SIZE_ASC = 0, 1

# scalar slots
_NODES, _UB, _K, _M, _NUNC, _DEPTH, _PHASE, _TSP = range(8)
_ENTER, _NEXT = 0, 1

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ALL = np.uint64(0xFFFFFFFFFFFFFFFF)


@njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return (x * _H01) >> np.uint64(56)


@njit(cache=True, inline="always")
def _range_word(w, lo, hi):
    # bits lo..hi (inclusive) restricted to word w
    base = 64 * w
    a = max(lo, base)
    b = min(hi, base + 63)
    if a > b:
        return np.uint64(0)
    width = b - a + 1
    if width == 64:
        return _ALL
    return ((np.uint64(1) << np.uint64(width)) - np.uint64(1)) << np.uint64(a - base)


@njit(cache=True)
def _wiped(forb, v, ub, W):
    # every color 1..ub-1 forbidden for v
    for w in range(W):
        cw = _range_word(w, 1, ub - 1)
        if forb[v, w] & cw != cw:
            return False
    return True


@njit(cache=True)
def _select(n, W, adjm, color, sat, forb, k, strategy, cands):
    # max saturation among uncolored vertices, candidates ascending
    best = -1
    for v in range(n):
        if color[v] == 0 and sat[v] > best:
            best = sat[v]
    nc = 0
    for v in range(n):
        if color[v] == 0 and sat[v] == best:
            cands[nc] = v
            nc += 1
    if nc == 1:
        return cands[0]
    if strategy == BRELAZ:
        chosen, chosen_deg = cands[0], -1
        for i in range(nc):
            u = cands[i]
            d = 0
            for v in range(n):
                if color[v] == 0 and adjm[u, v]:
                    d += 1
            if d > chosen_deg:
                chosen, chosen_deg = u, d
        return chosen
    chosen, chosen_score = cands[0], -1
    for i in range(nc):
        u = cands[i]
        score = 0
        if strategy == PASS:
            for t in range(nc):
                v = cands[t]
                if adjm[u, v]:
                    for w in range(W):
                        score += np.int64(_popcount(_range_word(w, 1, k) & ~forb[u, w] & ~forb[v, w]))
        else:
            for v in range(n):
                if color[v] == 0 and adjm[u, v]:
                    for w in range(W):
                        score += np.int64(_popcount(_range_word(w, 1, k) & ~forb[u, w] & ~forb[v, w]))
        if score > chosen_score:
            chosen, chosen_score = u, score
    return chosen


@njit(cache=True)
def _rollback(d, sc, color, size, forb, sat, fu, fk, fm, ftstart, tstack):
    u = fu[d]
    j = color[u]
    wj = j >> 6
    clear = ~(np.uint64(1) << np.uint64(j & 63))
    for t in range(ftstart[d], sc[_TSP]):
        v = tstack[t]
        forb[v, wj] &= clear
        sat[v] -= 1
    sc[_TSP] = ftstart[d]
    size[j] -= 1
    color[u] = 0
    sc[_NUNC] += 1
    sc[_K] = fk[d]
    sc[_M] = fm[d]


@njit(cache=True)
def run(n, W, lb, adjm, adj_ptr, adj_idx, strategy, order, equity, node_limit, pause_at,
        sc, color, size, forb, sat, incumbent,
        fu, fk, fm, fub, fidx, fnc, fcand, ftstart, tstack, scratch):
    d = sc[_DEPTH]
    while True:
        if sc[_PHASE] == _ENTER:
            if sc[_NODES] == node_limit:
                sc[_DEPTH] = d
                return NODE_LIMIT
            if sc[_NODES] == pause_at:
                sc[_DEPTH] = d
                return PAUSED
            sc[_NODES] += 1
            k = sc[_K]
            ret = False
            if k >= sc[_UB]:
                ret = True
            elif sc[_NUNC] == 0:
                recorded = True
                if not equity:
                    lo, hi = n + 1, -1
                    for r in range(1, k + 1):
                        lo = min(lo, size[r])
                        hi = max(hi, size[r])
                    recorded = hi - lo <= 1
                if recorded:
                    sc[_UB] = k
                    for v in range(n):
                        incumbent[v] = color[v]
                    if k <= lb:
                        sc[_DEPTH] = d
                        return DONE
                ret = True
            else:
                u = _select(n, W, adjm, color, sat, forb, k, strategy, scratch)
                ub = sc[_UB]
                top = k + 1 if k + 1 < ub - 1 else ub - 1
                nc = 0
                for j in range(1, top + 1):
                    if not (forb[u, j >> 6] >> np.uint64(j & 63)) & np.uint64(1):
                        if order == SIZE_ASC:
                            # insertion by (size, j)
                            p = nc
                            while p > 0 and size[fcand[d, p - 1]] > size[j]:
                                fcand[d, p] = fcand[d, p - 1]
                                p -= 1
                            fcand[d, p] = j
                        else:
                            fcand[d, nc] = j
                        nc += 1
                fu[d] = u
                fnc[d] = nc
                fidx[d] = 0
                fub[d] = ub
                sc[_PHASE] = _NEXT
            if ret:
                if d == 0:
                    sc[_DEPTH] = d
                    return DONE
                d -= 1
                _rollback(d, sc, color, size, forb, sat, fu, fk, fm, ftstart, tstack)
                sc[_PHASE] = _NEXT
            continue

        # _NEXT: try the next color of frame d
        u = fu[d]
        k = sc[_K]
        if fidx[d] == fnc[d]:
            ret = True
        else:
            ret = False
            j = fcand[d, fidx[d]]
            fidx[d] += 1
            if sc[_UB] != fub[d]:
                # incumbent improved inside a previous sibling
                fub[d] = sc[_UB]
                if k >= fub[d]:
                    ret = True
                else:
                    for v in range(n):
                        if color[v] == 0 and v != u and _wiped(forb, v, fub[d], W):
                            ret = True
                            break
            if not ret:
                ub = fub[d]
                if j >= ub:
                    continue
                k2 = j if j > k else k
                sj = size[j] + 1
                M2 = sj if sj > sc[_M] else sc[_M]
                if equity:
                    # P.2
                    denom = k2 if k2 > lb else lb
                    if M2 > (n + denom - 1) // denom:
                        continue
                    # P.1 on the child's class sizes
                    target = max(M2 - 1, n // (ub - 1))
                    deficit = target - sj if sj < target else 0
                    for r in range(1, k2 + 1):
                        if r != j and size[r] < target:
                            deficit += target - size[r]
                    if sc[_NUNC] - 1 < deficit:
                        continue
                # place u into class j
                fk[d] = k
                fm[d] = sc[_M]
                ftstart[d] = sc[_TSP]
                color[u] = j
                sc[_NUNC] -= 1
                size[j] = sj
                sc[_M] = M2
                sc[_K] = k2
                wj = j >> 6
                bit = np.uint64(1) << np.uint64(j & 63)
                tsp = sc[_TSP]
                dead = False
                for t in range(adj_ptr[u], adj_ptr[u + 1]):
                    v = adj_idx[t]
                    if color[v] == 0 and not forb[v, wj] & bit:
                        forb[v, wj] |= bit
                        sat[v] += 1
                        tstack[tsp] = v
                        tsp += 1
                        if sat[v] >= ub - 1 and not dead:
                            dead = _wiped(forb, v, ub, W)
                sc[_TSP] = tsp
                if dead:
                    _rollback(d, sc, color, size, forb, sat, fu, fk, fm, ftstart, tstack)
                    continue
                d += 1
                sc[_PHASE] = _ENTER
                continue
        # frame d is finished: return to its parent
        if d == 0:
            sc[_DEPTH] = d
            return DONE
        d -= 1
        _rollback(d, sc, color, size, forb, sat, fu, fk, fm, ftstart, tstack)


class KernelState:
    """Arrays holding one compiled search, resumable between calls."""

    def __init__(self, pc: PartialColoring, lb: int, ub: int, incumbent, strategy: int, order: int,
                 equity: bool):
        g = pc.graph
        n = g.n
        self.n, self.lb = n, lb
        self.W = W = (n + 1) // 64 + 1
        self.strategy, self.order, self.equity = strategy, order, equity
        self.adjm = np.zeros((n, n), dtype=np.uint8)
        ptr = [0]
        idx = []
        for v in range(n):
            nbrs = sorted(g.adjacency[v])
            idx.extend(nbrs)
            ptr.append(len(idx))
            self.adjm[v, nbrs] = 1
        self.adj_ptr = np.array(ptr, dtype=np.int64)
        self.adj_idx = np.array(idx, dtype=np.int64)

        self.sc = np.zeros(8, dtype=np.int64)
        self.sc[_UB], self.sc[_K], self.sc[_M], self.sc[_NUNC] = ub, pc.k, pc.M, pc.n_uncolored
        self.color = np.array(pc.color, dtype=np.int64)
        self.size = np.array(pc.size, dtype=np.int64)
        self.sat = np.array(pc.sat, dtype=np.int64)
        self.forb = np.zeros((n, W), dtype=np.uint64)
        for v in range(n):
            f = pc.forb[v]
            for w in range(W):
                self.forb[v, w] = (f >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
        self.incumbent = np.array(incumbent, dtype=np.int64)

        depth = n + 1
        self.fu = np.zeros(depth, dtype=np.int64)
        self.fk = np.zeros(depth, dtype=np.int64)
        self.fm = np.zeros(depth, dtype=np.int64)
        self.fub = np.zeros(depth, dtype=np.int64)
        self.fidx = np.zeros(depth, dtype=np.int64)
        self.fnc = np.zeros(depth, dtype=np.int64)
        self.fcand = np.zeros((depth, n + 2), dtype=np.int64)
        self.ftstart = np.zeros(depth, dtype=np.int64)
        self.tstack = np.zeros(len(idx) + 1, dtype=np.int64)
        self.scratch = np.zeros(n, dtype=np.int64)

    def step(self, node_limit: int, pause_at: int) -> int:
        return run(self.n, self.W, self.lb, self.adjm, self.adj_ptr, self.adj_idx,
                   self.strategy, self.order, self.equity, node_limit, pause_at,
                   self.sc, self.color, self.size, self.forb, self.sat, self.incumbent,
                   self.fu, self.fk, self.fm, self.fub, self.fidx, self.fnc, self.fcand,
                   self.ftstart, self.tstack, self.scratch)

    @property
    def nodes(self) -> int:
        return int(self.sc[_NODES])

    @property
    def ub(self) -> int:
        return int(self.sc[_UB])

    def incumbent_tuple(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.incumbent)
