"""Benchmark harness: suites of instances, per-run CSV rows, grouped summaries.

A suite file has one group per line::

    # comments and blank lines are skipped
    random 70 50 10 1000      # n, density, count, seed_base
    file instances/queen8_8.col

Densities above 1 are read as percentages (``50`` means 0.5). Random
instance ``i`` of a group uses seed ``seed_base + i``.
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from statistics import mean
from typing import Iterable, Optional, Sequence

from .graph import Graph, random_graph, read_dimacs
from .search import Status, config_from_label, solve


class SuiteError(ValueError):
    pass


@dataclass(frozen=True)
class SuiteEntry:
    kind: str  # "random" or "file"
    n: int = 0
    density: float = 0.0
    count: int = 0
    seed_base: int = 0
    path: str = ""


@dataclass(frozen=True)
class Instance:
    name: str
    graph: Graph
    density: Optional[float]  # None for files
    source: str


def _density(token: str) -> float:
    d = float(token)
    if d > 1:
        d /= 100.0
    if not 0 <= d <= 1:
        raise ValueError(f"density {token} out of range")
    return d


def parse_suite(text: str, base_dir: str | Path = ".") -> list[SuiteEntry]:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            if tokens[0] == "random" and len(tokens) == 5:
                n, count, seed = int(tokens[1]), int(tokens[3]), int(tokens[4])
                if n < 1 or count < 1:
                    raise ValueError("n and count must be positive")
                entries.append(SuiteEntry("random", n, _density(tokens[2]), count, seed))
            elif tokens[0] == "file" and len(tokens) == 2:
                path = Path(tokens[1])
                if not path.is_absolute():
                    path = Path(base_dir) / path
                entries.append(SuiteEntry("file", path=str(path)))
            else:
                raise ValueError(f"unrecognised line {line!r}")
        except ValueError as exc:
            raise SuiteError(f"suite line {lineno}: {exc}") from None
    if not entries:
        raise SuiteError("suite is empty")
    return entries


def expand_suite(entries: Iterable[SuiteEntry]) -> list[Instance]:
    out = []
    for e in entries:
        if e.kind == "random":
            for i in range(e.count):
                seed = e.seed_base + i
                g = random_graph(e.n, e.density, seed)
                name = f"random_n{e.n}_d{round(100 * e.density)}_s{seed}"
                out.append(Instance(name, g, e.density, f"random:seed={seed}"))
        else:
            g = read_dimacs(e.path)
            out.append(Instance(Path(e.path).stem, g, None, e.path))
    return out


# --------------------------------------------------------------------------
# rows


@dataclass(frozen=True)
class BenchRow:
    instance: str
    n: int
    m: int
    density: str  # probability, or "" for file instances
    source: str
    config: str
    lb0: int
    ub0: int
    status: str
    chi_eq: str  # "" unless OPTIMAL
    lb_final: int
    ub_final: int
    relative_gap: float
    nodes: int
    wall_time: float


CSV_COLUMNS = [f.name for f in fields(BenchRow)]
TIME_COLUMNS = ("wall_time",)


def run_one(instance: Instance, config_label: str, time_limit: float,
            node_limit: Optional[int] = None) -> BenchRow:
    config = config_from_label(config_label, time_limit=time_limit, node_limit=node_limit)
    r = solve(instance.graph, config)
    return BenchRow(
        instance=instance.name,
        n=instance.graph.n,
        m=instance.graph.m,
        density="" if instance.density is None else repr(instance.density),
        source=instance.source,
        config=config_label,
        lb0=r.lb0,
        ub0=r.ub0,
        status=r.status.value,
        chi_eq="" if r.chi_eq is None else str(r.chi_eq),
        lb_final=r.lb_final,
        ub_final=r.ub_final,
        relative_gap=round(r.relative_gap, 4),
        nodes=r.nodes,
        wall_time=round(r.wall_time, 4),
    )


def _run_task(task):
    return run_one(*task)


def run_benchmark(instances: Sequence[Instance], configs: Sequence[str], time_limit: float = 7200.0,
                  jobs: Optional[int] = None, node_limit: Optional[int] = None) -> list[BenchRow]:
    """Solve every instance under every config; rows come back in task order."""
    for label in configs:
        config_from_label(label)  # fail early on bad labels
    tasks = [(inst, label, time_limit, node_limit) for inst in instances for label in configs]
    jobs = jobs or os.cpu_count() or 1
    if jobs == 1 or len(tasks) <= 1:
        return [_run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_task, tasks))


def write_csv(rows: Iterable[BenchRow], out) -> None:
    writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(asdict(row))


def rows_to_csv(rows: Iterable[BenchRow]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def read_csv(src) -> list[BenchRow]:
    reader = csv.DictReader(src)
    if reader.fieldnames != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV columns {reader.fieldnames}")
    casts = {f.name: f.type for f in fields(BenchRow)}
    conv = {"int": int, "float": float, "str": str}
    return [BenchRow(**{k: conv[casts[k]](v) for k, v in rec.items()}) for rec in reader]


# --------------------------------------------------------------------------
# aggregation


@dataclass(frozen=True)
class GroupSummary:
    n: int
    group: str  # density in percent, or the instance name for files
    config: str
    instances: int
    pct_solved: float
    mean_gap: float
    mean_time: Optional[float]  # over solved runs; None when nothing solved

    def cells(self) -> list[str]:
        t = "-" if self.mean_time is None else f"{self.mean_time:.2f}"
        return [str(self.n), self.group, self.config, str(self.instances),
                f"{self.pct_solved:.0f}", f"{self.mean_gap:.1f}", t]


def aggregate(rows: Sequence[BenchRow]) -> list[GroupSummary]:
    """Group by (n, density or source, config) in first-seen order."""
    groups: dict[tuple, list[BenchRow]] = {}
    for r in rows:
        key = (r.n, r.density or r.instance, r.config)
        groups.setdefault(key, []).append(r)
    out = []
    for (n, group, config), rs in groups.items():
        solved = [r for r in rs if r.status == Status.OPTIMAL.value]
        if rs[0].density:
            group = f"{100 * float(rs[0].density):g}"
        out.append(GroupSummary(
            n=n,
            group=group,
            config=config,
            instances=len(rs),
            pct_solved=100.0 * len(solved) / len(rs),
            mean_gap=mean(r.relative_gap for r in rs),
            mean_time=mean(r.wall_time for r in solved) if solved else None,
        ))
    return out


def format_table(summaries: Sequence[GroupSummary]) -> str:
    header = ["n", "%density", "config", "inst", "%solved", "%gap", "time"]
    body = [s.cells() for s in summaries]
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in [header] + body]
    return "\n".join(lines) + "\n"
