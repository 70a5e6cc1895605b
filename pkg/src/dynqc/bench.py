"""Replay an operation stream through an engine and record per-update metrics."""

from __future__ import annotations

import csv
import io
import itertools
import json
import resource
import statistics
import time
from dataclasses import asdict, dataclass, field

from .dmi import DMIEngine, EngineParams, StaticRebuildEngine
from .graph import DynamicGraph, InputError
from .nsf import NSFEngine
from .oracle import list_violations

ENGINES = {"dmi": DMIEngine, "nsf": NSFEngine, "static": StaticRebuildEngine}

CSV_COLUMNS = ("op_index", "kind", "u", "v", "latency_us", "best_size", "best_density", "rebuilt")
SWEEP_PARAMS = ("gamma", "b", "alpha", "k", "batch", "B", "r_tol", "R", "l")


class InvariantViolation(RuntimeError):
    pass


class ReplayCollision(InputError):
    pass


@dataclass
class OpRecord:
    op_index: int
    kind: str
    u: int
    v: int
    latency_us: float
    best_size: int
    best_density: float | None
    rebuilt: bool


@dataclass
class RunReport:
    engine: str
    params: dict
    init_time_s: float
    records: list[OpRecord] = field(default_factory=list)
    peak_memory_mb: float = 0.0

    @property
    def rebuild_count(self) -> int:
        return sum(1 for r in self.records if r.rebuilt)

    def summary(self) -> dict:
        lat = [r.latency_us for r in self.records]
        solved = [r for r in self.records if r.best_density is not None]
        return {
            "engine": self.engine,
            "params": self.params,
            "n_ops": len(self.records),
            "init_time_s": round(self.init_time_s, 6),
            "mean_latency_us": round(statistics.fmean(lat), 3) if lat else None,
            "median_latency_us": round(statistics.median(lat), 3) if lat else None,
            "mean_size": round(statistics.fmean(r.best_size for r in solved), 4) if solved else None,
            "mean_density": round(statistics.fmean(r.best_density for r in solved), 4) if solved else None,
            "no_solution_ops": len(self.records) - len(solved),
            "rebuild_count": self.rebuild_count,
            "peak_memory_mb_approx": round(self.peak_memory_mb, 1),
        }

    def to_csv(self, fh=None) -> str | None:
        own = fh is None
        fh = fh or io.StringIO()
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.records:
            dens = "NA" if r.best_density is None else f"{r.best_density:.4f}"
            w.writerow([r.op_index, r.kind, r.u, r.v, f"{r.latency_us:.3f}", r.best_size, dens, int(r.rebuilt)])
        return fh.getvalue() if own else None

    def quality_columns(self) -> list[tuple]:
        return [(r.op_index, r.kind, r.best_size,
                 None if r.best_density is None else round(r.best_density, 4)) for r in self.records]


def _peak_rss_mb() -> float:
    # ru_maxrss is KiB on Linux
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024.0


def run(graph: DynamicGraph, stream, engine: str = "dmi", params: EngineParams | None = None,
        check_invariants: bool = False, ids=None) -> RunReport:
    """Initialise ``engine`` on ``graph`` and replay ``stream`` one update at a time.

    Latency covers the engine call only.  ``ids`` (an IdMap) translates the
    stream's ids into the graph's dense universe when given.
    """
    params = params or EngineParams()
    params.validate()
    try:
        cls = ENGINES[engine]
    except KeyError:
        raise InputError(f"unknown engine {engine!r}; expected one of {sorted(ENGINES)}") from None
    t0 = time.perf_counter()
    eng = cls(graph, params)
    init = time.perf_counter() - t0
    report = RunReport(engine, asdict(params), init)
    lines = getattr(stream, "lines", None)
    for i, (kind, u, v) in enumerate(stream.ops):
        du, dv = (ids(u), ids(v)) if ids is not None else (u, v)
        if (kind == "+") == graph.has_edge(du, dv):
            where = f" (line {lines[i]})" if lines else ""
            raise ReplayCollision(f"operation {i}{where}: {kind} {u} {v} collides with current graph")
        before = eng.rebuild_count
        t = time.perf_counter_ns()
        eng.apply(kind, du, dv)
        best = eng.best()
        dt = (time.perf_counter_ns() - t) / 1000.0
        if check_invariants:
            alpha = params.alpha
            problems = list_violations(eng.cliques, graph, alpha, params.B if engine == "dmi" else None)
            if problems:
                raise InvariantViolation(f"after operation {i}: " + "; ".join(problems))
        report.records.append(OpRecord(
            i, kind, u, v, dt,
            len(best) if best is not None else 0,
            best.density if best is not None else None,
            eng.rebuild_count > before,
        ))
    report.peak_memory_mb = _peak_rss_mb()
    return report


def expand_grid(grid: dict) -> list[dict]:
    if not grid:
        return [{}]
    keys = list(grid)
    return [dict(zip(keys, vals)) for vals in itertools.product(*(grid[k] for k in keys))]


def sweep(make_graph, stream, grid: dict, engine: str = "dmi", base: EngineParams | None = None,
          ids=None) -> list[RunReport]:
    """One run per grid point; ``make_graph`` returns a fresh graph each call."""
    base = base or EngineParams()
    reports = []
    for point in expand_grid(grid):
        bad = set(point) - set(SWEEP_PARAMS)
        if bad:
            raise InputError(f"cannot sweep over {sorted(bad)}")
        params = base.with_(**point)
        rep = run(make_graph(), stream, engine, params, ids=ids)
        rep.params["grid_point"] = point
        reports.append(rep)
    return reports


def sweep_csv(reports: list[RunReport]) -> str:
    keys = sorted({k for r in reports for k in r.params.get("grid_point", {})})
    agg = ("n_ops", "mean_latency_us", "median_latency_us", "mean_size", "mean_density",
           "no_solution_ops", "rebuild_count", "init_time_s")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["engine", *keys, *agg])
    for r in reports:
        s = r.summary()
        point = r.params.get("grid_point", {})
        w.writerow([r.engine, *(point.get(k) for k in keys), *(s[a] for a in agg)])
    return buf.getvalue()


def write_report(report: RunReport, prefix: str) -> None:
    with open(f"{prefix}.ops.csv", "w", encoding="utf-8", newline="") as fh:
        report.to_csv(fh)
    with open(f"{prefix}.summary.json", "w", encoding="utf-8") as fh:
        json.dump(report.summary(), fh, indent=2)
        fh.write("\n")
