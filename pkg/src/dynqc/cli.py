"""Command-line entry point: ``dynqc {run,sweep,gen,oracle}``.

Exit codes: 0 ok, 2 bad input, 3 invariant violation (``--check-invariants``).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import workload
from .bench import InvariantViolation, run, sweep, sweep_csv, write_report
from .dmi import EngineParams
from .graph import InputError
from .oracle import OracleLimits, max_quasi_clique_exact
from .sketch import DEFAULT_SEED

SEED_ENV = "DYNQC_SEED"


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw, 0)
    except ValueError:
        raise InputError(f"{SEED_ENV}={raw!r} is not an integer") from None


def _add_engine_args(p: argparse.ArgumentParser) -> None:
    d = EngineParams()
    p.add_argument("--engine", choices=("dmi", "nsf", "static"), default="dmi")
    p.add_argument("--backend", choices=("exact", "bf", "bt"), default=d.backend)
    p.add_argument("--gamma", type=float, default=d.gamma)
    p.add_argument("--b", type=float, default=d.b)
    p.add_argument("--alpha", type=float, default=d.alpha)
    p.add_argument("--rtol", type=float, default=d.r_tol)
    p.add_argument("--B", type=int, default=d.B)
    p.add_argument("--batch", type=int, default=d.batch)
    p.add_argument("--k", type=int, default=d.k)
    p.add_argument("--l", type=int, default=d.l)
    p.add_argument("--R", type=int, default=d.R)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                   help=f"hash/stream seed (default: ${SEED_ENV} or {DEFAULT_SEED:#x})")
    p.add_argument("--halt-when-full", action="store_true",
                   help="only stop the build scan once the candidate list is full")
    p.add_argument("--paper-literal-gamma", action="store_true",
                   help="use the uncorrected gamma-degree update rule (drifts from recomputation)")


def _params(args) -> EngineParams:
    seed = args.seed if args.seed is not None else _default_seed()
    p = EngineParams(gamma=args.gamma, b=args.b, alpha=args.alpha, r_tol=args.rtol, B=args.B,
                     batch=args.batch, backend=args.backend, k=args.k, l=args.l, seed=seed, R=args.R,
                     halt_when_full=args.halt_when_full, paper_literal_gamma=args.paper_literal_gamma)
    p.validate()
    return p


def _load(args, params: EngineParams):
    edges = workload.read_edge_list(args.dataset)
    stream = workload.read_stream(args.stream) if args.stream else workload.OperationStream()
    extra = [x for op in stream.ops for x in (op.u, op.v)]
    g, ids = workload.load_graph(edges, extra, params.gamma, params.paper_literal_gamma)
    return g, ids, stream, edges, extra


def _grid(specs) -> dict:
    grid: dict = {}
    for spec in specs or ():
        if "=" not in spec:
            raise InputError(f"grid entry {spec!r} must look like name=v1,v2")
        name, vals = spec.split("=", 1)
        name = {"rtol": "r_tol"}.get(name, name)
        conv = int if name in ("k", "batch", "B", "R", "l") else float
        try:
            grid[name] = [conv(x) for x in vals.split(",") if x]
        except ValueError:
            raise InputError(f"bad values in grid entry {spec!r}") from None
        if not grid[name]:
            raise InputError(f"grid entry {spec!r} has no values")
    return grid


def cmd_run(args) -> int:
    params = _params(args)
    g, ids, stream, _, _ = _load(args, params)
    report = run(g, stream, args.engine, params, check_invariants=args.check_invariants, ids=ids)
    if args.out:
        write_report(report, args.out)
    json.dump(report.summary(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def cmd_sweep(args) -> int:
    params = _params(args)
    grid = _grid(args.grid)
    _, ids, stream, edges, extra = _load(args, params)

    def fresh():
        return workload.load_graph(edges, extra, params.gamma, params.paper_literal_gamma)[0]

    reports = sweep(fresh, stream, grid, args.engine, params, ids=ids)
    text = sweep_csv(reports)
    if args.out:
        with open(f"{args.out}.sweep.csv", "w", encoding="utf-8") as fh:
            fh.write(text)
        for i, rep in enumerate(reports):
            write_report(rep, f"{args.out}.{i}")
    sys.stdout.write(text)
    return 0


def cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.flavor in ("temp", "tinc"):
        events, bad = workload.read_temporal_edges(args.dataset)
        initial, stream, skipped = workload.from_temporal(events, args.q, seed, args.flavor)
        init_path = args.initial_out or f"{args.out}.initial.edges"
        with open(init_path, "w", encoding="utf-8") as fh:
            fh.write(f"# initial graph for {args.out}\n")
            for u, v in initial:
                fh.write(f"{u} {v}\n")
        print(f"initial graph: {len(initial)} edges -> {init_path}; skipped {bad + skipped} records",
              file=sys.stderr)
    else:
        edges = workload.read_edge_list(args.dataset)
        g, ids = workload.load_graph(edges)
        stream = workload.unmap_stream(workload.generate(args.flavor, g, args.q, seed), ids)
    workload.write_stream(stream, args.out)
    print(f"wrote {len(stream)} operations to {args.out}", file=sys.stderr)
    return 0


def cmd_oracle(args) -> int:
    edges = workload.read_edge_list(args.dataset)
    g, ids = workload.load_graph(edges)
    best = max_quasi_clique_exact(g, args.alpha, OracleLimits(max_n=args.max_n))
    out = {
        "alpha": args.alpha,
        "size": len(best),
        "density": round(g.density(best), 4),
        "vertices": sorted(ids.to_orig[w] for w in best),
    }
    json.dump(out, sys.stdout)
    sys.stdout.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dynqc", description="Maintain near-maximum quasi-cliques under edge updates.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="replay a stream through one engine")
    p.add_argument("--dataset", required=True, help="edge-list file")
    p.add_argument("--stream", help="operation-stream file (omit for init-only)")
    p.add_argument("--out", help="write <out>.ops.csv and <out>.summary.json")
    p.add_argument("--check-invariants", action="store_true",
                   help="verify the candidate list after every update (exit 3 on failure)")
    _add_engine_args(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="run a parameter grid")
    p.add_argument("--dataset", required=True)
    p.add_argument("--stream")
    p.add_argument("--out", help="write <out>.sweep.csv plus per-point reports")
    p.add_argument("--grid", action="append", metavar="NAME=V1,V2",
                   help="parameter values to sweep (gamma, b, k, batch, B, ...)")
    _add_engine_args(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gen", help="generate an operation stream")
    p.add_argument("--dataset", required=True, help="edge list (temporal list for temp/tinc)")
    p.add_argument("--flavor", choices=workload.FLAVORS, default="rand")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--initial-out", help="initial-graph edge list for temp/tinc")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="exact maximum quasi-clique of a small graph")
    p.add_argument("--dataset", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--max-n", type=int, default=OracleLimits().max_n)
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
