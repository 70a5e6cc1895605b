"""Compiled vs pure-Python kernels, plus an end-to-end replay in each mode.

    python benchmarks/bench_kernels.py [--repeat 5] [--skip-replay]
"""

from __future__ import annotations

import argparse
import json
import os
import random
import subprocess
import sys
import timeit

from dynqc import _pykernels

try:
    from dynqc import _kernels
except ImportError:
    _kernels = None

REPLAY = """
import json, time
from dynqc import kernels
from dynqc.bench import run
from dynqc.dmi import EngineParams
from dynqc.workload import gen_random, planted_graph
g = planted_graph(4039, [200, 150, 120, 100, 80] + [40] * 5, p_in=0.97, p_out=0.003, seed=1)
s = gen_random(g.copy(), 3000, seed=2)
out = {}
for backend in ("bt", "bf"):
    t = time.perf_counter()
    rep = run(g.copy(), s, "dmi", EngineParams(backend=backend))
    out[backend] = {"total_s": time.perf_counter() - t, "init_s": rep.init_time_s,
                    "mean_latency_us": rep.summary()["mean_latency_us"]}
print(json.dumps({"compiled": kernels.COMPILED, **out}))
"""


def cases(rng):
    seeds = [rng.getrandbits(64) for _ in range(8)]
    items = rng.sample(range(10 ** 9), 200)
    a = sorted(rng.getrandbits(64) for _ in range(300))
    b = sorted(set(a[:150]) | {rng.getrandbits(64) for _ in range(150)})
    mins = [rng.getrandbits(64) for _ in range(8)]
    others = [sorted(set(a[:100]) | {rng.getrandbits(64) for _ in range(100)}) for _ in range(200)]
    other_mins = [[m if rng.random() < 0.7 else rng.getrandbits(64) for m in mins] for _ in range(200)]
    sizes = [201] * 200
    return {
        "hash_many(200)": lambda m: m.hash_many(seeds[0], items),
        "slot_hashes(k=8)": lambda m: m.slot_hashes(seeds, 12345),
        "smallest_per_slot(k=8, 200, l=8)": lambda m: m.smallest_per_slot(seeds, items, 8),
        "bottomk_common(300, 300, k=8)": lambda m: m.bottomk_common(a, b, 8),
        "bottomk_common(300, 300, k=256)": lambda m: m.bottomk_common(a, b, 256),
        "count_equal(8)": lambda m: m.count_equal(mins, mins),
        "select_bottomk(200 nbrs, k=8)": lambda m: m.select_bottomk(a, others, 8, 301, sizes, 0.9),
        "select_buffered(200 nbrs, k=8)": lambda m: m.select_buffered(mins, other_mins, 8, 300, sizes, 301,
                                                                      sizes, 0.9),
    }


def bench_kernels(repeat: int) -> list[dict]:
    rows = []
    for name, fn in cases(random.Random(0)).items():
        row = {"kernel": name}
        for label, mod in (("pure_us", _pykernels), ("compiled_us", _kernels)):
            if mod is None:
                row[label] = None
                continue
            timer = timeit.Timer(lambda: fn(mod))
            n, _ = timer.autorange()
            row[label] = min(timer.repeat(repeat, n)) / n * 1e6
        if row["compiled_us"]:
            row["speedup"] = row["pure_us"] / row["compiled_us"]
        rows.append(row)
    return rows


def bench_replay() -> dict:
    out = {}
    for mode, env in (("compiled", {}), ("pure", {"DYNQC_PURE_PYTHON": "1"})):
        res = subprocess.run([sys.executable, "-c", REPLAY], env={**os.environ, **env},
                             capture_output=True, text=True, check=True)
        out[mode] = json.loads(res.stdout)
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-replay", action="store_true")
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; only pure timings are shown", file=sys.stderr)
    print(f"{'kernel':36} {'pure us':>10} {'compiled us':>12} {'speedup':>8}")
    for r in bench_kernels(args.repeat):
        comp = f"{r['compiled_us']:12.2f}" if r["compiled_us"] else f"{'n/a':>12}"
        sp = f"{r['speedup']:7.1f}x" if r.get("speedup") else f"{'':>8}"
        print(f"{r['kernel']:36} {r['pure_us']:10.2f} {comp} {sp}")
    if not args.skip_replay:
        rep = bench_replay()
        print("\nend-to-end: dmi on a 4039-vertex planted graph, 3000 rand ops")
        for mode, res in rep.items():
            for backend in ("bt", "bf"):
                r = res[backend]
                print(f"  {mode:9} {backend}: total {r['total_s']:.2f}s, init {r['init_s']:.3f}s, "
                      f"mean latency {r['mean_latency_us']:.1f} us")
    return 0


if __name__ == "__main__":
    sys.exit(main())
