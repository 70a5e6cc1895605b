"""Datasets and operation streams.

Stream file format, one operation per line::

    %q 3 %seed 7 %flavor rand
    + 0 5
    - 2 3
    # comments allowed

Vertex ids in a stream file use the same id space as the dataset file they
accompany.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .graph import DynamicGraph, InputError

log = logging.getLogger(__name__)

FLAVORS = ("rand", "inc", "del", "temp", "tinc")


class Operation(NamedTuple):
    kind: str  # "+" insert, "-" delete
    u: int
    v: int


@dataclass
class OperationStream:
    ops: list[Operation] = field(default_factory=list)
    source_tag: str = "rand"
    seed: int | None = None
    lines: list[int] = field(default_factory=list)  # source line per op, when read from a file

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)


# -- edge lists -------------------------------------------------------------

def _data_lines(path):
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line[0] in "#%":
                continue
            yield lineno, line.split()


def read_edge_list(path) -> list[tuple[int, int]]:
    """SNAP-style pairs in the file's own id space; self-loops dropped."""
    edges = []
    for lineno, parts in _data_lines(path):
        if len(parts) < 2:
            raise InputError(f"{path}:{lineno}: expected two vertex ids")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"{path}:{lineno}: non-integer vertex id") from None
        if u < 0 or v < 0:
            raise InputError(f"{path}:{lineno}: negative vertex id")
        if u != v:
            edges.append((u, v))
    return edges


def read_temporal_edges(path, start_col: int = 3, end_col: int | None = None):
    """KONECT-style ``u v [weight] start [end]`` rows as (u, v, start, end) tuples.

    Rows that fail to parse are skipped; the second return value counts them.
    Files with exactly three columns take the third as the start time.
    """
    events = []
    bad = 0
    for _, parts in _data_lines(path):
        try:
            u, v = int(parts[0]), int(parts[1])
            col = start_col if len(parts) > start_col else 2
            start = float(parts[col])
            end = float(parts[end_col]) if end_col is not None and len(parts) > end_col else None
        except (ValueError, IndexError):
            bad += 1
            continue
        events.append((u, v, start, end))
    return events, bad


class IdMap:
    """Dense 0..n-1 relabelling of arbitrary non-negative ids (sorted order)."""

    def __init__(self, ids: Iterable[int]):
        self.to_orig = sorted(set(ids))
        self.to_dense = {x: i for i, x in enumerate(self.to_orig)}

    def __len__(self) -> int:
        return len(self.to_orig)

    def __call__(self, x: int) -> int:
        try:
            return self.to_dense[x]
        except KeyError:
            raise InputError(f"vertex id {x} not in the vertex universe") from None

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("# dense original\n")
            for i, x in enumerate(self.to_orig):
                fh.write(f"{i} {x}\n")


def load_graph(edges, extra_ids: Iterable[int] = (), gamma: float = 0.9,
               paper_literal_gamma: bool = False) -> tuple[DynamicGraph, IdMap]:
    """Remap ids densely and build the graph; duplicates collapse."""
    edges = list(edges)
    ids = IdMap([x for e in edges for x in e] + list(extra_ids))
    g = DynamicGraph.from_edges(len(ids), ((ids(u), ids(v)) for u, v in edges), gamma,
                                paper_literal_gamma)
    return g, ids


# -- stream files -----------------------------------------------------------

def write_stream(stream: OperationStream, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"%q {len(stream)} %seed {stream.seed} %flavor {stream.source_tag}\n")
        for op in stream.ops:
            fh.write(f"{op.kind} {op.u} {op.v}\n")


def format_stream(stream: OperationStream) -> str:
    lines = [f"%q {len(stream)} %seed {stream.seed} %flavor {stream.source_tag}"]
    lines += [f"{op.kind} {op.u} {op.v}" for op in stream.ops]
    return "\n".join(lines) + "\n"


def read_stream(path) -> OperationStream:
    stream = OperationStream()
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("%"):
                parts = line.split()
                for key, val in zip(parts[::2], parts[1::2]):
                    if key == "%seed" and val != "None":
                        stream.seed = int(val)
                    elif key == "%flavor":
                        stream.source_tag = val
                continue
            parts = line.split()
            if len(parts) != 3 or parts[0] not in ("+", "-"):
                raise InputError(f"{path}:{lineno}: expected '+ u v' or '- u v'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise InputError(f"{path}:{lineno}: non-integer vertex id") from None
            if u == v:
                raise InputError(f"{path}:{lineno}: self-loop")
            stream.ops.append(Operation(parts[0], u, v))
            stream.lines.append(lineno)
    return stream


def replay_errors(graph: DynamicGraph, stream: OperationStream) -> list[int]:
    """Indices of operations that would be no-ops (duplicate insert, absent delete).

    Works on a copy; ``graph`` is left untouched.
    """
    adj = [set(a) for a in graph.adj]
    bad = []
    for i, (kind, u, v) in enumerate(stream.ops):
        present = v in adj[u]
        if (kind == "+") == present:
            bad.append(i)
            continue
        if kind == "+":
            adj[u].add(v)
            adj[v].add(u)
        else:
            adj[u].discard(v)
            adj[v].discard(u)
    return bad


# -- generators -------------------------------------------------------------

class _EdgePool:
    """Edge set supporting O(1) uniform sampling, insertion and removal."""

    def __init__(self, edges):
        self.items: list[tuple[int, int]] = []
        self.pos: dict[tuple[int, int], int] = {}
        for e in edges:
            self.add(e)

    def __len__(self):
        return len(self.items)

    def __contains__(self, e):
        return e in self.pos

    def add(self, e):
        self.pos[e] = len(self.items)
        self.items.append(e)

    def remove(self, e):
        i = self.pos.pop(e)
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last] = i

    def sample(self, rng):
        return self.items[rng.randrange(len(self.items))]


def _norm(u, v):
    return (u, v) if u < v else (v, u)


def _sorted_edges(graph: DynamicGraph):
    return sorted(_norm(u, v) for u, v in graph.edges())


def _sample_non_edge(rng, n, present: _EdgePool, n_pairs):
    """Uniform pair not in ``present``; None when the graph is complete."""
    free = n_pairs - len(present)
    if free <= 0:
        return None
    if free * 4 >= n_pairs:
        while True:
            u = rng.randrange(n)
            v = rng.randrange(n)
            if u != v and _norm(u, v) not in present:
                return _norm(u, v)
    # dense regime: enumerate the (few) remaining non-edges
    missing = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in present]
    return missing[rng.randrange(len(missing))]


def gen_random(graph: DynamicGraph, q: int, seed: int = 0) -> OperationStream:
    """Fair coin between inserting a uniform non-edge and deleting a uniform edge."""
    rng = random.Random(seed)
    n = graph.n
    n_pairs = n * (n - 1) // 2
    present = _EdgePool(_sorted_edges(graph))
    ops = []
    for _ in range(q):
        can_insert = len(present) < n_pairs
        can_delete = len(present) > 0
        if not (can_insert or can_delete):
            break
        insert = rng.random() < 0.5
        if insert and not can_insert:
            insert = False
        elif not insert and not can_delete:
            insert = True
        if insert:
            e = _sample_non_edge(rng, n, present, n_pairs)
            present.add(e)
            ops.append(Operation("+", *e))
        else:
            e = present.sample(rng)
            present.remove(e)
            ops.append(Operation("-", *e))
    return OperationStream(ops, "rand", seed)


def gen_incremental(graph: DynamicGraph, q: int, seed: int = 0) -> OperationStream:
    """``q`` distinct non-edges, uniformly without replacement."""
    rng = random.Random(seed)
    n = graph.n
    n_pairs = n * (n - 1) // 2
    present = _EdgePool(_sorted_edges(graph))
    pool = n_pairs - len(present)
    if q > pool:
        log.warning("incremental stream truncated: %d requested, %d non-edges exist", q, pool)
        q = pool
    ops = []
    for _ in range(q):
        e = _sample_non_edge(rng, n, present, n_pairs)
        present.add(e)
        ops.append(Operation("+", *e))
    return OperationStream(ops, "inc", seed)


def gen_decremental(graph: DynamicGraph, q: int, seed: int = 0) -> OperationStream:
    """``q`` distinct existing edges, uniformly without replacement."""
    rng = random.Random(seed)
    edges = _sorted_edges(graph)
    if q > len(edges):
        log.warning("decremental stream truncated: %d requested, %d edges exist", q, len(edges))
        q = len(edges)
    ops = [Operation("-", *e) for e in rng.sample(edges, q)]
    return OperationStream(ops, "del", seed)


def from_temporal(events, q: int, seed: int = 0, flavor: str = "temp", t0: float = 0.0):
    """Turn (u, v, start, end) windows into an initial edge list plus a stream.

    Windows alive at ``t0`` seed the initial graph.  Missing ends are drawn
    as ``start + Uniform(1, horizon - start)`` for ``temp`` and left open for
    ``tinc``.  Overlapping windows on one pair are coalesced so that the
    stream alternates insert/delete per pair.

    Returns ``(initial_edges, stream, skipped)`` with ids untouched.
    """
    if flavor not in ("temp", "tinc"):
        raise InputError(f"temporal flavor must be temp or tinc, got {flavor!r}")
    rng = random.Random(seed)
    clean = []
    skipped = 0
    for rec in events:
        try:
            u, v, start = int(rec[0]), int(rec[1]), float(rec[2])
            end = rec[3] if len(rec) > 3 else None
            end = None if end is None else float(end)
        except (TypeError, ValueError, IndexError):
            skipped += 1
            continue
        if u == v or u < 0 or v < 0 or (end is not None and end <= start):
            skipped += 1
            continue
        clean.append((u, v, start, end))
    if skipped:
        log.warning("from_temporal: skipped %d malformed records", skipped)
    horizon = max((max(s, e if e is not None else s) for _, _, s, e in clean), default=0.0)
    timeline = []  # (time, seq, delta, pair)
    for seq, (u, v, start, end) in enumerate(clean):
        if flavor == "tinc":
            end = None
        elif end is None:
            span = horizon - start
            end = start + (rng.uniform(1.0, span) if span > 1.0 else 1.0)
        pair = _norm(u, v)
        timeline.append((start, seq, 1, pair))
        if end is not None:
            timeline.append((end, seq, -1, pair))
    # at equal times deletions come first, then input order
    timeline.sort(key=lambda t: (t[0], t[2], t[1]))
    active: dict[tuple[int, int], int] = {}
    ops: list[Operation] = []
    for time, _, delta, pair in timeline:
        before = active.get(pair, 0)
        after = before + delta
        active[pair] = after
        if time <= t0:
            continue
        if before == 0 and after == 1:
            ops.append(Operation("+", *pair))
        elif before == 1 and after == 0:
            ops.append(Operation("-", *pair))
    initial = sorted(p for p, c in _alive_at(timeline, t0).items() if c > 0)
    if len(ops) > q:
        ops = ops[:q]
    return initial, OperationStream(ops, flavor, seed), skipped


def _alive_at(timeline, t0):
    counts: dict[tuple[int, int], int] = {}
    for time, _, delta, pair in timeline:
        if time > t0:
            break
        counts[pair] = counts.get(pair, 0) + delta
    return counts


STATIC_GENERATORS = {"rand": gen_random, "inc": gen_incremental, "del": gen_decremental}


def generate(flavor: str, graph: DynamicGraph, q: int, seed: int = 0) -> OperationStream:
    try:
        return STATIC_GENERATORS[flavor](graph, q, seed)
    except KeyError:
        raise InputError(f"flavor {flavor!r} needs temporal input; use from_temporal") from None


def remap_stream(stream: OperationStream, ids: IdMap) -> OperationStream:
    return OperationStream([Operation(k, ids(u), ids(v)) for k, u, v in stream.ops],
                           stream.source_tag, stream.seed)


def unmap_stream(stream: OperationStream, ids: IdMap) -> OperationStream:
    orig = ids.to_orig
    return OperationStream([Operation(k, orig[u], orig[v]) for k, u, v in stream.ops],
                           stream.source_tag, stream.seed)


def planted_graph(n: int, communities, p_in: float = 0.95, p_out: float = 0.01, seed: int = 0,
                  gamma: float = 0.9) -> DynamicGraph:
    """Sparse G(n, p_out) background with dense planted groups.

    ``communities`` lists group sizes; groups occupy consecutive id ranges
    starting at 0 and each internal pair is present with probability ``p_in``.
    Background edges are drawn by geometric skipping, so large sparse graphs
    stay cheap.
    """
    rng = random.Random(seed)
    edges: set[tuple[int, int]] = set()
    start = 0
    for size in communities:
        if start + size > n:
            raise InputError("planted communities exceed the vertex universe")
        block = range(start, start + size)
        for u in block:
            for v in range(u + 1, start + size):
                if rng.random() < p_in:
                    edges.add((u, v))
        start += size
    if p_out > 0:
        total = n * (n - 1) // 2
        log_q = math.log(1.0 - p_out) if p_out < 1 else None
        idx = -1
        while True:
            if log_q is None:
                idx += 1
            else:
                idx += 1 + int(math.log(1.0 - rng.random()) / log_q)
            if idx >= total:
                break
            # decode linear pair index -> (u, v), u < v
            u = int((2 * n - 1 - math.sqrt((2 * n - 1) ** 2 - 8 * idx)) // 2)
            while u > 0 and u * (2 * n - u - 1) // 2 > idx:
                u -= 1
            while (u + 1) * (2 * n - u - 2) // 2 <= idx:
                u += 1
            v = idx - u * (2 * n - u - 1) // 2 + u + 1
            edges.add((u, v))
    return DynamicGraph.from_edges(n, sorted(edges), gamma)
