"""Neighbour-search baseline: one cached extraction per centre, revalidated lazily."""

from __future__ import annotations

from sortedcontainers import SortedList

from .detect import detect
from .dmi import EngineParams, QuasiClique
from .graph import DynamicGraph, InputError
from .sketch import make_backend


class NSFEngine:
    """Per-vertex cached detections plus an index ordered by (size desc, id asc).

    Only endpoints of an update are re-detected eagerly; everything else is
    checked when :meth:`extract` pops it.
    """

    def __init__(self, graph: DynamicGraph, params: EngineParams | None = None):
        self.params = params or EngineParams()
        self.params.validate()
        self.graph = graph
        self._dp = self.params.detect
        self.R = self.params.R
        self.backend = make_backend(self.params.backend, graph, self.params.k, self.params.l, self.params.seed)
        self.clique_of: list[set] = []
        self.index = SortedList()
        self._entry: dict[int, int] = {}
        self.ops_since_rebuild = 0
        self.rebuild_count = 0
        self.last: QuasiClique | None = None
        self.build()

    # -- index helpers -----------------------------------------------------

    def _unindex(self, u: int) -> None:
        size = self._entry.pop(u, None)
        if size is not None:
            self.index.remove((-size, u))

    def _redetect(self, u: int) -> set:
        C = detect(self.graph, u, self._dp, self.backend)
        self.clique_of[u] = C
        self._unindex(u)
        if C and self.graph.density(C) >= self.params.alpha:
            self._entry[u] = len(C)
            self.index.add((-len(C), u))
        return C

    def top(self) -> QuasiClique | None:
        if not self.index:
            return None
        _, w = self.index[0]
        return QuasiClique.from_graph(self.graph, self.clique_of[w])

    # -- operations --------------------------------------------------------

    def build(self) -> None:
        self.clique_of = [set() for _ in range(self.graph.n)]
        self.index = SortedList()
        self._entry = {}
        for u in range(self.graph.n):
            self._redetect(u)
        self.ops_since_rebuild = 0
        self.rebuild_count += 1
        self.last = self.top()

    def extract(self, R: int | None = None) -> QuasiClique | None:
        """Pop up to ``R`` largest entries, re-detect each, keep the best valid one."""
        rounds = self.R if R is None else R
        alpha = self.params.alpha
        best: set = set()
        for _ in range(rounds):
            if not self.index:
                break
            neg_size, w = self.index.pop(0)
            del self._entry[w]
            size = -neg_size
            C = detect(self.graph, w, self._dp, self.backend)
            self.clique_of[w] = C
            if not C or self.graph.density(C) < alpha:
                continue
            self._entry[w] = len(C)
            self.index.add((-len(C), w))
            if len(C) > len(best):
                best = C
            if len(C) >= size:
                break
        self.last = QuasiClique.from_graph(self.graph, best) if best else None
        return self.last

    def _update(self, u: int, v: int, insert: bool) -> QuasiClique | None:
        g = self.graph
        if u == v:
            raise InputError(f"self-loop ({u}, {v}) rejected")
        if insert:
            changed = g.insert_edge(u, v)
            if changed:
                self.backend.on_insert(u, v)
        else:
            changed = g.delete_edge(u, v)
            if changed:
                self.backend.on_delete(u, v)
        self.ops_since_rebuild += 1
        if self.ops_since_rebuild >= self.params.batch:
            self.build()
            return self.last
        self._redetect(u)
        self._redetect(v)
        return self.extract()

    def add_edge(self, u: int, v: int) -> QuasiClique | None:
        return self._update(u, v, True)

    def delete_edge(self, u: int, v: int) -> QuasiClique | None:
        return self._update(u, v, False)

    def apply(self, kind: str, u: int, v: int):
        if kind == "+":
            return self.add_edge(u, v)
        if kind == "-":
            return self.delete_edge(u, v)
        raise InputError(f"unknown operation kind {kind!r}")

    def best(self) -> QuasiClique | None:
        return self.last

    @property
    def cliques(self) -> list[QuasiClique]:
        return [self.last] if self.last is not None else []
