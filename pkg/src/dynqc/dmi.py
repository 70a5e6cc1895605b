"""Dynamic candidate-list engine for near-maximum quasi-cliques.

The engine keeps at most ``B`` mutually dissimilar alpha-quasi-cliques.  Edge
insertions re-run detection around vertices whose gamma-degree rose above the
smallest candidate; deletions repair or evict affected candidates; every
``batch`` operations the list is rebuilt from scratch.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field, replace
from itertools import combinations

from .detect import DetectParams, detect
from .graph import DynamicGraph, InputError, pairs
from .sketch import DEFAULT_SEED, exact_jaccard, make_backend


@dataclass(frozen=True)
class EngineParams:
    gamma: float = 0.9
    b: float = 0.6
    alpha: float = 0.8
    r_tol: float = 0.5
    B: int = 5
    batch: int = 5000
    backend: str = "bt"
    k: int = 8
    l: int = 8
    seed: int = DEFAULT_SEED
    R: int = 20
    halt_when_full: bool = False
    paper_literal_gamma: bool = False

    def __post_init__(self):
        if self.B < 1:
            raise InputError("B must be at least 1")
        if self.batch < 1:
            raise InputError("batch must be at least 1")
        if self.R < 1:
            raise InputError("R must be at least 1")
        if not 0.0 < self.r_tol <= 1.0:
            raise InputError(f"r_tol must lie in (0, 1], got {self.r_tol}")

    @property
    def detect(self) -> DetectParams:
        return DetectParams(self.gamma, self.b, self.alpha)

    def validate(self) -> None:
        self.detect.validate()

    def with_(self, **kw) -> "EngineParams":
        return replace(self, **kw)


def _density(edges: int, size: int) -> float:
    if size < 2:
        return 1.0
    return edges / pairs(size)


@dataclass
class QuasiClique:
    """Vertex set with cached |E(S)| and open in-clique degrees."""

    vertices: set
    edges: int = 0
    degree: dict = field(default_factory=dict)

    @classmethod
    def from_graph(cls, graph: DynamicGraph, vertices) -> "QuasiClique":
        vs = set(vertices)
        adj = graph.adj
        deg = {w: len(adj[w].intersection(vs)) for w in vs}
        return cls(vs, sum(deg.values()) // 2, deg)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def density(self) -> float:
        return _density(self.edges, len(self.vertices))

    def key(self) -> tuple:
        return tuple(sorted(self.vertices))

    def add_internal_edge(self, u: int, v: int) -> bool:
        if u in self.vertices and v in self.vertices:
            self.edges += 1
            self.degree[u] += 1
            self.degree[v] += 1
            return True
        return False

    def remove_vertex(self, w: int, graph: DynamicGraph) -> None:
        self.vertices.discard(w)
        self.edges -= self.degree.pop(w)
        deg = self.degree
        for z in graph.adj[w]:
            if z in deg:
                deg[z] -= 1

    def is_consistent(self, graph: DynamicGraph) -> bool:
        fresh = QuasiClique.from_graph(graph, self.vertices)
        return fresh.edges == self.edges and fresh.degree == self.degree


def clique_delete_edge(S: QuasiClique, u: int, v: int, alpha: float, graph: DynamicGraph) -> int:
    """Account for the deleted edge (u, v) inside ``S`` and try to repair it.

    Returns how many vertices were removed (0, 1 or 2), or 3 when no repair of
    at most two vertices among {u, v, x, y} restores density alpha; ``x, y``
    are the two members of smallest in-clique degree.  ``graph`` must already
    reflect the deletion.
    """
    vs = S.vertices
    if u not in vs or v not in vs:
        return 0
    S.edges -= 1
    deg = S.degree
    deg[u] -= 1
    deg[v] -= 1
    s = len(vs)
    E = S.edges
    if _density(E, s) >= alpha:
        return 0
    low = heapq.nsmallest(2, vs, key=lambda w: (deg[w], w))
    x = low[0]
    y = low[1] if len(low) > 1 else low[0]
    for w in (u, v, x):
        if _density(E - deg[w], s - 1) >= alpha:
            S.remove_vertex(w, graph)
            return 1
    cands = list(dict.fromkeys((u, v, x, y)))
    adj = graph.adj
    for z, w in combinations(cands, 2):
        e2 = E - deg[z] - deg[w] + (1 if w in adj[z] else 0)
        if _density(e2, s - 2) >= alpha:
            S.remove_vertex(z, graph)
            S.remove_vertex(w, graph)
            return 2
    return 3


def best_of(cliques) -> QuasiClique | None:
    """Largest member; ties by higher density, then lexicographically smaller set."""
    best = None
    best_key = None
    for S in cliques:
        key = (-len(S), -S.density, S.key())
        if best_key is None or key < best_key:
            best, best_key = S, key
    return best


class DMIEngine:
    """Candidate list ``L`` kept in step with a mutating graph."""

    def __init__(self, graph: DynamicGraph, params: EngineParams | None = None):
        self.params = params or EngineParams()
        self.params.validate()
        self.graph = graph
        if graph.gamma != self.params.gamma or graph.paper_literal_gamma != self.params.paper_literal_gamma:
            graph.gamma = self.params.gamma
            graph.paper_literal_gamma = self.params.paper_literal_gamma
            graph.gamma_degree_init()
        self._dp = self.params.detect
        self.backend = make_backend(self.params.backend, graph, self.params.k, self.params.l, self.params.seed)
        self.cliques: list[QuasiClique] = []
        self.ops_since_rebuild = 0
        self.rebuild_count = 0
        self.ops_seen = 0
        self.build()

    # -- construction ------------------------------------------------------

    def _min_size(self) -> int:
        return min((len(S) for S in self.cliques), default=0)

    def build(self) -> list[QuasiClique]:
        """Rebuild ``L`` by trying centres in descending gamma-degree order."""
        self.cliques = []
        g = self.graph
        gd = g.gamma_degrees
        order = sorted(range(g.n), key=lambda u: (-gd[u], u))
        B = self.params.B
        for u in order:
            if self.cliques and gd[u] < self._min_size():
                if not self.params.halt_when_full or len(self.cliques) >= B:
                    break
            self.add_clique(detect(g, u, self._dp, self.backend))
        self.ops_since_rebuild = 0
        self.rebuild_count += 1
        return self.cliques

    def add_clique(self, C) -> bool:
        """Admission policy; returns True when ``C`` entered the list.

        A member whose vertex-set Jaccard with ``C`` exceeds ``r_tol`` counts as
        a near-duplicate: ``C`` replaces the smallest such member if strictly
        larger and is dropped otherwise.  Without near-duplicates ``C`` is
        appended while there is room, else it evicts the smallest member if
        strictly larger.
        """
        if not C:
            return False
        p = self.params
        Q = QuasiClique.from_graph(self.graph, C)
        if Q.density < p.alpha:
            return False
        L = self.cliques
        size = len(Q)
        r_idx = None
        min_idx = None
        for i, S in enumerate(L):
            s = len(S)
            if (r_idx is None or s < len(L[r_idx])) and exact_jaccard(S.vertices, Q.vertices) > p.r_tol:
                r_idx = i
            if min_idx is None or s < len(L[min_idx]):
                min_idx = i
        if r_idx is not None:
            if size > len(L[r_idx]):
                L[r_idx] = Q
                return True
            return False
        if len(L) < p.B:
            L.append(Q)
            return True
        if size > len(L[min_idx]):
            L[min_idx] = Q
            return True
        return False

    # -- updates -----------------------------------------------------------

    def _tick(self) -> bool:
        self.ops_seen += 1
        self.ops_since_rebuild += 1
        if self.ops_since_rebuild >= self.params.batch:
            self.build()
            return True
        return False

    def add_edge(self, u: int, v: int) -> list[QuasiClique]:
        g = self.graph
        if u == v:
            raise InputError(f"self-loop ({u}, {v}) rejected")
        changed = g.insert_edge(u, v, maintain_gamma=False)
        raised: list[int] = []
        if changed:
            self.backend.on_insert(u, v)
            raised = g.gamma_degree_on_insert(u, v)
            for S in self.cliques:
                S.add_internal_edge(u, v)
        if self._tick() or not changed:
            return self.cliques
        gd = g.gamma_degrees
        for w in raised:
            if gd[w] >= self._min_size():
                self.add_clique(detect(g, w, self._dp, self.backend))
        return self.cliques

    def delete_edge(self, u: int, v: int) -> list[QuasiClique]:
        g = self.graph
        if u == v:
            raise InputError(f"self-loop ({u}, {v}) rejected")
        changed = g.delete_edge(u, v, maintain_gamma=False)
        if changed:
            self.backend.on_delete(u, v)
            g.gamma_degree_on_delete(u, v)
        if self._tick() or not changed:
            return self.cliques
        alpha = self.params.alpha
        self.cliques = [S for S in self.cliques if clique_delete_edge(S, u, v, alpha, g) != 3]
        if not self.cliques:
            self.build()
        return self.cliques

    def apply(self, kind: str, u: int, v: int) -> list[QuasiClique]:
        if kind == "+":
            return self.add_edge(u, v)
        if kind == "-":
            return self.delete_edge(u, v)
        raise InputError(f"unknown operation kind {kind!r}")

    def best(self) -> QuasiClique | None:
        return best_of(self.cliques)

    query_best = best


class StaticRebuildEngine:
    """Baseline: fresh gamma-degrees, fresh signatures and a fresh build after every update."""

    def __init__(self, graph: DynamicGraph, params: EngineParams | None = None):
        self.params = params or EngineParams()
        self.graph = graph
        self.rebuild_count = 0
        self._engine = None
        self._rebuild()

    def _rebuild(self) -> None:
        self.graph.gamma_degree_init()
        self._engine = DMIEngine(self.graph, self.params)
        self.rebuild_count += 1

    def add_edge(self, u: int, v: int):
        self.graph.insert_edge(u, v, maintain_gamma=False)
        self._rebuild()
        return self._engine.cliques

    def delete_edge(self, u: int, v: int):
        self.graph.delete_edge(u, v, maintain_gamma=False)
        self._rebuild()
        return self._engine.cliques

    def apply(self, kind: str, u: int, v: int):
        if kind == "+":
            return self.add_edge(u, v)
        if kind == "-":
            return self.delete_edge(u, v)
        raise InputError(f"unknown operation kind {kind!r}")

    @property
    def cliques(self):
        return self._engine.cliques

    def best(self) -> QuasiClique | None:
        return self._engine.best()
