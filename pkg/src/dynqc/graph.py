"""Mutable undirected simple graph over a fixed vertex universe.

Neighbourhoods are *closed*: ``N(u)`` contains ``u`` itself, so every size
comparison below uses ``|N(u)| = d(u) + 1``.  The graph also keeps the
gamma-degree of every vertex, i.e. the number of ``v in N(u)`` with
``|N(v)| >= gamma * |N(u)|``, up to date under edge updates.
"""

from __future__ import annotations

from typing import Iterable


class InputError(ValueError):
    """Raised for malformed caller input (bad vertex ids, self-loops, ...)."""


def pairs(s: int) -> int:
    return s * (s - 1) // 2


class DynamicGraph:
    """Adjacency-set graph with incrementally maintained gamma-degrees.

    Mutation is single-writer; nothing here takes locks.
    """

    def __init__(self, n: int, gamma: float = 0.9, paper_literal_gamma: bool = False):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        if not 0.0 <= gamma <= 1.0:
            raise InputError(f"gamma must lie in [0, 1], got {gamma}")
        self.n = n
        self.gamma = gamma
        self.paper_literal_gamma = paper_literal_gamma
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.m = 0
        self.gamma_degrees: list[int] = [1] * n
        self.gamma_degree_init()

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], gamma: float = 0.9,
                   paper_literal_gamma: bool = False) -> "DynamicGraph":
        g = cls(n, gamma, paper_literal_gamma)
        for u, v in edges:
            g.insert_edge(u, v, maintain_gamma=False)
        g.gamma_degree_init()
        return g

    def copy(self) -> "DynamicGraph":
        g = DynamicGraph.__new__(DynamicGraph)
        g.n = self.n
        g.gamma = self.gamma
        g.paper_literal_gamma = self.paper_literal_gamma
        g.adj = [set(a) for a in self.adj]
        g.m = self.m
        g.gamma_degrees = list(self.gamma_degrees)
        return g

    # -- queries -----------------------------------------------------------

    def _check(self, u: int) -> None:
        if not (isinstance(u, int) and 0 <= u < self.n):
            raise InputError(f"invalid vertex id {u!r} (universe size {self.n})")

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def closed_size(self, u: int) -> int:
        return len(self.adj[u]) + 1

    def closed_neighborhood(self, u: int) -> set[int]:
        self._check(u)
        out = set(self.adj[u])
        out.add(u)
        return out

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self):
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield u, v

    def internal_edges(self, members) -> int:
        """|E(S)| for the vertex collection ``members``."""
        s = members if isinstance(members, (set, frozenset)) else set(members)
        adj = self.adj
        total = 0
        for w in s:
            total += len(adj[w].intersection(s))
        return total // 2

    def density(self, members) -> float:
        """Edge density |E(S)| / C(|S|, 2); sets smaller than two count as 1.0."""
        s = members if isinstance(members, (set, frozenset)) else set(members)
        if len(s) < 2:
            return 1.0
        return self.internal_edges(s) / pairs(len(s))

    # -- mutation ----------------------------------------------------------

    def insert_edge(self, u: int, v: int, maintain_gamma: bool = True) -> bool:
        """Add edge (u, v). Returns False when it was already present."""
        self._check(u)
        self._check(v)
        if u == v:
            raise InputError(f"self-loop ({u}, {v}) rejected")
        if v in self.adj[u]:
            return False
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.m += 1
        if maintain_gamma:
            self.gamma_degree_on_insert(u, v)
        return True

    def delete_edge(self, u: int, v: int, maintain_gamma: bool = True) -> bool:
        """Remove edge (u, v). Returns False when it was absent."""
        self._check(u)
        self._check(v)
        if u == v:
            raise InputError(f"self-loop ({u}, {v}) rejected")
        if v not in self.adj[u]:
            return False
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.m -= 1
        if maintain_gamma:
            self.gamma_degree_on_delete(u, v)
        return True

    # -- gamma-degrees -----------------------------------------------------

    def _gamma_degree_of(self, u: int) -> int:
        adj = self.adj
        thr = self.gamma * (len(adj[u]) + 1)
        count = 1 if len(adj[u]) + 1 >= thr else 0
        for v in adj[u]:
            if len(adj[v]) + 1 >= thr:
                count += 1
        return count

    def gamma_degree_init(self) -> None:
        self.gamma_degrees = [self._gamma_degree_of(u) for u in range(self.n)]

    def gamma_degree_on_insert(self, u: int, v: int) -> list[int]:
        """Update gamma-degrees after (u, v) was linked; return vertices that rose.

        Only three kinds of (w, x) contributions can change: x in {u, v} grew by
        one, so neighbours w crossing the threshold gain x; and the endpoints
        themselves, whose own thresholds moved, are recounted directly.
        """
        if self.paper_literal_gamma:
            return self._literal_on_insert(u, v)
        adj, gamma, gd = self.adj, self.gamma, self.gamma_degrees
        raised: list[int] = []
        seen: set[int] = set()
        for x, y in ((u, v), (v, u)):
            sx = len(adj[x]) + 1
            for w in adj[x]:
                if w == y:
                    continue
                thr = gamma * (len(adj[w]) + 1)
                if sx >= thr and not (sx - 1 >= thr):
                    gd[w] += 1
                    if w not in seen:
                        seen.add(w)
                        raised.append(w)
        for x in (u, v):
            new = self._gamma_degree_of(x)
            if new > gd[x] and x not in seen:
                seen.add(x)
                raised.append(x)
            gd[x] = new
        return raised

    def gamma_degree_on_delete(self, u: int, v: int) -> None:
        """Update gamma-degrees after (u, v) was unlinked."""
        if self.paper_literal_gamma:
            self._literal_on_delete(u, v)
            return
        adj, gamma, gd = self.adj, self.gamma, self.gamma_degrees
        for x, y in ((u, v), (v, u)):
            sx = len(adj[x]) + 1
            for w in adj[x]:
                if w == y:
                    continue
                thr = gamma * (len(adj[w]) + 1)
                if sx + 1 >= thr and not (sx >= thr):
                    gd[w] -= 1
        gd[u] = self._gamma_degree_of(u)
        gd[v] = self._gamma_degree_of(v)

    def _literal_on_insert(self, u: int, v: int) -> list[int]:
        adj, gamma, gd = self.adj, self.gamma, self.gamma_degrees
        raised: list[int] = []
        for x in (u, v):
            sx = len(adj[x]) + 1
            for w in list(adj[x]) + [x]:
                thr = gamma * (len(adj[w]) + 1)
                endpoint_pair = {w, x} == {u, v}
                if sx >= thr and (not (sx - 1 >= thr) or endpoint_pair):
                    gd[w] += 1
                    raised.append(w)
        return raised

    def _literal_on_delete(self, u: int, v: int) -> None:
        adj, gamma, gd = self.adj, self.gamma, self.gamma_degrees
        for x in (u, v):
            sx = len(adj[x]) + 1
            for w in list(adj[x]) + [x]:
                thr = gamma * (len(adj[w]) + 1)
                if sx < thr <= sx + 1:
                    gd[w] -= 1

    def recomputed_gamma_degrees(self) -> list[int]:
        return [self._gamma_degree_of(u) for u in range(self.n)]
