"""Brute-force ground truth for small instances.

These routines are exhaustive and refuse inputs beyond :class:`OracleLimits`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import DynamicGraph, InputError, pairs


@dataclass(frozen=True)
class OracleLimits:
    max_n: int = 20
    max_s: int = 15


DEFAULT_LIMITS = OracleLimits()


def _masks(graph: DynamicGraph) -> list[int]:
    return [sum(1 << v for v in graph.adj[u]) for u in range(graph.n)]


def max_quasi_clique_exact(graph: DynamicGraph, alpha: float,
                           limits: OracleLimits = DEFAULT_LIMITS) -> set[int]:
    """A maximum-cardinality vertex set of density >= alpha.

    Sizes are tried from n downwards; within a size, subsets come in
    lexicographic order, so the first hit is the lexicographically smallest.
    A size is skipped when even the ``s`` largest degrees cannot supply
    ``2 * alpha * C(s, 2)`` degree endpoints.
    """
    n = graph.n
    if n > limits.max_n:
        raise InputError(f"exhaustive search refused: n = {n} > max_n = {limits.max_n}")
    if n == 0:
        return set()
    masks = _masks(graph)
    degs = sorted((len(a) for a in graph.adj), reverse=True)
    prefix = [0]
    for d in degs:
        prefix.append(prefix[-1] + d)
    for s in range(n, 1, -1):
        need = alpha * pairs(s)
        if prefix[s] < 2 * need:
            continue
        for combo in combinations(range(n), s):
            sub = 0
            for w in combo:
                sub |= 1 << w
            e2 = 0
            for w in combo:
                e2 += (masks[w] & sub).bit_count()
            if e2 // 2 >= need:
                return set(combo)
    return {0}


def min_repair_exact(S, graph: DynamicGraph, alpha: float,
                     limits: OracleLimits = DEFAULT_LIMITS) -> int:
    """Fewest removals (0, 1 or 2) restoring density alpha; 3 means three or more."""
    vs = sorted(set(S))
    if len(vs) > limits.max_s:
        raise InputError(f"repair search refused: |S| = {len(vs)} > max_s = {limits.max_s}")
    for r in range(3):
        size = len(vs) - r
        for keep in combinations(vs, size):
            if graph.density(set(keep)) >= alpha:
                return r
    return 3


def list_violations(cliques, graph: DynamicGraph, alpha: float, B: int | None = None) -> list[str]:
    """Human-readable reasons a candidate list is invalid (empty when valid)."""
    problems = []
    if B is not None and len(cliques) > B:
        problems.append(f"list holds {len(cliques)} > B = {B} cliques")
    for i, S in enumerate(cliques):
        if any(not 0 <= w < graph.n for w in S.vertices):
            problems.append(f"clique {i}: vertex outside universe")
            continue
        if not S.is_consistent(graph):
            problems.append(f"clique {i}: cached edge count/degrees disagree with graph")
        if graph.density(S.vertices) < alpha:
            problems.append(f"clique {i}: density {graph.density(S.vertices):.4f} < alpha {alpha}")
    return problems


def verify_list(cliques, graph: DynamicGraph, alpha: float, B: int | None = None) -> bool:
    return not list_violations(cliques, graph, alpha, B)
