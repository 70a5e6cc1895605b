"""Update-capable MinHash signatures of closed neighbourhoods.

Two variants share one interface:

* :class:`BufferedSignature` -- ``k`` independently seeded hashes; for each
  slot the ``l`` smallest values over the member set are buffered so that a
  removal only forces a rescan when a buffer runs dry.
* :class:`BottomKSignature` -- one hash; every member hash is kept in an
  ordered store, so add/remove are exact and the ``k`` smallest are a prefix.

Per-slot hashes are bijections of the 64-bit vertex id, so two distinct
vertices never share a hash value within a slot.

Contracts (not asserted): buffered init/update/query run in
O(|A| k log log |A|), amortised O(k log |A|), O(k); bottom-k in
O(k + |A| log |A|), O(k + log |A|), O(k) with O(k + |A|) space.
"""

from __future__ import annotations

from bisect import bisect_left, insort
from dataclasses import dataclass, field
from typing import Iterable

from . import kernels
from .graph import InputError

DEFAULT_SEED = 0x5EED_D1A6


@dataclass(frozen=True)
class HashScheme:
    """Deterministic family of keyed 64-bit hashes, one per slot."""

    master_seed: int = DEFAULT_SEED
    k: int = 8
    seeds: tuple = field(init=False, repr=False)

    def __post_init__(self):
        if self.k < 1:
            raise InputError("k must be at least 1")
        base = self.master_seed & kernels.MASK64
        # counter construction: slot i gets mix64(seed + i + 1)
        seeds = tuple(kernels.mix64((base + i + 1) & kernels.MASK64) for i in range(self.k))
        object.__setattr__(self, "seeds", seeds)

    def hash(self, slot: int, x: int) -> int:
        return kernels.keyed_hash(self.seeds[slot], x)


class BufferedSignature:
    """l-buffered k-MinHash of one vertex's closed neighbourhood.

    Each slot buffer is a sorted *prefix* of that slot's hash order over the
    members: the ``len(buffer)`` smallest values.  ``mins`` mirrors the
    buffer fronts for O(k) queries.
    """

    __slots__ = ("scheme", "owner", "l", "buffers", "mins", "count")

    def __init__(self, scheme: HashScheme, owner: int, members: Iterable[int], l: int = 8):
        if l < 1:
            raise InputError("buffer capacity l must be at least 1")
        members = list(members)
        self.scheme = scheme
        self.owner = owner
        self.l = l
        self.count = len(members)
        self.buffers: list[list[int]] = kernels.smallest_per_slot(scheme.seeds, members, l)
        self.mins: list = [b[0] if b else None for b in self.buffers]

    def add(self, w: int) -> None:
        hs = kernels.slot_hashes(self.scheme.seeds, w)
        for i, h in enumerate(hs):
            buf = self.buffers[i]
            j = bisect_left(buf, h)
            if j < len(buf) and buf[j] == h:
                raise InputError(f"vertex {w} already in signature of {self.owner}")
        prev = self.count
        self.count += 1
        l = self.l
        for i, h in enumerate(hs):
            buf = self.buffers[i]
            if buf and h < buf[-1]:
                insort(buf, h)
                if len(buf) > l:
                    buf.pop()
            elif len(buf) == prev and len(buf) < l:
                buf.append(h)
            else:
                continue
            self.mins[i] = buf[0]

    def remove(self, w: int, members=None) -> None:
        """Drop ``w``.

        ``members`` is the member set *after* removal, or a zero-argument
        callable producing it; it is only read when a slot buffer empties and
        must be refilled from scratch.
        """
        if self.count == 0:
            raise InputError(f"vertex {w} not in (empty) signature of {self.owner}")
        if isinstance(members, (set, frozenset)) and w in members:
            raise InputError(f"vertex {w} is still a member of {self.owner}'s set")
        self.count -= 1
        hs = kernels.slot_hashes(self.scheme.seeds, w)
        refill = []
        for i, h in enumerate(hs):
            buf = self.buffers[i]
            j = bisect_left(buf, h)
            if j < len(buf) and buf[j] == h:
                del buf[j]
                if buf:
                    self.mins[i] = buf[0]
                elif self.count:
                    refill.append(i)
                else:
                    self.mins[i] = None
        if refill:
            if members is None:
                raise InputError("slot buffer emptied; current members required to refill")
            if callable(members):
                members = members()
            seeds = [self.scheme.seeds[i] for i in refill]
            for i, buf in zip(refill, kernels.smallest_per_slot(seeds, members, self.l)):
                self.buffers[i] = buf
                self.mins[i] = buf[0]

    def __len__(self) -> int:
        return self.count


class BottomKSignature:
    """Bottom-k MinHash keeping every member's slot-0 hash in sorted order."""

    __slots__ = ("scheme", "owner", "hashes")

    def __init__(self, scheme: HashScheme, owner: int, members: Iterable[int], l: int = 0):
        self.scheme = scheme
        self.owner = owner
        self.hashes: list[int] = sorted(kernels.hash_many(scheme.seeds[0], members))

    def add(self, w: int) -> None:
        h = kernels.keyed_hash(self.scheme.seeds[0], w)
        hs = self.hashes
        j = bisect_left(hs, h)
        if j < len(hs) and hs[j] == h:
            raise InputError(f"vertex {w} already in signature of {self.owner}")
        hs.insert(j, h)

    def remove(self, w: int, members: Iterable[int] | None = None) -> None:
        h = kernels.keyed_hash(self.scheme.seeds[0], w)
        hs = self.hashes
        j = bisect_left(hs, h)
        if j == len(hs) or hs[j] != h:
            raise InputError(f"vertex {w} not in signature of {self.owner}")
        del hs[j]

    def __len__(self) -> int:
        return len(self.hashes)


VARIANTS = {"bf": BufferedSignature, "bt": BottomKSignature}


def signature_init(variant: str, scheme: HashScheme, owner: int, members: Iterable[int], l: int = 8):
    try:
        cls = VARIANTS[variant]
    except KeyError:
        raise InputError(f"unknown signature variant {variant!r}") from None
    return cls(scheme, owner, members, l)


def _empty_convention(na: int, nb: int):
    if na == 0 or nb == 0:
        return 1.0 if na == nb else 0.0
    return None


def estimate_jaccard(a, b) -> float:
    """Estimated Jaccard similarity of two signatures of the same variant.

    Buffered: fraction of slots whose minima agree.  Bottom-k: shared values
    among the ``min(k, |A ∪ B|)`` smallest of the union, over that count.
    """
    if type(a) is not type(b):
        raise InputError("cannot compare signatures of different variants")
    if a.scheme is not b.scheme and a.scheme != b.scheme:
        raise InputError("signatures built under different hash schemes")
    conv = _empty_convention(len(a), len(b))
    if conv is not None:
        return conv
    if isinstance(a, BufferedSignature):
        return kernels.count_equal(a.mins, b.mins) / a.scheme.k
    common, taken = kernels.bottomk_common(a.hashes, b.hashes, a.scheme.k)
    return common / taken


def estimate_containment(u_size: int, v_size: int, sigma_hat: float) -> float:
    """Containment of N(u) in N(v) recovered from a Jaccard estimate."""
    return kernels.containment_from_sigma(u_size, v_size, sigma_hat)


def exact_jaccard(a, b) -> float:
    a = a if isinstance(a, (set, frozenset)) else set(a)
    b = b if isinstance(b, (set, frozenset)) else set(b)
    if not a and not b:
        return 1.0
    inter = len(a & b)
    return inter / (len(a) + len(b) - inter)


class ExactBackend:
    """Exact containment scores straight from the adjacency sets."""

    name = "exact"

    def __init__(self, graph):
        self.graph = graph

    def containment(self, u: int, v: int) -> float:
        adj = self.graph.adj
        if u == v:
            return 1.0
        inter = len(adj[u] & adj[v])
        if v in adj[u]:
            inter += 2
        return inter / (len(adj[u]) + 1)

    def select(self, u: int, cutoff: float) -> set[int]:
        """``u`` plus every neighbour ``v`` with t(u, v) >= cutoff."""
        adj = self.graph.adj
        au = adj[u]
        size = len(au) + 1
        # common closed-neighbourhood members: shared neighbours plus u and v themselves
        chosen = {v for v in au if (len(au & adj[v]) + 2) / size >= cutoff}
        chosen.add(u)
        return chosen

    def on_insert(self, u: int, v: int) -> None:
        pass

    def on_delete(self, u: int, v: int) -> None:
        pass


class SketchBackend:
    """Lazily computed, incrementally maintained per-vertex signatures."""

    def __init__(self, graph, variant: str, scheme: HashScheme, l: int = 8):
        if variant not in VARIANTS:
            raise InputError(f"unknown signature variant {variant!r}")
        self.graph = graph
        self.name = variant
        self.variant = variant
        self.scheme = scheme
        self.l = l
        self._cls = VARIANTS[variant]
        self.signatures: dict = {}

    def signature(self, u: int):
        sig = self.signatures.get(u)
        if sig is None:
            sig = self._cls(self.scheme, u, self.graph.closed_neighborhood(u), self.l)
            self.signatures[u] = sig
        return sig

    def containment(self, u: int, v: int) -> float:
        if u == v:
            return 1.0
        a = self.signature(u)
        b = self.signature(v)
        sigma = estimate_jaccard(a, b)
        adj = self.graph.adj
        return estimate_containment(len(adj[u]) + 1, len(adj[v]) + 1, sigma)

    def select(self, u: int, cutoff: float) -> set[int]:
        """``u`` plus every neighbour whose estimated t(u, v) reaches cutoff, in one kernel call."""
        adj = self.graph.adj
        nbrs = list(adj[u])
        sig = self.signature
        a = sig(u)
        others = [sig(v) for v in nbrs]
        sizes = [len(adj[v]) + 1 for v in nbrs]
        su = len(adj[u]) + 1
        k = self.scheme.k
        if self.variant == "bt":
            idx = kernels.select_bottomk(a.hashes, [o.hashes for o in others], k, su, sizes, cutoff)
        else:
            idx = kernels.select_buffered(a.mins, [o.mins for o in others], k, a.count,
                                          [o.count for o in others], su, sizes, cutoff)
        chosen = {nbrs[i] for i in idx}
        chosen.add(u)
        return chosen

    def on_insert(self, u: int, v: int) -> None:
        sigs = self.signatures
        if u in sigs:
            sigs[u].add(v)
        if v in sigs:
            sigs[v].add(u)

    def on_delete(self, u: int, v: int) -> None:
        sigs = self.signatures
        g = self.graph
        if u in sigs:
            sigs[u].remove(v, lambda: g.closed_neighborhood(u))
        if v in sigs:
            sigs[v].remove(u, lambda: g.closed_neighborhood(v))


def make_backend(kind: str, graph, k: int = 8, l: int = 8, seed: int = DEFAULT_SEED):
    if kind == "exact":
        return ExactBackend(graph)
    if kind in VARIANTS:
        return SketchBackend(graph, kind, HashScheme(seed, k), l)
    raise InputError(f"unknown backend {kind!r}; expected exact, bf or bt")
