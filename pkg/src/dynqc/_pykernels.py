"""Pure-Python implementations of the hot kernels.

Every function here has a twin in ``_kernels.pyx`` with identical results.
"""

from __future__ import annotations

import heapq

MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15
_C1 = 0xBF58476D1CE4E5B9
_C2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """SplitMix64 finalizer; a bijection on 64-bit integers."""
    z = (x + _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * _C1) & MASK64
    z = ((z ^ (z >> 27)) * _C2) & MASK64
    return z ^ (z >> 31)


def keyed_hash(seed: int, x: int) -> int:
    return mix64((x ^ seed) & MASK64)


def hash_many(seed: int, items) -> list:
    return [keyed_hash(seed, x) for x in items]


def slot_hashes(seeds, x: int) -> list:
    return [keyed_hash(s, x) for s in seeds]


def smallest_per_slot(seeds, items, l: int) -> list:
    """For every seed, the ``l`` smallest keyed hashes over ``items``, ascending."""
    items = list(items)
    out = []
    for s in seeds:
        hs = [keyed_hash(s, x) for x in items]
        if len(hs) > l:
            out.append(heapq.nsmallest(l, hs))
        else:
            hs.sort()
            out.append(hs)
    return out


def count_equal(a, b) -> int:
    n = 0
    for x, y in zip(a, b):
        if x == y:
            n += 1
    return n


def bottomk_common(a, b, k: int):
    """Walk the merge of two ascending distinct sequences.

    Returns ``(common, taken)``: among the ``taken = min(k, |a ∪ b|)`` smallest
    values of the union, how many occur in both inputs.
    """
    i = j = taken = common = 0
    na, nb = len(a), len(b)
    while taken < k and (i < na or j < nb):
        if i < na and j < nb:
            x, y = a[i], b[j]
            if x == y:
                common += 1
                i += 1
                j += 1
            elif x < y:
                i += 1
            else:
                j += 1
        elif i < na:
            i += 1
        else:
            j += 1
        taken += 1
    return common, taken


def containment_from_sigma(su: int, sv: int, sigma: float) -> float:
    if sigma <= 0.0:
        return 0.0
    t = (su + sv) * sigma / (su * (1.0 + sigma))
    return min(1.0, max(0.0, t))


def select_bottomk(a, others, k: int, su: int, sizes, cutoff: float) -> list:
    """Indices ``i`` whose bottom-k containment estimate against ``a`` reaches ``cutoff``."""
    out = []
    na = len(a)
    for i, b in enumerate(others):
        nb = len(b)
        if na == 0 or nb == 0:
            sigma = 1.0 if na == nb else 0.0
        else:
            common, taken = bottomk_common(a, b, k)
            sigma = common / taken
        if containment_from_sigma(su, sizes[i], sigma) >= cutoff:
            out.append(i)
    return out


def select_buffered(amins, others, k: int, na: int, counts, su: int, sizes, cutoff: float) -> list:
    """Same as :func:`select_bottomk` for slot-minimum vectors."""
    out = []
    for i, b in enumerate(others):
        nb = counts[i]
        if na == 0 or nb == 0:
            sigma = 1.0 if na == nb else 0.0
        else:
            sigma = count_equal(amins, b) / k
        if containment_from_sigma(su, sizes[i], sigma) >= cutoff:
            out.append(i)
    return out
