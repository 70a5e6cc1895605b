# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; results match ``_pykernels`` bit for bit."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free, qsort

cdef uint64_t _GOLDEN = 0x9E3779B97F4A7C15ULL
cdef uint64_t _C1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t _C2 = 0x94D049BB133111EBULL


cdef inline uint64_t _mix(uint64_t x) noexcept nogil:
    cdef uint64_t z = x + _GOLDEN
    z = (z ^ (z >> 30)) * _C1
    z = (z ^ (z >> 27)) * _C2
    return z ^ (z >> 31)


cdef int _cmp_u64(const void* a, const void* b) noexcept nogil:
    cdef uint64_t x = (<uint64_t*>a)[0]
    cdef uint64_t y = (<uint64_t*>b)[0]
    return (x > y) - (x < y)


def mix64(uint64_t x):
    return _mix(x)


def keyed_hash(uint64_t seed, uint64_t x):
    return _mix(x ^ seed)


def hash_many(uint64_t seed, items):
    return [_mix(<uint64_t>x ^ seed) for x in items]


def slot_hashes(seeds, uint64_t x):
    return [_mix(x ^ <uint64_t>s) for s in seeds]


def smallest_per_slot(seeds, items, Py_ssize_t l):
    cdef list xs = list(items)
    cdef Py_ssize_t n = len(xs), i, take
    cdef uint64_t s
    cdef uint64_t* vals = <uint64_t*>malloc(n * sizeof(uint64_t) + 1)
    cdef uint64_t* hs = <uint64_t*>malloc(n * sizeof(uint64_t) + 1)
    cdef list out = []
    if vals == NULL or hs == NULL:
        free(vals)
        free(hs)
        raise MemoryError()
    try:
        for i in range(n):
            vals[i] = <uint64_t>xs[i]
        take = l if l < n else n
        for seed in seeds:
            s = <uint64_t>seed
            for i in range(n):
                hs[i] = _mix(vals[i] ^ s)
            qsort(hs, n, sizeof(uint64_t), _cmp_u64)
            out.append([hs[i] for i in range(take)])
    finally:
        free(vals)
        free(hs)
    return out


def count_equal(list a, list b):
    cdef Py_ssize_t i, n = min(len(a), len(b))
    cdef Py_ssize_t c = 0
    for i in range(n):
        if a[i] == b[i]:
            c += 1
    return c


def bottomk_common(list a, list b, Py_ssize_t k):
    cdef Py_ssize_t i = 0, j = 0, taken = 0, common = 0
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef uint64_t x, y
    while taken < k and (i < na or j < nb):
        if i < na and j < nb:
            x = a[i]
            y = b[j]
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


cdef inline double _containment(Py_ssize_t su, Py_ssize_t sv, double sigma) noexcept nogil:
    cdef double t
    if sigma <= 0.0:
        return 0.0
    t = <double>(su + sv) * sigma / (<double>su * (1.0 + sigma))
    if t > 1.0:
        return 1.0
    if t < 0.0:
        return 0.0
    return t


def containment_from_sigma(Py_ssize_t su, Py_ssize_t sv, double sigma):
    return _containment(su, sv, sigma)


def select_bottomk(list a, list others, Py_ssize_t k, Py_ssize_t su, list sizes, double cutoff):
    cdef Py_ssize_t na = len(a), nb, i, j, p, q, taken, common, idx
    cdef Py_ssize_t amax = na if na < k else k
    cdef uint64_t x, y
    cdef double sigma
    cdef list b
    cdef list out = []
    cdef uint64_t* av = <uint64_t*>malloc(amax * sizeof(uint64_t) + 1)
    if av == NULL:
        raise MemoryError()
    try:
        # only the first k values of either side can be reached by the merge
        for j in range(amax):
            av[j] = a[j]
        for idx in range(len(others)):
            b = others[idx]
            nb = len(b)
            if na == 0 or nb == 0:
                sigma = 1.0 if na == nb else 0.0
            else:
                p = q = taken = common = 0
                while taken < k and (p < amax or q < nb):
                    if p < amax and q < nb:
                        x = av[p]
                        y = b[q]
                        if x == y:
                            common += 1
                            p += 1
                            q += 1
                        elif x < y:
                            p += 1
                        else:
                            q += 1
                    elif p < amax:
                        p += 1
                    else:
                        q += 1
                    taken += 1
                sigma = <double>common / <double>taken
            if _containment(su, sizes[idx], sigma) >= cutoff:
                out.append(idx)
    finally:
        free(av)
    return out


def select_buffered(list amins, list others, Py_ssize_t k, Py_ssize_t na, list counts,
                    Py_ssize_t su, list sizes, double cutoff):
    cdef Py_ssize_t i, idx, nb, c, n = len(amins)
    cdef double sigma
    cdef list b
    cdef list out = []
    for idx in range(len(others)):
        b = others[idx]
        nb = counts[idx]
        if na == 0 or nb == 0:
            sigma = 1.0 if na == nb else 0.0
        else:
            c = 0
            for i in range(min(n, len(b))):
                if amins[i] == b[i]:
                    c += 1
            sigma = <double>c / <double>k
        if _containment(su, sizes[idx], sigma) >= cutoff:
            out.append(idx)
    return out
