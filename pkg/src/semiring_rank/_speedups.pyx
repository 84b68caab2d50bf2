# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitset kernels for vectors of at most 64 bits.

Each entry point falls back to the pure-Python routine when any input does
not fit in 64 bits.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset
from libc.stdint cimport uint64_t

from . import _purekernels as _py

ctypedef unsigned long long u64

cdef u64 _U64_MAX = 0xFFFFFFFFFFFFFFFF


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline Py_ssize_t _ctz(u64 x) nogil:
    return __builtin_ctzll(x)


cdef inline bint _fits(object values):
    for v in values:
        if v < 0 or v > _U64_MAX:
            return False
    return True


cdef u64* _pack(object values, Py_ssize_t n):
    cdef u64* buf = <u64*> malloc((n if n > 0 else 1) * sizeof(u64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i = 0
    for v in values:
        buf[i] = <u64> v
        i += 1
    return buf


# open-addressing set of u64 keys; slot value 0 marks empty, so keys are
# stored as key + 1 with a separate flag for the all-ones key.
cdef struct U64Set:
    u64* slots
    Py_ssize_t mask
    bint has_max


cdef int _set_init(U64Set* s, Py_ssize_t expected) except -1:
    cdef Py_ssize_t cap = 16
    while cap < 2 * expected + 2:
        cap <<= 1
    s.slots = <u64*> malloc(cap * sizeof(u64))
    if s.slots == NULL:
        raise MemoryError()
    memset(s.slots, 0, cap * sizeof(u64))
    s.mask = cap - 1
    s.has_max = False
    return 0


cdef inline u64 _mix(u64 x) nogil:
    x ^= x >> 33
    x *= 0xff51afd7ed558ccdULL
    x ^= x >> 33
    x *= 0xc4ceb9fe1a85ec53ULL
    x ^= x >> 33
    return x


cdef inline bint _set_add(U64Set* s, u64 key) nogil:
    """Insert; return True if the key was already present."""
    if key == _U64_MAX:
        if s.has_max:
            return True
        s.has_max = True
        return False
    cdef u64 stored = key + 1
    cdef Py_ssize_t i = <Py_ssize_t> (_mix(key) & <u64> s.mask)
    while s.slots[i] != 0:
        if s.slots[i] == stored:
            return True
        i = (i + 1) & s.mask
    s.slots[i] = stored
    return False


def or_injective(vecs):
    vecs = list(vecs)
    cdef Py_ssize_t k = len(vecs)
    if k > 30 or not _fits(vecs):
        return _py.or_injective(vecs)
    cdef Py_ssize_t total = (<Py_ssize_t> 1) << k
    cdef u64* v = _pack(vecs, k)
    cdef u64* table = <u64*> malloc(total * sizeof(u64))
    cdef U64Set seen
    cdef Py_ssize_t h, low
    cdef bint ok = True
    if table == NULL:
        free(v)
        raise MemoryError()
    try:
        _set_init(&seen, total)
        try:
            table[0] = 0
            with nogil:
                for h in range(1, total):
                    low = h & -h
                    table[h] = table[h ^ low] | v[_ctz(<u64> low)]
                    if _set_add(&seen, table[h]):
                        ok = False
                        break
        finally:
            free(seen.slots)
    finally:
        free(table)
        free(v)
    return ok


def or_span(gens):
    gens = list(gens)
    if not _fits(gens):
        return _py.or_span(gens)
    # distinct generators only; span size is bounded by the caller's limits
    cdef list out = [0]
    cdef set seen = {0}
    cdef u64 g, e, c
    cdef Py_ssize_t i, n
    for gobj in gens:
        g = gobj
        if g in seen:
            continue
        n = len(out)
        for i in range(n):
            e = out[i]
            c = e | g
            if c not in seen:
                seen.add(c)
                out.append(c)
    return frozenset(out)


def count_mixings(vecs, target):
    vecs = list(vecs)
    cdef Py_ssize_t k = len(vecs)
    if k > 30 or not _fits(vecs) or not _fits([target]):
        return _py.count_mixings(vecs, target)
    cdef u64 t = target
    cdef Py_ssize_t total = (<Py_ssize_t> 1) << k
    cdef u64* v = _pack(vecs, k)
    cdef u64* table = <u64*> malloc(total * sizeof(u64))
    cdef Py_ssize_t h, low
    cdef long long count = 1 if t == 0 else 0
    if table == NULL:
        free(v)
        raise MemoryError()
    try:
        table[0] = 0
        with nogil:
            for h in range(1, total):
                low = h & -h
                table[h] = table[h ^ low] | v[_ctz(<u64> low)]
                if table[h] == t:
                    count += 1
    finally:
        free(table)
        free(v)
    return count


def gf2_eliminate(rows, n_cols):
    rows = list(rows)
    cdef Py_ssize_t n = len(rows)
    if n_cols > 64 or not _fits(rows):
        return _py.gf2_eliminate(rows, n_cols)
    cdef u64* work = _pack(rows, n)
    cdef char* used = <char*> malloc((n if n > 0 else 1))
    cdef Py_ssize_t col, r, pr, remaining = n
    cdef u64 bit, pv
    pivot_rows = []
    pivot_cols = []
    if used == NULL:
        free(work)
        raise MemoryError()
    try:
        memset(used, 0, n if n > 0 else 1)
        for col in range(n_cols):
            if remaining == 0:
                break
            bit = (<u64> 1) << col
            pr = -1
            for r in range(n):
                if not used[r] and (work[r] & bit):
                    pr = r
                    break
            if pr < 0:
                continue
            used[pr] = 1
            remaining -= 1
            pv = work[pr]
            for r in range(n):
                if not used[r] and (work[r] & bit):
                    work[r] ^= pv
            pivot_rows.append(pr)
            pivot_cols.append(col)
    finally:
        free(used)
        free(work)
    return pivot_rows, pivot_cols


def dominated_subset(vecs, x):
    if not _fits([x]) or not _fits(vecs):
        return _py.dominated_subset(vecs, x)
    cdef u64 notx = ~(<u64> x)
    cdef u64 w
    out = []
    for k, vobj in enumerate(vecs):
        w = vobj
        if w & notx == 0:
            out.append(k)
    return out
