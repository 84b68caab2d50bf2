"""Pure-Python bitset kernels.

Reference implementations of the routines in ``_speedups.pyx``.  Vectors are
Python ints used as bitsets, so there is no width limit here.
"""

from __future__ import annotations


def or_span(gens):
    """All ORs of subsets of ``gens`` (the empty OR included)."""
    elems = {0}
    for g in gens:
        if g in elems:
            continue
        elems |= {e | g for e in elems}
    return frozenset(elems)


def or_injective(vecs):
    """True iff distinct non-empty subsets of ``vecs`` have distinct ORs.

    Stops at the first collision.
    """
    ors = []
    seen = set()
    for v in vecs:
        fresh = [v]
        fresh.extend(s | v for s in ors)
        for c in fresh:
            if c in seen:
                return False
            seen.add(c)
        ors.extend(fresh)
    return True


def count_mixings(vecs, target):
    """Number of 0/1 weight vectors ``h`` with ``OR_{h_k=1} vecs[k] == target``.

    Brute force over all ``2**len(vecs)`` weight vectors.
    """
    n = len(vecs)
    table = [0] * (1 << n)
    count = 1 if target == 0 else 0
    for h in range(1, 1 << n):
        low = h & -h
        table[h] = table[h ^ low] | vecs[low.bit_length() - 1]
        if table[h] == target:
            count += 1
    return count


def gf2_eliminate(rows, n_cols):
    """Gaussian elimination over GF(2).

    Columns are scanned left to right; the pivot in each column is the lowest
    original row index among the remaining rows.  Returns
    ``(pivot_rows, pivot_cols)`` in original indices.
    """
    work = list(rows)
    free = list(range(len(work)))
    pivot_rows = []
    pivot_cols = []
    for col in range(n_cols):
        bit = 1 << col
        pr = -1
        for r in free:
            if work[r] & bit:
                pr = r
                break
        if pr < 0:
            continue
        free.remove(pr)
        pv = work[pr]
        for r in free:
            if work[r] & bit:
                work[r] ^= pv
        pivot_rows.append(pr)
        pivot_cols.append(col)
        if not free:
            break
    return pivot_rows, pivot_cols


def dominated_subset(vecs, x):
    """Indices ``k`` with ``vecs[k]`` dominated by ``x``."""
    return [k for k, v in enumerate(vecs) if v & ~x == 0]
