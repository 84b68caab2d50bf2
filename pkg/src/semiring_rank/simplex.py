"""Exact phase-one simplex over the rationals.

Only feasibility is needed here: find ``y >= 0`` with ``A y = b``.  Bland's
rule guarantees termination; all arithmetic uses ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def feasible_point(A: Sequence[Sequence], b: Sequence, n_vars: int | None = None) -> list[Fraction] | None:
    """A nonnegative solution of ``A y = b``, or ``None`` when there is none."""
    m = len(A)
    n = n_vars if n_vars is not None else (len(A[0]) if m else 0)
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        rows.append(row + art + [rhs])
    width = n + m
    basis = list(range(n, n + m))
    # phase-one objective: minimise the sum of artificials; cost row holds
    # reduced costs with the (negated) objective value in the last slot
    cost = [Fraction(0)] * (width + 1)
    for row in rows:
        for j in range(n):
            cost[j] -= row[j]
        cost[width] -= row[width]

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # cannot happen: the phase-one objective is bounded below by zero
            raise ArithmeticError("unbounded phase-one problem")
        prow = rows[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [v / piv for v in prow]
            rows[leave] = prow
        for i, row in enumerate(rows):
            if i != leave and row[enter] != 0:
                f = row[enter]
                rows[i] = [v - f * p for v, p in zip(row, prow)]
        f = cost[enter]
        cost = [v - f * p for v, p in zip(cost, prow)]
        basis[leave] = enter

    if cost[width] != 0:
        return None
    y = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            y[var] = rows[i][width]
    return y
