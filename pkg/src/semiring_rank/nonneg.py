"""Uniqueness of nonnegative weights for a fixed pattern matrix.

For a column ``x`` and a solution ``h0 >= 0`` of ``W h = x``, the solution set
is ``{h0 + q : W q = 0} ∩ {h >= 0}``.  It is a single point iff no nonzero
``q`` in the null space of ``W`` is a feasible direction at ``h0``, meaning
``q_j >= 0`` wherever ``h0_j = 0``.  Such a ``q`` either vanishes off the
support of ``h0`` (then the support columns of ``W`` are linearly dependent)
or can be scaled so its entries on the zero set sum to one (an LP
feasibility question).  Both checks are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InfeasibleError, ShapeError
from .matrix import BinaryMatrix, RationalMatrix
from .simplex import feasible_point


@dataclass(frozen=True)
class RationalNullBasis:
    dim: int
    basis: tuple[tuple[Fraction, ...], ...]


def _rref(rows: list[list[Fraction]], n_cols: int):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rational_rank(rows: Sequence[Sequence], n_cols: int) -> int:
    return len(_rref([[Fraction(v) for v in r] for r in rows], n_cols)[1])


def _as_rational(M) -> RationalMatrix:
    return RationalMatrix.from_binary(M) if isinstance(M, BinaryMatrix) else M


def null_space(W) -> RationalNullBasis:
    """Exact basis of ``{q : W q = 0}``, one vector per free column."""
    W = _as_rational(W)
    reduced, pivots = _rref(W.to_lists(), W.n_cols)
    free = [c for c in range(W.n_cols) if c not in pivots]
    basis = []
    for f in free:
        q = [Fraction(0)] * W.n_cols
        q[f] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            q[pc] = -row[f]
        basis.append(tuple(q))
    return RationalNullBasis(len(basis), tuple(basis))


@dataclass(frozen=True)
class NonnegUniqueness:
    """Per-column verdicts plus one particular nonnegative solution ``H0``."""

    per_column: tuple[bool, ...]
    H0: RationalMatrix

    @property
    def unique(self) -> bool:
        return all(self.per_column)


def _column_is_unique(W: RationalMatrix, h0: list[Fraction]) -> bool:
    support = [j for j, v in enumerate(h0) if v > 0]
    zeros = [j for j, v in enumerate(h0) if v == 0]
    cols = [W.column(j) for j in range(W.n_cols)]
    if support:
        sub = [[cols[j][i] for j in support] for i in range(W.n_rows)]
        if rational_rank(sub, len(support)) < len(support):
            return False
    if not zeros:
        return True
    # q_Z >= 0 with sum 1, q_S = p - n free; W_Z q_Z + W_S (p - n) = 0
    A = []
    for i in range(W.n_rows):
        A.append([cols[j][i] for j in zeros] + [cols[j][i] for j in support] + [-cols[j][i] for j in support])
    A.append([Fraction(1)] * len(zeros) + [Fraction(0)] * (2 * len(support)))
    b = [Fraction(0)] * W.n_rows + [Fraction(1)]
    return feasible_point(A, b, len(zeros) + 2 * len(support)) is None


def unique_h_nonneg(X, W) -> NonnegUniqueness:
    """Decide, column by column, whether ``X = W H`` has a unique ``H >= 0``."""
    X, W = _as_rational(X), _as_rational(W)
    if X.n_rows != W.n_rows:
        raise ShapeError(f"X has {X.n_rows} rows but W has {W.n_rows}")
    if not W.is_nonnegative():
        raise ValueError("W must be nonnegative")
    wrows = W.to_lists()
    verdicts = []
    H0 = [[Fraction(0)] * X.n_cols for _ in range(W.n_cols)]
    for c in range(X.n_cols):
        h0 = feasible_point(wrows, X.column(c), W.n_cols)
        if h0 is None:
            raise InfeasibleError(f"column {c + 1} of X has no nonnegative representation", column=c)
        for k, v in enumerate(h0):
            H0[k][c] = v
        verdicts.append(_column_is_unique(W, h0))
    return NonnegUniqueness(tuple(verdicts), RationalMatrix.from_rows(H0) if W.n_cols else
                            RationalMatrix(0, X.n_cols, ()))
