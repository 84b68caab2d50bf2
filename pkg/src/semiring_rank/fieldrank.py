"""Exact rank and determinant of 0-1 matrices over the reals and over GF(2)."""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .errors import ShapeError
from .matrix import BinaryMatrix


@dataclass(frozen=True)
class FieldRankResult:
    """Rank together with a nonsingular pivot submatrix certifying it.

    ``pivot_rows`` and ``pivot_cols`` are 0-based and listed in pivot order;
    ``to_dict`` reports them 1-based.
    """

    rank: int
    pivot_rows: tuple[int, ...]
    pivot_cols: tuple[int, ...]

    def to_dict(self):
        return {"rank": self.rank, "pivot_rows": [i + 1 for i in self.pivot_rows],
                "pivot_cols": [j + 1 for j in self.pivot_cols]}


def _bareiss(rows: list[list[int]], n_cols: int):
    """Fraction-free elimination in place.

    Returns the pivot rows, pivot columns and the last pivot value.  Every
    intermediate entry is a minor of the input, so all divisions are exact.
    """
    free = list(range(len(rows)))
    prev = 1
    pivot_rows, pivot_cols = [], []
    for col in range(n_cols):
        pr = next((r for r in free if rows[r][col] != 0), None)
        if pr is None:
            continue
        free.remove(pr)
        pv = rows[pr][col]
        prow = rows[pr]
        for r in free:
            row = rows[r]
            f = row[col]
            for c in range(col, n_cols):
                row[c] = (pv * row[c] - f * prow[c]) // prev
        prev = pv
        pivot_rows.append(pr)
        pivot_cols.append(col)
        if not free:
            break
    return pivot_rows, pivot_cols, prev


def rank_real(X: BinaryMatrix) -> FieldRankResult:
    rows = X.to_lists()
    pr, pc, _ = _bareiss(rows, X.n_cols)
    return FieldRankResult(len(pr), tuple(pr), tuple(pc))


def rank_z2(X: BinaryMatrix) -> FieldRankResult:
    pr, pc = kernels.gf2_eliminate(X.rows, X.n_cols)
    return FieldRankResult(len(pr), tuple(pr), tuple(pc))


def _permutation_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _require_square(X: BinaryMatrix):
    if X.n_rows != X.n_cols:
        raise ShapeError(f"determinant needs a square matrix, got {X.n_rows}x{X.n_cols}")


def det_int(X: BinaryMatrix) -> int:
    """Exact integer determinant by Bareiss elimination."""
    _require_square(X)
    n = X.n_rows
    if n == 0:
        return 1
    pr, pc, last = _bareiss(X.to_lists(), n)
    if len(pr) < n:
        return 0
    # k-th pivot sits at (pr[k], k); undo that row permutation
    return _permutation_sign(pr) * last


def det_z2(X: BinaryMatrix) -> int:
    _require_square(X)
    return int(rank_z2(X).rank == X.n_rows)
