"""Uniqueness of Boolean rank factorizations.

Unique W is decided by a census of every order-R cone containing the data,
R being the Boolean rank.  In a rank-R factorization every generator is used
by some column (otherwise R - 1 would suffice), so it is dominated by that
column.  The census therefore draws generators only from the nonzero vectors
dominated by at least one column of X.

Unique H for a fixed W holds iff, for every column x, the columns of W that
x dominates are Boolean independent and nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from . import kernels
from .cone import boolean_column_rank, minimal_generators_of, sort_masks
from .errors import Budget, DomainError, Limits, ResourceError, ShapeError
from .matrix import BinaryMatrix, lex_key
from .search import boolean_rank


@dataclass(frozen=True)
class ConeCensus:
    """All order-``target_order`` cones containing cone(X), as canonical generator sets."""

    target_order: int
    ambient_dim: int
    cones: tuple[tuple[int, ...], ...]
    exhausted: bool = True

    def __len__(self) -> int:
        return len(self.cones)

    def as_matrices(self) -> list[BinaryMatrix]:
        return [BinaryMatrix.from_columns(list(g), self.ambient_dim) for g in self.cones]

    def to_lists(self) -> list[list[list[int]]]:
        return [[[(m >> i) & 1 for i in range(self.ambient_dim)] for m in g] for g in self.cones]


def _submasks(x: int):
    sub = x
    while sub:
        yield sub
        sub = (sub - 1) & x


def census_candidates(X: BinaryMatrix) -> list[int]:
    """Nonzero vectors dominated by at least one column of X, sorted lexicographically."""
    cands: set[int] = set()
    for c in set(X.columns):
        cands.update(_submasks(c))
    return sort_masks(cands, X.n_rows)


def _spans_columns(gens, cols) -> bool:
    for x in cols:
        acc = 0
        for g in gens:
            if g & ~x == 0:
                acc |= g
        if acc != x:
            return False
    return True


def cone_census(X: BinaryMatrix, R: int | None = None, limits: Limits | None = None) -> ConeCensus:
    """Every order-R cone C with cone(X) ⊆ C, where R must be the Boolean rank of X."""
    rk, _ = boolean_rank(X, limits)
    if R is None:
        R = rk
    elif R != rk:
        raise ValueError(f"census order must equal the Boolean rank ({rk}), got {R}")
    cols = sorted({c for c in X.columns if c})
    if R == 0:
        return ConeCensus(0, X.n_rows, ((),))
    cands = census_candidates(X)
    budget = Budget(limits if limits is not None else Limits(), "cone census")
    found: list[tuple[int, ...]] = []
    try:
        for gens in combinations(cands, R):
            budget.tick(partial=found)
            if not _spans_columns(gens, cols):
                continue
            if len(minimal_generators_of(gens, X.n_rows)) != R:
                continue
            found.append(tuple(gens))
    except ResourceError as exc:
        exc.partial = ConeCensus(R, X.n_rows, tuple(found), exhausted=False)
        raise
    key = lambda g: tuple(lex_key(m, X.n_rows) for m in g)
    return ConeCensus(R, X.n_rows, tuple(sorted(found, key=key)))


def unique_w_boolean(X: BinaryMatrix, limits: Limits | None = None) -> tuple[bool, ConeCensus]:
    census = cone_census(X, limits=limits)
    return census.exhausted and len(census) == 1, census


def _check_containment(X: BinaryMatrix, W: BinaryMatrix):
    if X.n_rows != W.n_rows:
        raise ShapeError(f"X has {X.n_rows} rows but W has {W.n_rows}")
    wcols = W.columns
    for j, x in enumerate(X.columns):
        acc = 0
        for k in kernels.dominated_subset(wcols, x):
            acc |= wcols[k]
        if acc != x:
            raise DomainError(f"column {j + 1} of X is not an OR of columns of W", )


@dataclass(frozen=True)
class ColumnMixing:
    column: int
    dominated: tuple[int, ...]
    independent: bool


def unique_h_boolean(X: BinaryMatrix, W: BinaryMatrix) -> tuple[bool, list[ColumnMixing]]:
    """Whether ``X = W ∧ H`` determines ``H``; detail per column (0-based indices)."""
    _check_containment(X, W)
    wcols = W.columns
    detail = []
    for j, x in enumerate(X.columns):
        dom = kernels.dominated_subset(wcols, x)
        # a zero column sits in every P(x, W) and its weight is free
        ok = kernels.or_injective([wcols[k] for k in dom]) and all(wcols[k] for k in dom)
        detail.append(ColumnMixing(j, tuple(dom), ok))
    return all(d.independent for d in detail), detail


def count_h_solutions(X: BinaryMatrix, W: BinaryMatrix, max_generators: int = 20) -> list[int]:
    """For each column, the number of h in B^R with W ∧ h equal to it (brute force)."""
    if X.n_rows != W.n_rows:
        raise ShapeError(f"X has {X.n_rows} rows but W has {W.n_rows}")
    if W.n_cols > max_generators:
        raise ResourceError(f"W has {W.n_cols} columns; enumeration limit is {max_generators}")
    wcols = list(W.columns)
    return [kernels.count_mixings(wcols, x) for x in X.columns]


def boundary_close(W: BinaryMatrix) -> bool:
    """Every ordered pair of distinct columns is separated by some row (1 then 0)."""
    cols = W.columns
    for i in range(W.n_cols):
        for j in range(W.n_cols):
            if i != j and cols[i] & ~cols[j] == 0:
                return False
    return True


def canonical_pieces(W: BinaryMatrix, H: BinaryMatrix) -> tuple[tuple[int, int], ...]:
    """Factorization as a sorted multiset of (pattern, weight-row) pairs.

    Two Boolean factorizations differ by a permutation exactly when these
    tuples are equal.
    """
    return tuple(sorted(zip(W.columns, H.rows)))


@dataclass
class UniquenessReport:
    boolean_rank: int
    boolean_column_rank: int
    unique_w: bool
    cone_census_size: int
    unique_h_given_w: bool
    boundary_close: bool
    fully_unique: bool
    representative_w: BinaryMatrix | None = None
    representative_is_unique: bool = False
    census: ConeCensus | None = None
    h_detail: list = field(default_factory=list)

    def to_dict(self, include_census: bool = False):
        out = {
            "boolean_rank": self.boolean_rank,
            "boolean_column_rank": self.boolean_column_rank,
            "unique_w": self.unique_w,
            "cone_census_size": self.cone_census_size,
            "unique_h_given_w": self.unique_h_given_w,
            "boundary_close": self.boundary_close,
            "fully_unique": self.fully_unique,
            "representative_w": None if self.representative_w is None else self.representative_w.to_lists(),
            "representative_is_unique": self.representative_is_unique,
        }
        if include_census and self.census is not None:
            out["census"] = self.census.to_lists()
        return out


def uniqueness_report(X: BinaryMatrix, limits: Limits | None = None) -> UniquenessReport:
    """Unique W by census, unique H for the (representative) W, and the combined verdict.

    When the Boolean column rank equals the Boolean rank, uniqueness of the
    cone alone decides full uniqueness; otherwise both W and H must be unique.
    """
    rk, _ = boolean_rank(X, limits)
    crk = boolean_column_rank(X, limits=limits)
    unique_w, census = unique_w_boolean(X, limits)
    W = census.as_matrices()[0] if len(census) else None
    if W is not None:
        unique_h, detail = unique_h_boolean(X, W)
        bclose = boundary_close(W)
    else:
        unique_h, detail, bclose = False, [], False
    fully = unique_w if crk == rk else (unique_w and unique_h)
    return UniquenessReport(
        boolean_rank=rk,
        boolean_column_rank=crk,
        unique_w=unique_w,
        cone_census_size=len(census),
        unique_h_given_w=unique_h,
        boundary_close=bclose,
        fully_unique=fully,
        representative_w=W,
        representative_is_unique=unique_w,
        census=census,
        h_detail=detail,
    )
