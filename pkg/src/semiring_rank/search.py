"""Exact combinatorial ranks: Boolean rank, binary rank, isolation number.

Also factorization verification under each of the five arithmetics,
thresholding, nonnegative-rank bounds, and the aggregated rank report.

Cells of an ``N x M`` matrix are addressed as ``i * M + j`` inside cell
bitsets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .clique import max_clique
from .errors import Budget, DomainError, Limits, ResourceError, ShapeError, VerificationError
from .fieldrank import FieldRankResult, rank_real, rank_z2
from .matrix import BinaryMatrix, RationalMatrix, SemiringTag, lex_key

AnyMatrix = Union[BinaryMatrix, RationalMatrix]

UNBUDGETED_SIDE = 12


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Rectangle:
    """All-ones submatrix given by row and column bitsets (0-based)."""

    rows: int
    cols: int

    def row_indices(self) -> list[int]:
        return list(_iter_bits(self.rows))

    def col_indices(self) -> list[int]:
        return list(_iter_bits(self.cols))

    def cells(self, n_cols: int) -> int:
        out = 0
        for i in _iter_bits(self.rows):
            out |= self.cols << (i * n_cols)
        return out

    def size(self) -> int:
        return self.rows.bit_count() * self.cols.bit_count()

    def sort_key(self):
        return (tuple(self.row_indices()), tuple(self.col_indices()))

    def to_dict(self):
        return {"rows": [i + 1 for i in self.row_indices()], "cols": [j + 1 for j in self.col_indices()]}


@dataclass(frozen=True)
class Factorization:
    W: AnyMatrix
    H: AnyMatrix
    semiring: SemiringTag

    def __post_init__(self):
        if self.W.n_cols != self.H.n_rows:
            raise ShapeError(f"factor shapes {self.W.shape} and {self.H.shape} do not compose")

    @property
    def inner_dim(self) -> int:
        return self.W.n_cols

    @classmethod
    def from_rectangles(cls, rects, n_rows: int, n_cols: int, semiring: SemiringTag) -> "Factorization":
        """W columns are the row sets, H rows the column sets, sorted canonically."""
        rects = sorted(rects, key=lambda r: (lex_key(r.rows, n_rows), lex_key(r.cols, n_cols)))
        W = BinaryMatrix.from_columns([r.rows for r in rects], n_rows)
        H = BinaryMatrix(len(rects), n_cols, tuple(r.cols for r in rects))
        return cls(W, H, semiring)

    def rectangles(self) -> list[Rectangle]:
        W, H = _as_binary(self.W, "W"), _as_binary(self.H, "H")
        return [Rectangle(W.columns[k], H.rows[k]) for k in range(self.inner_dim)]

    def to_dict(self):
        return {
            "semiring": self.semiring.value,
            "inner_dim": self.inner_dim,
            "W": [[str(v) if isinstance(v, Fraction) else v for v in r] for r in self.W.to_lists()],
            "H": [[str(v) if isinstance(v, Fraction) else v for v in r] for r in self.H.to_lists()],
        }


# -- products and verification --------------------------------------------

def _as_binary(M: AnyMatrix, name: str) -> BinaryMatrix:
    if isinstance(M, BinaryMatrix):
        return M
    if not M.is_binary():
        raise DomainError(f"{name} has entries outside {{0, 1}}")
    return M.to_binary()


def _as_rational(M: AnyMatrix) -> RationalMatrix:
    return M if isinstance(M, RationalMatrix) else RationalMatrix.from_binary(M)


def product(W: AnyMatrix, H: AnyMatrix, semiring: SemiringTag):
    """Product of ``W`` and ``H`` with the arithmetic named by ``semiring``.

    Boolean and Z2 products are returned as ``BinaryMatrix``; the others as
    ``RationalMatrix`` (binary factors multiply with integer arithmetic, so
    entries can exceed 1).
    """
    if W.n_cols != H.n_rows:
        raise ShapeError(f"factor shapes {W.shape} and {H.shape} do not compose")
    if semiring in (SemiringTag.BOOLEAN, SemiringTag.Z2):
        Wb, Hb = _as_binary(W, "W"), _as_binary(H, "H")
        rows = []
        for r in Wb.rows:
            acc = 0
            for k in _iter_bits(r):
                if semiring is SemiringTag.BOOLEAN:
                    acc |= Hb.rows[k]
                else:
                    acc ^= Hb.rows[k]
            rows.append(acc)
        return BinaryMatrix(Wb.n_rows, Hb.n_cols, tuple(rows))
    if semiring is SemiringTag.BINARY:
        _as_binary(W, "W")
        _as_binary(H, "H")
    Wr, Hr = _as_rational(W), _as_rational(H)
    if semiring is SemiringTag.NONNEG and not (Wr.is_nonnegative() and Hr.is_nonnegative()):
        raise DomainError("nonnegative factorization has a negative entry")
    return Wr @ Hr


def first_mismatch(X: BinaryMatrix, W: AnyMatrix, H: AnyMatrix, semiring: SemiringTag):
    """First (row, col) (0-based, row-major) where the product differs from X, or None."""
    if W.n_rows != X.n_rows or H.n_cols != X.n_cols:
        raise ShapeError(f"product shape {(W.n_rows, H.n_cols)} does not match {X.shape}")
    P = product(W, H, semiring)
    for i in range(X.n_rows):
        for j in range(X.n_cols):
            if P[i, j] != X[i, j]:
                return (i, j)
    return None


def verify_factorization(X: BinaryMatrix, W: AnyMatrix, H: AnyMatrix, semiring: SemiringTag) -> bool:
    return first_mismatch(X, W, H, semiring) is None


def threshold(W: AnyMatrix) -> BinaryMatrix:
    """Support pattern: 1 where the entry is positive."""
    if isinstance(W, BinaryMatrix):
        return W
    if not W.is_nonnegative():
        raise DomainError("cannot threshold a matrix with negative entries")
    return BinaryMatrix.from_rows([[int(v > 0) for v in r] for r in W.to_lists()], W.n_cols)


# -- rectangles -----------------------------------------------------------

def enumerate_maximal_rectangles(X: BinaryMatrix) -> list[Rectangle]:
    """Inclusion-maximal all-ones submatrices, sorted by row set then column set.

    Column sets of maximal rectangles are exactly the nonzero intersections of
    nonempty families of rows; the row set is then every row containing it.
    """
    col_sets: set[int] = set()
    for r in X.rows:
        if not r:
            continue
        new = {r}
        for c in col_sets:
            if c & r:
                new.add(c & r)
        col_sets |= new
    rects = []
    for c in col_sets:
        rows = 0
        for i, r in enumerate(X.rows):
            if r & c == c:
                rows |= 1 << i
        rects.append(Rectangle(rows, c))
    return sorted(rects, key=Rectangle.sort_key)


def _check_size(X: BinaryMatrix, limits, what):
    if limits is None and (X.n_rows > UNBUDGETED_SIDE or X.n_cols > UNBUDGETED_SIDE):
        raise ResourceError(f"{what}: matrices larger than {UNBUDGETED_SIDE}x{UNBUDGETED_SIDE} "
                            "need an explicit search budget")


# -- isolation number -----------------------------------------------------

def isolation_graph(X: BinaryMatrix):
    """Vertices are the 1-cells; edges join isolated pairs."""
    cells = X.ones_cells()
    adj = [0] * len(cells)
    for a, (i, j) in enumerate(cells):
        for b in range(a + 1, len(cells)):
            k, l = cells[b]
            if X[i, l] * X[k, j] == 0:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    return cells, adj


def isolation_number(X: BinaryMatrix) -> tuple[int, list[tuple[int, int]]]:
    """Maximum set of pairwise isolated ones; cells are 0-based (row, col)."""
    cells, adj = isolation_graph(X)
    clique = max_clique(adj)
    return len(clique), [cells[v] for v in clique]


# -- Boolean rank ---------------------------------------------------------

class _CoverProblem:
    def __init__(self, X: BinaryMatrix):
        self.X = X
        self.M = X.n_cols
        self.rects = enumerate_maximal_rectangles(X)
        self.rect_cells = [r.cells(self.M) for r in self.rects]
        self.ones = 0
        for i, r in enumerate(X.rows):
            self.ones |= r << (i * self.M)
        n_cells = X.n_rows * self.M
        self.cands: list[list[int]] = [[] for _ in range(n_cells)]
        self.compat = [0] * n_cells
        for k, cm in enumerate(self.rect_cells):
            for c in _iter_bits(cm):
                self.cands[c].append(k)
                self.compat[c] |= cm
        # cells with few coverers first: they make the greedy bound tighter
        self.cell_order = sorted(_iter_bits(self.ones), key=lambda c: (self.compat[c].bit_count(), c))

    def lower_bound(self, U: int) -> int:
        """Size of a greedy set of uncovered cells no two of which share a rectangle."""
        count = 0
        pool = U
        for c in self.cell_order:
            if not pool:
                break
            if (pool >> c) & 1:
                count += 1
                pool &= ~self.compat[c]
        return count

    def greedy_cover(self) -> list[int]:
        U = self.ones
        chosen = []
        while U:
            k = max(range(len(self.rects)), key=lambda t: ((self.rect_cells[t] & U).bit_count(), -t))
            chosen.append(k)
            U &= ~self.rect_cells[k]
        return chosen


def boolean_rank(X: BinaryMatrix, limits: Limits | None = None) -> tuple[int, Factorization]:
    """Minimum number of all-ones rectangles covering the 1-cells of X.

    Branch and bound over maximal rectangles, branching on the uncovered cell
    with the fewest covering rectangles.  Returns the rank and a Boolean
    witness with canonically ordered factors.
    """
    _check_size(X, limits, "boolean rank")
    if X.is_zero():
        return 0, Factorization.from_rectangles([], X.n_rows, X.n_cols, SemiringTag.BOOLEAN)
    prob = _CoverProblem(X)
    best = prob.greedy_cover()
    iso, _ = isolation_number(X)
    global_lb = max(iso, prob.lower_bound(prob.ones))
    budget = Budget(limits if limits is not None else Limits(), "boolean rank")

    def dfs(U: int, chosen: list[int]):
        nonlocal best
        budget.tick(lower=global_lb, upper=len(best))
        if not U:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + max(1, prob.lower_bound(U)) >= len(best):
            return
        cell = min(_iter_bits(U), key=lambda c: len(prob.cands[c]))
        opts = sorted(prob.cands[cell], key=lambda k: -(prob.rect_cells[k] & U).bit_count())
        for k in opts:
            chosen.append(k)
            dfs(U & ~prob.rect_cells[k], chosen)
            chosen.pop()
            if len(best) <= global_lb:
                return

    if len(best) > global_lb:
        try:
            dfs(prob.ones, [])
        except ResourceError as exc:
            exc.partial = Factorization.from_rectangles([prob.rects[k] for k in best], X.n_rows, X.n_cols,
                                                        SemiringTag.BOOLEAN)
            raise
    return len(best), Factorization.from_rectangles([prob.rects[k] for k in best], X.n_rows, X.n_cols,
                                                    SemiringTag.BOOLEAN)


# -- binary rank ----------------------------------------------------------

def _partition_lower_bound(U: int, n_rows: int, M: int) -> int:
    """Greedy set of cells of U pairwise not inside one all-ones-in-U rectangle."""
    full = (1 << M) - 1
    urows = [(U >> (i * M)) & full for i in range(n_rows)]
    count = 0
    pool = U
    while pool:
        low = pool & -pool
        c = low.bit_length() - 1
        i, j = divmod(c, M)
        count += 1
        reach = 0
        for k in range(n_rows):
            if (urows[k] >> j) & 1:
                reach |= (urows[i] & urows[k]) << (k * M)
        pool &= ~reach & ~low
    return count


def _rectangles_at(U: int, n_rows: int, M: int, cell: int):
    """All rectangles inside U having ``cell`` as top-left corner, largest first."""
    full = (1 << M) - 1
    i, j = divmod(cell, M)
    urows = [(U >> (k * M)) & full for k in range(n_rows)]
    free_cols = urows[i] & ~(1 << j)
    out = []
    sub = free_cols
    while True:
        C = sub | (1 << j)
        eligible = [k for k in range(i + 1, n_rows) if urows[k] & C == C]
        n_e = len(eligible)
        for pick in range(1 << n_e):
            R = 1 << i
            for t in range(n_e):
                if (pick >> t) & 1:
                    R |= 1 << eligible[t]
            out.append(Rectangle(R, C))
        if sub == 0:
            break
        sub = (sub - 1) & free_cols
    out.sort(key=lambda r: -r.size())
    return out


def binary_rank(X: BinaryMatrix, limits: Limits | None = None,
                lower_bound: int | None = None) -> tuple[int, Factorization]:
    """Minimum number of rectangles partitioning the 1-cells of X.

    Exact-cover search with iterative deepening.  Each level branches on the
    first uncovered cell in row-major order, which must be the top-left corner
    of the rectangle covering it.  ``lower_bound`` may pass a known valid bound
    (e.g. the Boolean rank) to skip shallow levels.
    """
    _check_size(X, limits, "binary rank")
    N, M = X.shape
    if X.is_zero():
        return 0, Factorization.from_rectangles([], N, M, SemiringTag.BINARY)
    ones = 0
    for i, r in enumerate(X.rows):
        ones |= r << (i * M)
    nz_rows = [i for i in range(N) if X.rows[i]]
    nz_cols = [j for j in range(M) if X.columns[j]]
    if len(nz_rows) <= len(nz_cols):
        best = [Rectangle(1 << i, X.rows[i]) for i in nz_rows]
    else:
        best = [Rectangle(X.columns[j], 1 << j) for j in nz_cols]
    lb = max(rank_real(X).rank, _partition_lower_bound(ones, N, M), lower_bound or 0)
    budget = Budget(limits if limits is not None else Limits(), "binary rank")

    def dfs(U: int, depth: int, chosen: list[Rectangle]) -> bool:
        budget.tick(lower=lb, upper=len(best))
        if not U:
            return True
        if depth == 0 or _partition_lower_bound(U, N, M) > depth:
            return False
        cell = (U & -U).bit_length() - 1
        for rect in _rectangles_at(U, N, M, cell):
            chosen.append(rect)
            if dfs(U & ~rect.cells(M), depth - 1, chosen):
                return True
            chosen.pop()
        return False

    target = lb
    try:
        while target < len(best):
            chosen: list[Rectangle] = []
            if dfs(ones, target, chosen):
                best = chosen
                break
            target += 1
            lb = target
    except ResourceError as exc:
        exc.partial = Factorization.from_rectangles(best, N, M, SemiringTag.BINARY)
        raise
    return len(best), Factorization.from_rectangles(best, N, M, SemiringTag.BINARY)


# -- nonnegative rank bounds and the report -------------------------------

@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def to_dict(self):
        return {"lo": self.lo, "hi": self.hi, "exact": self.exact}


def _check_nonneg_witness(X: BinaryMatrix, witness) -> Factorization:
    if isinstance(witness, tuple):
        witness = Factorization(witness[0], witness[1], SemiringTag.NONNEG)
    try:
        ok = verify_factorization(X, witness.W, witness.H, SemiringTag.NONNEG)
    except (ShapeError, DomainError) as exc:
        raise VerificationError(f"nonnegative witness rejected: {exc}") from exc
    if not ok:
        raise VerificationError("nonnegative witness does not reproduce the matrix")
    return Factorization(witness.W, witness.H, SemiringTag.NONNEG)


def nonneg_rank_bounds(X: BinaryMatrix, witness=None, limits: Limits | None = None) -> Interval:
    """[max(real rank, Boolean rank), min(binary rank, witness inner dimension)]."""
    if witness is not None:
        witness = _check_nonneg_witness(X, witness)
    lo = max(rank_real(X).rank, boolean_rank(X, limits)[0])
    hi = binary_rank(X, limits, lower_bound=lo)[0]
    if witness is not None:
        hi = min(hi, witness.inner_dim)
    return Interval(lo, hi)


ALL_FIELDS = ("real", "z2", "boolean", "binary", "nonneg", "isolation")


@dataclass
class RankReport:
    rk_real: int | None = None
    rk_z2: int | None = None
    rk_boolean: int | None = None
    rk_binary: int | None = None
    rk_nonneg: Interval | None = None
    isolation: int | None = None
    witnesses: dict = field(default_factory=dict)
    not_computed: dict = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return not self.not_computed

    def to_dict(self):
        wit = {}
        for name, w in self.witnesses.items():
            if isinstance(w, (Factorization, FieldRankResult)):
                wit[name] = w.to_dict()
            else:
                wit[name] = [[i + 1, j + 1] for i, j in w]
        return {
            "rk_real": self.rk_real,
            "rk_z2": self.rk_z2,
            "rk_boolean": self.rk_boolean,
            "rk_binary": self.rk_binary,
            "rk_nonneg": None if self.rk_nonneg is None else self.rk_nonneg.to_dict(),
            "isolation": self.isolation,
            "witnesses": wit,
            "not_computed": dict(self.not_computed),
        }


def rank_report(X: BinaryMatrix, fields=ALL_FIELDS, limits: Limits | None = None,
                nonneg_witness=None) -> RankReport:
    """Compute the requested ranks; budget failures are recorded per field."""
    fields = set(fields)
    unknown = fields - set(ALL_FIELDS)
    if unknown:
        raise ValueError(f"unknown rank fields: {sorted(unknown)}")
    if nonneg_witness is not None:
        nonneg_witness = _check_nonneg_witness(X, nonneg_witness)
    rep = RankReport()
    need = set(fields)
    if "nonneg" in fields:
        need |= {"real", "boolean", "binary"}

    bool_bounds = (None, None)
    bin_bounds = (None, None)
    if "real" in need:
        res = rank_real(X)
        rep.rk_real = res.rank
        rep.witnesses["real"] = res
    if "z2" in need:
        res = rank_z2(X)
        rep.rk_z2 = res.rank
        rep.witnesses["z2"] = res
    if "isolation" in need:
        rep.isolation, rep.witnesses["isolation"] = isolation_number(X)
    if "boolean" in need:
        try:
            r, fac = boolean_rank(X, limits)
            rep.rk_boolean = r
            rep.witnesses["boolean"] = fac
            bool_bounds = (r, r)
        except ResourceError as exc:
            rep.not_computed["boolean"] = f"budget: {exc}"
            bool_bounds = (exc.lower, exc.upper)
    if "binary" in need:
        lb = max(v for v in (rep.rk_real, rep.rk_boolean, 0) if v is not None)
        try:
            r, fac = binary_rank(X, limits, lower_bound=lb)
            rep.rk_binary = r
            rep.witnesses["binary"] = fac
            bin_bounds = (r, r)
        except ResourceError as exc:
            rep.not_computed["binary"] = f"budget: {exc}"
            bin_bounds = (exc.lower, exc.upper)
    if "nonneg" in fields:
        lows = [v for v in (rep.rk_real, bool_bounds[0]) if v is not None]
        highs = [v for v in (bin_bounds[1],) if v is not None]
        if nonneg_witness is not None:
            highs.append(nonneg_witness.inner_dim)
        if lows and highs:
            rep.rk_nonneg = Interval(max(lows), min(highs))
            if nonneg_witness is not None and nonneg_witness.inner_dim == rep.rk_nonneg.hi:
                rep.witnesses["nonneg"] = nonneg_witness
            elif rep.rk_binary is not None:
                rep.witnesses["nonneg"] = rep.witnesses["binary"]
        else:
            rep.not_computed["nonneg"] = "budget: bounds unavailable"
    return rep
