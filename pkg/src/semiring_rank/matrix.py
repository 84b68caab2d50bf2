"""Binary and rational matrix value types, text I/O, and elementary manipulations.

Binary matrices store each row as a Python int used as a bitset: bit ``j`` of
``rows[i]`` is the entry in row ``i``, column ``j``.  Columns are derived on
demand with the same convention (bit ``i`` of a column is row ``i``).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import FormatError, ShapeError


class SemiringTag(enum.Enum):
    """Arithmetic used to multiply two factors."""

    REAL = "real"
    NONNEG = "nonneg"
    BINARY = "binary"
    Z2 = "z2"
    BOOLEAN = "boolean"

    @classmethod
    def parse(cls, name: str) -> "SemiringTag":
        key = name.strip().lower()
        aliases = {"nonnegative": "nonneg", "bool": "boolean", "gf2": "z2"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown semiring {name!r}") from None


@dataclass(frozen=True)
class BinaryMatrix:
    """Dense 0-1 matrix with bit-packed rows."""

    n_rows: int
    n_cols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n_rows < 0 or self.n_cols < 0:
            raise ShapeError("matrix dimensions must be nonnegative")
        if len(self.rows) != self.n_rows:
            raise ShapeError(f"expected {self.n_rows} rows, got {len(self.rows)}")
        limit = 1 << self.n_cols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ShapeError(f"row bitset {r} does not fit in {self.n_cols} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], n_cols: int | None = None) -> "BinaryMatrix":
        rows = [list(r) for r in rows]
        if n_cols is None:
            n_cols = len(rows[0]) if rows else 0
        packed = []
        for i, r in enumerate(rows):
            if len(r) != n_cols:
                raise ShapeError(f"row {i + 1} has {len(r)} entries, expected {n_cols}")
            mask = 0
            for j, v in enumerate(r):
                if v not in (0, 1):
                    raise ShapeError(f"entry ({i + 1},{j + 1}) = {v!r} is not 0 or 1")
                if v:
                    mask |= 1 << j
            packed.append(mask)
        return cls(len(packed), n_cols, tuple(packed))

    @classmethod
    def from_columns(cls, columns: Sequence[int], n_rows: int) -> "BinaryMatrix":
        """Build from column bitsets (bit ``i`` = row ``i``)."""
        rows = [0] * n_rows
        for j, c in enumerate(columns):
            for i in range(n_rows):
                if (c >> i) & 1:
                    rows[i] |= 1 << j
        return cls(n_rows, len(columns), tuple(rows))

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BinaryMatrix":
        return cls(n_rows, n_cols, (0,) * n_rows)

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def ones(cls, n_rows: int, n_cols: int) -> "BinaryMatrix":
        return cls(n_rows, n_cols, ((1 << n_cols) - 1,) * n_rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
            raise IndexError(f"index {idx} out of range for shape {self.shape}")
        return (self.rows[i] >> j) & 1

    @cached_property
    def columns(self) -> tuple[int, ...]:
        cols = [0] * self.n_cols
        for i, r in enumerate(self.rows):
            j = 0
            while r:
                if r & 1:
                    cols[j] |= 1 << i
                r >>= 1
                j += 1
        return tuple(cols)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n_cols)] for r in self.rows]

    def ones_cells(self) -> list[tuple[int, int]]:
        """All (row, col) positions holding a 1, in row-major order."""
        return [(i, j) for i, r in enumerate(self.rows) for j in range(self.n_cols) if (r >> j) & 1]

    def count_ones(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def to_rational(self) -> "RationalMatrix":
        return RationalMatrix.from_rows(self.to_lists())

    def __str__(self) -> str:
        return serialize_matrix(self)


@dataclass(frozen=True)
class RationalMatrix:
    """Matrix of exact rationals; entries are stored normalized as ``Fraction``."""

    n_rows: int
    n_cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.n_rows * self.n_cols:
            raise ShapeError("entry count does not match shape")
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        n_cols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            if len(r) != n_cols:
                raise ShapeError(f"row {i + 1} has {len(r)} entries, expected {n_cols}")
        return cls(len(rows), n_cols, tuple(Fraction(v) for r in rows for v in r))

    @classmethod
    def from_binary(cls, X: BinaryMatrix) -> "RationalMatrix":
        # keep the shape even when a side is 0
        return cls(X.n_rows, X.n_cols, tuple(Fraction(v) for r in X.to_lists() for v in r))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
            raise IndexError(f"index {idx} out of range for shape {self.shape}")
        return self.entries[i * self.n_cols + j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.n_cols:(i + 1) * self.n_cols])

    def column(self, j: int) -> list[Fraction]:
        return [self.entries[i * self.n_cols + j] for i in range(self.n_rows)]

    def to_lists(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.n_rows)]

    def is_nonnegative(self) -> bool:
        return all(e >= 0 for e in self.entries)

    def is_binary(self) -> bool:
        return all(e == 0 or e == 1 for e in self.entries)

    def to_binary(self) -> BinaryMatrix:
        if not self.is_binary():
            raise ValueError("matrix has entries outside {0, 1}")
        return BinaryMatrix.from_rows([[int(v) for v in r] for r in self.to_lists()], self.n_cols)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.n_cols != other.n_rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(self.n_rows):
            a = self.row(i)
            for j in range(other.n_cols):
                out.append(sum((a[k] * other.entries[k * other.n_cols + j] for k in range(self.n_cols)), Fraction(0)))
        return RationalMatrix(self.n_rows, other.n_cols, tuple(out))

    def __str__(self) -> str:
        return serialize_rational(self)


# -- text formats ----------------------------------------------------------

_BIN_ALLOWED = re.compile(r"[^01 ,]")


def _content_lines(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, line.rstrip("\r\n")


def _split_entries(line: str) -> list[str]:
    line = line.strip()
    if "," in line or " " in line:
        return [tok for tok in re.split(r"[ ,]+", line) if tok]
    return list(line)


def parse_matrix(text: str) -> BinaryMatrix:
    """Parse the 0/1 text format.

    One row per non-blank line; entries separated by spaces or commas, or
    written contiguously (``0110``).  Lines starting with ``#`` are ignored.
    A text with no content lines yields the 0x0 matrix.
    """
    rows: list[list[int]] = []
    width = None
    for lineno, line in _content_lines(text):
        bad = _BIN_ALLOWED.search(line.strip())
        if bad:
            col = line.index(line.strip()) + bad.start() + 1
            raise FormatError(f"line {lineno}, column {col}: unexpected character {bad.group()!r}",
                              line=lineno, column=col)
        entries = _split_entries(line)
        if any(len(tok) != 1 for tok in entries):
            # "01 10" style mixes packed and separated entries
            entries = [ch for tok in entries for ch in tok]
        if width is None:
            width = len(entries)
        elif len(entries) != width:
            raise FormatError(f"line {lineno}: ragged row with {len(entries)} entries, expected {width}",
                              line=lineno)
        rows.append([int(ch) for ch in entries])
    if not rows:
        return BinaryMatrix(0, 0, ())
    return BinaryMatrix.from_rows(rows, width)


def serialize_matrix(X: BinaryMatrix) -> str:
    return "".join(" ".join(str((r >> j) & 1) for j in range(X.n_cols)) + "\n" for r in X.rows)


def parse_rational_matrix(text: str) -> RationalMatrix:
    """Parse rational entries written as ``p/q``, integers, or decimals."""
    rows: list[list[Fraction]] = []
    for lineno, line in _content_lines(text):
        row = []
        for tok in re.split(r"[ ,\t]+", line.strip()):
            if not tok:
                continue
            try:
                row.append(Fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise FormatError(f"line {lineno}: cannot read {tok!r} as a rational", line=lineno) from None
        if rows and len(row) != len(rows[0]):
            raise FormatError(f"line {lineno}: ragged row with {len(row)} entries, expected {len(rows[0])}",
                              line=lineno)
        rows.append(row)
    if not rows:
        return RationalMatrix(0, 0, ())
    return RationalMatrix.from_rows(rows)


def serialize_rational(W: RationalMatrix) -> str:
    return "".join(" ".join(str(v) for v in W.row(i)) + "\n" for i in range(W.n_rows))


# -- elementary manipulations ---------------------------------------------

def transpose(X: BinaryMatrix) -> BinaryMatrix:
    return BinaryMatrix(X.n_cols, X.n_rows, X.columns)


def _check_index_set(idx: Iterable[int], bound: int, what: str) -> list[int]:
    idx = list(idx)
    for a, b in zip(idx, idx[1:]):
        if b <= a:
            raise ValueError(f"{what} indices must be strictly increasing")
    for k in idx:
        if not 0 <= k < bound:
            raise IndexError(f"{what} index {k} out of range 0..{bound - 1}")
    return idx


def submatrix(X: BinaryMatrix, rows: Iterable[int], cols: Iterable[int]) -> BinaryMatrix:
    """Restriction of ``X`` to the given (0-based, increasing) rows and columns."""
    rows = _check_index_set(rows, X.n_rows, "row")
    cols = _check_index_set(cols, X.n_cols, "column")
    out = []
    for i in rows:
        r = X.rows[i]
        mask = 0
        for k, j in enumerate(cols):
            if (r >> j) & 1:
                mask |= 1 << k
        out.append(mask)
    return BinaryMatrix(len(rows), len(cols), tuple(out))


def hstack(*mats: BinaryMatrix) -> BinaryMatrix:
    n = mats[0].n_rows
    rows = [0] * n
    shift = 0
    for M in mats:
        if M.n_rows != n:
            raise ShapeError("row counts differ")
        for i in range(n):
            rows[i] |= M.rows[i] << shift
        shift += M.n_cols
    return BinaryMatrix(n, shift, tuple(rows))


def vector_bits(mask: int, length: int) -> tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(length))


def bits_to_mask(bits: Sequence[int]) -> int:
    mask = 0
    for i, b in enumerate(bits):
        if b:
            mask |= 1 << i
    return mask


def lex_key(mask: int, length: int) -> tuple[int, ...]:
    """Sort key ordering bitsets lexicographically by their 0/1 tuples."""
    return vector_bits(mask, length)
