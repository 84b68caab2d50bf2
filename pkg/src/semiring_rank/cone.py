"""Boolean semiring algebra: domination, cones, minimal generators, independence."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import kernels
from .errors import Budget, Limits, ResourceError, ShapeError
from .matrix import BinaryMatrix, bits_to_mask, lex_key, vector_bits


@dataclass(frozen=True, order=False)
class BoolVector:
    """A vector in B^length stored as a bitset (bit ``i`` is coordinate ``i``)."""

    length: int
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.length:
            raise ShapeError(f"mask {self.mask} does not fit in length {self.length}")

    @classmethod
    def of(cls, bits: Sequence[int]) -> "BoolVector":
        if any(b not in (0, 1) for b in bits):
            raise ValueError("entries must be 0 or 1")
        return cls(len(bits), bits_to_mask(bits))

    @property
    def bits(self) -> tuple[int, ...]:
        return vector_bits(self.mask, self.length)

    def __lt__(self, other: "BoolVector") -> bool:
        return self.bits < other.bits

    def __or__(self, other: "BoolVector") -> "BoolVector":
        _same_length(self, other)
        return BoolVector(self.length, self.mask | other.mask)

    def __repr__(self) -> str:
        return "BoolVector(" + "".join(map(str, self.bits)) + ")"


def _same_length(x: BoolVector, y: BoolVector):
    if x.length != y.length:
        raise ShapeError(f"vector lengths differ: {x.length} vs {y.length}")


def as_vector(v) -> BoolVector:
    if isinstance(v, BoolVector):
        return v
    return BoolVector.of(tuple(v))


def dominates(x, y) -> bool:
    """True iff ``x <= y``: every coordinate set in ``x`` is set in ``y``."""
    x, y = as_vector(x), as_vector(y)
    _same_length(x, y)
    return x.mask & ~y.mask == 0


def sort_masks(masks: Iterable[int], length: int) -> list[int]:
    return sorted(masks, key=lambda m: lex_key(m, length))


@dataclass(frozen=True)
class BooleanCone:
    """Finitely generated cone in B^ambient_dim.

    ``generators`` holds distinct nonzero bitsets.  The element set is
    computed once on first access and cached.
    """

    ambient_dim: int
    generators: tuple[int, ...]

    @classmethod
    def from_generators(cls, gens: Iterable, ambient_dim: int | None = None) -> "BooleanCone":
        masks = []
        for g in gens:
            if isinstance(g, int):
                if ambient_dim is None:
                    raise ValueError("ambient_dim is required for bitset generators")
                masks.append(g)
            else:
                v = as_vector(g)
                if ambient_dim is None:
                    ambient_dim = v.length
                elif v.length != ambient_dim:
                    raise ShapeError("generators have different lengths")
                masks.append(v.mask)
        if ambient_dim is None:
            ambient_dim = 0
        uniq = sort_masks({m for m in masks if m}, ambient_dim)
        return cls(ambient_dim, tuple(uniq))

    @classmethod
    def from_elements(cls, elements: Iterable, ambient_dim: int | None = None) -> "BooleanCone":
        """Cone given by its full element set; the set must be OR-closed and contain 0."""
        cone = cls.from_generators(elements, ambient_dim)
        given = set(cone.generators) | {0}
        if cone.elements != frozenset(given):
            raise ValueError("element set is not closed under OR or is missing the zero vector")
        return cone

    @cached_property
    def elements(self) -> frozenset[int]:
        return kernels.or_span(self.generators)

    def contains(self, v) -> bool:
        m = v if isinstance(v, int) else as_vector(v).mask
        # x lies in the span iff it equals the OR of the generators it dominates
        acc = 0
        for g in self.generators:
            if g & ~m == 0:
                acc |= g
        return acc == m

    def vectors(self) -> list[BoolVector]:
        """Element set as sorted ``BoolVector`` objects."""
        return [BoolVector(self.ambient_dim, m) for m in sort_masks(self.elements, self.ambient_dim)]

    def __len__(self) -> int:
        return len(self.elements)


def cone_elements(W: BinaryMatrix, limits: Limits | None = None) -> BooleanCone:
    """Cone spanned by the columns of ``W`` with its element set materialized."""
    limits = limits or Limits()
    cone = BooleanCone.from_generators(W.columns, W.n_rows)
    if len(cone.generators) > limits.max_cone_generators:
        raise ResourceError(
            f"cone has {len(cone.generators)} distinct generators (limit {limits.max_cone_generators}); "
            "use BooleanCone.contains or minimal_generators_of instead of enumerating")
    cone.elements
    return cone


def minimal_generators(C: BooleanCone) -> list[BoolVector]:
    """min(C): nonzero elements strictly above the OR of everything below them.

    Computed from the element set, sorted lexicographically.
    """
    elems = sorted(C.elements, key=int.bit_count)
    out = []
    for y in elems:
        if y == 0:
            continue
        below = 0
        for x in elems:
            if x.bit_count() >= y.bit_count():
                break
            if x & ~y == 0:
                below |= x
        if below != y:
            out.append(y)
    return [BoolVector(C.ambient_dim, m) for m in sort_masks(out, C.ambient_dim)]


def minimal_generators_of(gens: Iterable[int], length: int) -> list[int]:
    """min(span(gens)) computed from a generator list without enumerating the span.

    A generator survives iff it differs from the OR of the other generators it
    dominates; elements that are not generators are never minimal.
    """
    uniq = sorted({g for g in gens if g})
    out = []
    for g in uniq:
        acc = 0
        for h in uniq:
            if h != g and h & ~g == 0:
                acc |= h
        if acc != g:
            out.append(g)
    return sort_masks(out, length)


def cone_order(C: BooleanCone) -> int:
    return len(minimal_generators(C))


def boolean_independent(S: Iterable, limits: Limits | None = None) -> bool:
    """True iff distinct non-empty subsets of ``S`` have distinct ORs."""
    limits = limits or Limits()
    vecs = [as_vector(v) for v in S]
    for v in vecs[1:]:
        _same_length(vecs[0], v)
    if len(vecs) > limits.max_independence_set:
        raise ResourceError(f"{len(vecs)} vectors exceed the subset enumeration limit "
                            f"{limits.max_independence_set}")
    return kernels.or_injective([v.mask for v in vecs])


def independent_masks(masks: Sequence[int]) -> bool:
    return kernels.or_injective(list(masks))


def _largest_independent(cands: list[int], k_max: int, budget: Budget) -> list[int]:
    best: list[int] = []

    def extend(start, chosen, ors):
        nonlocal best
        budget.tick(lower=len(best))
        if len(chosen) > len(best):
            best = list(chosen)
        if len(best) >= k_max:
            return
        for idx in range(start, len(cands)):
            if len(chosen) + (len(cands) - idx) <= len(best):
                return
            v = cands[idx]
            fresh = [v]
            fresh.extend(s | v for s in ors)
            fresh_set = set(fresh)
            if len(fresh_set) != len(fresh) or not fresh_set.isdisjoint(ors):
                continue
            chosen.append(v)
            extend(idx + 1, chosen, ors | fresh_set)
            chosen.pop()
            if len(best) >= k_max:
                return

    extend(0, [], frozenset())
    return best


def boolean_column_rank(X: BinaryMatrix, columns_only: bool = False, limits: Limits | None = None,
                        return_witness: bool = False):
    """Size of the largest Boolean independent subset of cone(X).

    With ``columns_only`` the candidates are the distinct columns of ``X``
    instead of all cone elements.  The zero vector is never a candidate.
    """
    limits = limits or Limits.default()
    cone = cone_elements(X, limits)
    if columns_only:
        cands = sorted({c for c in X.columns if c})
    else:
        cands = sorted(m for m in cone.elements if m)
    # an independent k-set has 2**k - 1 distinct nonzero ORs inside the cone
    k_max = (len(cone.elements)).bit_length() - 1
    budget = Budget(limits, "boolean column rank")
    best = _largest_independent(cands, k_max, budget)
    if return_witness:
        return len(best), [BoolVector(X.n_rows, m) for m in sort_masks(best, X.n_rows)]
    return len(best)


def dominated_generators(x, W: BinaryMatrix) -> list[int]:
    """0-based indices of the columns of ``W`` dominated by ``x``, ascending."""
    x = as_vector(x)
    if x.length != W.n_rows:
        raise ShapeError(f"vector length {x.length} does not match {W.n_rows} rows")
    return kernels.dominated_subset(list(W.columns), x.mask)
