"""Exact ranks, Boolean cones and factorization uniqueness for 0-1 matrices."""

from .cone import (BooleanCone, BoolVector, boolean_column_rank, boolean_independent, cone_elements, cone_order,
                   dominated_generators, dominates, minimal_generators)
from .errors import (DomainError, FormatError, InfeasibleError, Limits, ResourceError, SemiringRankError,
                     ShapeError, VerificationError)
from .fieldrank import FieldRankResult, det_int, det_z2, rank_real, rank_z2
from .matrix import (BinaryMatrix, RationalMatrix, SemiringTag, parse_matrix, parse_rational_matrix,
                     serialize_matrix, serialize_rational, submatrix, transpose)
from .nonneg import NonnegUniqueness, RationalNullBasis, null_space, unique_h_nonneg
from .search import (Factorization, Interval, RankReport, Rectangle, binary_rank, boolean_rank,
                     enumerate_maximal_rectangles, isolation_number, nonneg_rank_bounds, rank_report, threshold,
                     verify_factorization)
from .uniqueness import (ConeCensus, UniquenessReport, boundary_close, cone_census, count_h_solutions,
                         uniqueness_report, unique_h_boolean, unique_w_boolean)

__version__ = "0.1.0"
