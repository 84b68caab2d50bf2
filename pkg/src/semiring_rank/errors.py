"""Exception hierarchy and search budgets."""

from __future__ import annotations

import os
import time
from dataclasses import dataclass


class SemiringRankError(Exception):
    pass


class FormatError(SemiringRankError, ValueError):
    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class ShapeError(SemiringRankError, ValueError):
    pass


class DomainError(SemiringRankError, ValueError):
    pass


class InfeasibleError(SemiringRankError, ValueError):
    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column


class VerificationError(SemiringRankError, ValueError):
    pass


class ResourceError(SemiringRankError):
    """A search or enumeration exceeded its configured limit.

    ``lower`` and ``upper`` carry the best bounds known when the search
    stopped (either may be ``None``); ``partial`` holds any partial result.
    """

    def __init__(self, message, lower=None, upper=None, partial=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.partial = partial


DEFAULT_MAX_NODES = 2_000_000


def _env_nodes():
    raw = os.environ.get("SEMIRING_RANK_BUDGET_NODES")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_MAX_NODES


@dataclass(frozen=True)
class Limits:
    """Budget for the exact searches.  ``None`` disables a limit."""

    max_nodes: int | None = None
    max_seconds: float | None = None
    max_cone_generators: int = 20
    max_independence_set: int = 22

    @classmethod
    def default(cls) -> "Limits":
        return cls(max_nodes=_env_nodes())

    def to_dict(self):
        return {
            "max_nodes": self.max_nodes,
            "max_seconds": self.max_seconds,
            "max_cone_generators": self.max_cone_generators,
            "max_independence_set": self.max_independence_set,
        }


class Budget:
    """Mutable node/time counter for one search run."""

    def __init__(self, limits: Limits | None, what: str):
        limits = limits or Limits.default()
        self.max_nodes = limits.max_nodes
        self.deadline = None if limits.max_seconds is None else time.monotonic() + limits.max_seconds
        self.nodes = 0
        self.what = what

    def tick(self, lower=None, upper=None, partial=None):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise ResourceError(f"{self.what}: node budget of {self.max_nodes} exhausted",
                                lower=lower, upper=upper, partial=partial)
        if self.deadline is not None and (self.nodes & 255) == 0 and time.monotonic() > self.deadline:
            raise ResourceError(f"{self.what}: time budget exhausted", lower=lower, upper=upper, partial=partial)
