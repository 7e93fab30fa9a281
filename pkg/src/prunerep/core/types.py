"""Shared model types: pruned sets, solve outcomes, round records."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Optional, Protocol, runtime_checkable

import numpy as np

from prunerep.errors import DomainError

# Universe elements are identified by 0-based integer ids. Each domain
# documents what an id denotes (edge, constraint row, start position).
UniverseId = int


@dataclass(frozen=True)
class PrunedSet:
    """An immutable subset of a fixed finite universe.

    ``members`` holds 0-based element ids, all below ``universe_size``.
    The learner only ever grows these sets via :meth:`union`.
    """

    members: frozenset
    universe_size: int

    def __post_init__(self):
        if int(self.universe_size) < 0:
            raise DomainError(f"universe_size must be >= 0, got {self.universe_size}")
        object.__setattr__(self, "universe_size", int(self.universe_size))
        norm = frozenset(int(i) for i in self.members)
        for i in norm:
            if not 0 <= i < self.universe_size:
                raise DomainError(
                    f"member {i} outside universe [0, {self.universe_size})"
                )
        object.__setattr__(self, "members", norm)

    @classmethod
    def empty(cls, universe_size: int) -> "PrunedSet":
        return cls(frozenset(), universe_size)

    @classmethod
    def of(cls, ids: Iterable[int], universe_size: int) -> "PrunedSet":
        return cls(frozenset(ids), universe_size)

    def union(self, other) -> "PrunedSet":
        """Union with another PrunedSet or an iterable of ids."""
        if isinstance(other, PrunedSet):
            if other.universe_size != self.universe_size:
                raise DomainError("cannot union sets over different universes")
            extra = other.members
        else:
            extra = frozenset(int(i) for i in other)
        if extra <= self.members:
            return self
        return PrunedSet(self.members | extra, self.universe_size)

    def issuperset(self, other) -> bool:
        if isinstance(other, PrunedSet):
            other = other.members
        return self.members >= frozenset(int(i) for i in other)

    def __contains__(self, item) -> bool:
        return int(item) in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        # deterministic order for serialization and mask building
        return iter(sorted(self.members))

    def as_array(self) -> np.ndarray:
        return np.fromiter(sorted(self.members), dtype=np.int64, count=len(self.members))

    def to_mask(self) -> np.ndarray:
        """0/1 membership mask over the whole universe (uint8)."""
        mask = np.zeros(self.universe_size, dtype=np.uint8)
        if self.members:
            mask[self.as_array()] = 1
        return mask


@dataclass(frozen=True)
class SolveOutcome:
    """Result of one oracle call.

    ``solution`` is the domain solution or ``None`` for "no solution"
    (written as bottom in the docs). ``witness`` is present exactly on
    full (unrestricted) solves and names the smallest sufficient subset
    of the universe. ``work`` is the domain's effort proxy: settled
    nodes, simplex pivots, or candidate indices examined.
    """

    solution: Any
    witness: Optional[PrunedSet] = None
    work: int = 0

    def __post_init__(self):
        if int(self.work) < 0:
            raise DomainError(f"work must be >= 0, got {self.work}")
        object.__setattr__(self, "work", int(self.work))


@dataclass(frozen=True)
class RoundRecord:
    """Instrumentation for one round of a trial.

    ``set_size`` is the size of the set the emitted output was computed
    over: the full universe on explored rounds, the current pruned set
    otherwise. ``witness_size`` is known only on explored rounds.
    """

    round: int
    explored: bool
    set_size: int
    mistake: bool
    work: int
    witness_size: Optional[int] = None

    def __post_init__(self):
        if self.round < 1:
            raise DomainError(f"round index is 1-based, got {self.round}")
        if self.explored and self.mistake:
            # explored rounds emit the full solve, which is correct by definition
            raise DomainError("explored round cannot be a mistake")
        if self.work < 0 or self.set_size < 0:
            raise DomainError("work and set_size must be >= 0")
        if self.explored and self.witness_size is None:
            raise DomainError("explored round must carry witness_size")


@runtime_checkable
class DomainOracle(Protocol):
    """Contract a problem family implements to plug into the pruner.

    ``solve(instance, allowed=None)`` runs the full computation when
    ``allowed`` is None and the restricted one otherwise; the witness
    field of the outcome is populated exactly on full solves. ``equal``
    compares two emitted solutions, treating None (bottom) as equal
    only to itself.
    """

    universe_size: int

    def solve(self, instance, allowed: Optional[PrunedSet] = None) -> SolveOutcome: ...

    def equal(self, a, b) -> bool: ...
