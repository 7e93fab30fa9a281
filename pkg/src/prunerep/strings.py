"""Repeated substring search with a restricted candidate set.

The universe for a text of length n and pattern of length m is the set
of candidate start positions. Positions are 1-based in this module's
API, matching the usual [n-m+1] convention; the 0-based ids stored in a
:class:`PrunedSet` are ``position - 1``. The matcher returns the
smallest matching position, or None when nothing in the candidate set
matches. Work is the number of candidate positions examined, counting
the one that matched.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

import numpy as np

from ._accel import maybe_njit
from .core.types import PrunedSet, SolveOutcome
from .errors import BotWitness, MalformedInstance

DNA = "ACGT"


@dataclass(frozen=True)
class SearchInstance:
    """One round's text and pattern over a fixed alphabet."""

    text: str
    pattern: str
    alphabet: str = DNA

    def __post_init__(self):
        if len(self.pattern) == 0:
            raise MalformedInstance("pattern must be non-empty")
        if len(self.pattern) > len(self.text):
            raise MalformedInstance(
                f"pattern length {len(self.pattern)} exceeds text length {len(self.text)}"
            )
        allowed = set(self.alphabet)
        if not allowed:
            raise MalformedInstance("alphabet must be non-empty")
        stray = (set(self.text) | set(self.pattern)) - allowed
        if stray:
            raise MalformedInstance(f"characters {sorted(stray)} outside alphabet")

    @property
    def universe_size(self) -> int:
        return len(self.text) - len(self.pattern) + 1


def _encode(s: str) -> np.ndarray:
    return np.frombuffer(s.encode("utf-8"), dtype=np.uint8)


@maybe_njit(cache=True)
def _match_kernel(text, pattern, starts):
    """Check 0-based candidate starts in the order given.

    Returns (matched start or -1, candidates examined). Stops at the
    first match; starts must be sorted ascending for smallest-match
    semantics.
    """
    m = pattern.shape[0]
    work = 0
    for k in range(starts.shape[0]):
        s = starts[k]
        work += 1
        hit = True
        for j in range(m):
            if text[s + j] != pattern[j]:
                hit = False
                break
        if hit:
            return s, work
    return -1, work


def match_full(instance: SearchInstance) -> Tuple[Optional[int], int]:
    """Scan every start position; returns (1-based position or None, work)."""
    starts = np.arange(instance.universe_size, dtype=np.int64)
    pos, work = _match_kernel(_encode(instance.text), _encode(instance.pattern), starts)
    return (None, work) if pos < 0 else (int(pos) + 1, work)


def match_restricted(
    instance: SearchInstance, allowed
) -> Tuple[Optional[int], int]:
    """Scan only the allowed candidate positions, smallest first.

    ``allowed`` is a PrunedSet (0-based ids) or an iterable of 1-based
    positions. Returns (smallest matching 1-based position or None,
    positions examined).
    """
    if isinstance(allowed, PrunedSet):
        if allowed.universe_size != instance.universe_size:
            raise MalformedInstance(
                f"pruned set universe {allowed.universe_size} does not match "
                f"instance universe {instance.universe_size}"
            )
        starts = allowed.as_array()
    else:
        positions = sorted(int(j) for j in allowed)
        for j in positions:
            if not 1 <= j <= instance.universe_size:
                raise MalformedInstance(
                    f"position {j} outside [1, {instance.universe_size}]"
                )
        starts = np.asarray(positions, dtype=np.int64) - 1
    if starts.size == 0:
        return None, 0
    pos, work = _match_kernel(_encode(instance.text), _encode(instance.pattern), starts)
    return (None, work) if pos < 0 else (int(pos) + 1, work)


def search_witness(result: Optional[int], universe_size: int) -> PrunedSet:
    """Witness for a full-scan result: the singleton of its position.

    ``result`` is the 1-based matching position; the returned set holds
    its 0-based id. Raises BotWitness when the result is None.
    """
    if result is None:
        raise BotWitness("no-match result has no witness")
    return PrunedSet.of([int(result) - 1], universe_size)


class StringSearchOracle:
    """Oracle over instances sharing one (text length, pattern length) shape.

    No-match rounds carry an empty witness: exploring them adds nothing
    to the pruned set, and a restricted scan agrees with the full scan
    on them no matter what was pruned.
    """

    def __init__(self, text_length: int, pattern_length: int, alphabet: str = DNA):
        if pattern_length < 1 or pattern_length > text_length:
            raise MalformedInstance(
                f"need 1 <= pattern length <= text length, got "
                f"{pattern_length} and {text_length}"
            )
        self.text_length = int(text_length)
        self.pattern_length = int(pattern_length)
        self.alphabet = alphabet
        self.universe_size = self.text_length - self.pattern_length + 1

    def _check(self, instance: SearchInstance):
        if (
            len(instance.text) != self.text_length
            or len(instance.pattern) != self.pattern_length
        ):
            raise MalformedInstance(
                "instance shape differs from the oracle's fixed (n, m)"
            )

    def solve(self, instance: SearchInstance, allowed: Optional[PrunedSet] = None) -> SolveOutcome:
        self._check(instance)
        if allowed is None:
            pos, work = match_full(instance)
            if pos is None:
                witness = PrunedSet.empty(self.universe_size)
            else:
                witness = search_witness(pos, self.universe_size)
            return SolveOutcome(solution=pos, witness=witness, work=work)
        pos, work = match_restricted(instance, allowed)
        return SolveOutcome(solution=pos, witness=None, work=work)

    def equal(self, a: Optional[int], b: Optional[int]) -> bool:
        return a == b


# -- instance stream file format ------------------------------------------
#
# Line 1: the alphabet. Then alternating lines text / pattern, one pair
# per round. All texts share one length, as do all patterns.


def write_stream(instances: Iterable[SearchInstance], path) -> None:
    instances = list(instances)
    if not instances:
        raise MalformedInstance("refusing to write an empty stream")
    with open(path, "w") as fh:
        fh.write(instances[0].alphabet + "\n")
        for inst in instances:
            fh.write(inst.text + "\n")
            fh.write(inst.pattern + "\n")


def load_stream(path) -> List[SearchInstance]:
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    if len(lines) < 3:
        raise MalformedInstance(f"{path}: need an alphabet line plus text/pattern pairs")
    alphabet, body = lines[0], lines[1:]
    if len(body) % 2 != 0:
        raise MalformedInstance(f"{path}: dangling text line without a pattern")
    out = []
    for i in range(0, len(body), 2):
        out.append(SearchInstance(text=body[i], pattern=body[i + 1], alphabet=alphabet))
    shapes = {(len(x.text), len(x.pattern)) for x in out}
    if len(shapes) != 1:
        raise MalformedInstance(f"{path}: texts/patterns must share one shape, got {shapes}")
    return out
