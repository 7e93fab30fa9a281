"""The explore/exploit pruning state machine.

Each round the learner flips one Bernoulli coin. With probability p_i it
explores: it runs the full computation, emits that output, and unions
the witness (the smallest sufficient subset for that instance) into its
pruned set. Otherwise it exploits: it runs the computation restricted to
the current pruned set and emits that, leaving the set unchanged.

Exactly one RNG value is consumed per round regardless of the branch
taken, so runs with different schedules but equal seeds see identical
coin streams.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from prunerep.errors import DomainError, EmptySequence, OracleFailure

from .schedule import Schedule
from .types import DomainOracle, PrunedSet, RoundRecord


@dataclass
class PrunerState:
    """Mutable per-trial state: next round index, pruned set, history."""

    round: int
    pruned: PrunedSet
    schedule: Schedule
    rng: np.random.Generator
    history: List[RoundRecord] = field(default_factory=list)

    @classmethod
    def fresh(cls, universe_size: int, schedule: Schedule, seed) -> "PrunerState":
        """New state at round 1 with an empty pruned set.

        ``seed`` is anything ``numpy.random.default_rng`` accepts (an
        int or a SeedSequence keeps the trial reproducible).
        """
        return cls(
            round=1,
            pruned=PrunedSet.empty(universe_size),
            schedule=schedule,
            rng=np.random.default_rng(seed),
            history=[],
        )


def pruner_step(
    state: PrunerState, instance: Any, oracle: DomainOracle
) -> Tuple[Any, RoundRecord, PrunerState]:
    """Advance one round; returns (emitted output, record, state).

    Mistakes are judged against a reference full solve whose work is not
    charged to the record. On oracle failure the round is not consumed:
    round counter, pruned set, and history stay as they were (the coin
    for the failed round is irrecoverably drawn, though).
    """
    p = state.schedule.probability(state.round)
    coin = state.rng.random()  # exactly one draw per round, both branches
    explored = coin < p
    try:
        if explored:
            full = oracle.solve(instance)
            if full.witness is None:
                raise OracleFailure(
                    f"oracle returned no witness on a full solve at round {state.round}"
                )
            output = full.solution
            record = RoundRecord(
                round=state.round,
                explored=True,
                set_size=oracle.universe_size,
                mistake=False,
                work=full.work,
                witness_size=len(full.witness),
            )
            new_pruned = state.pruned.union(full.witness)
        else:
            restricted = oracle.solve(instance, state.pruned)
            reference = oracle.solve(instance)
            output = restricted.solution
            record = RoundRecord(
                round=state.round,
                explored=False,
                set_size=len(state.pruned),
                mistake=not oracle.equal(restricted.solution, reference.solution),
                work=restricted.work,
                witness_size=None,
            )
            new_pruned = state.pruned
    except OracleFailure as exc:
        if exc.round_index is None:
            exc.round_index = state.round
        raise
    except DomainError as exc:
        raise OracleFailure(
            f"round {state.round}: {exc}", round_index=state.round
        ) from exc

    state.pruned = new_pruned
    state.history.append(record)
    state.round += 1
    return output, record, state


@dataclass(frozen=True)
class TrialDetail:
    """Everything a trial produced beyond the bare records.

    ``pruned_sizes[i]`` is the pruned-set size at the START of round
    i+1, so index 0 is always 0. ``final_pruned`` is the set after the
    last round; under an always-explore schedule it equals the union of
    all round witnesses.
    """

    records: Tuple[RoundRecord, ...]
    pruned_sizes: Tuple[int, ...]
    final_pruned: PrunedSet


def run_trial_detailed(
    oracle: DomainOracle, sequence: Sequence[Any], schedule: Schedule, seed
) -> TrialDetail:
    if len(sequence) == 0:
        raise EmptySequence("instance sequence is empty")
    state = PrunerState.fresh(oracle.universe_size, schedule, seed)
    pruned_sizes = []
    for instance in sequence:
        pruned_sizes.append(len(state.pruned))
        pruner_step(state, instance, oracle)
    return TrialDetail(
        records=tuple(state.history),
        pruned_sizes=tuple(pruned_sizes),
        final_pruned=state.pruned,
    )


def run_trial(
    oracle: DomainOracle, sequence: Sequence[Any], schedule: Schedule, seed
) -> List[RoundRecord]:
    """Run one trial over the sequence; returns exactly len(sequence) records.

    Deterministic given (sequence, schedule, seed).
    """
    return list(run_trial_detailed(oracle, sequence, schedule, seed).records)


@dataclass(frozen=True)
class RunSummary:
    """Aggregates of one trial's records (arithmetic means over rounds)."""

    total_mistakes: int
    mistake_fraction: float
    mean_set_size: float
    mean_work: float
    mean_exploit_set_size: float
    s_star_size: Optional[int]
    universe_size: int


def summarize(
    records: Sequence[RoundRecord],
    s_star_size: Optional[int],
    universe_size: int,
) -> RunSummary:
    """Fold a record list into headline numbers.

    ``s_star_size`` is None when no paired full-solve baseline supplied
    one. ``mean_exploit_set_size`` averages set sizes over exploit
    rounds only and is 0.0 when every round explored.
    """
    if len(records) == 0:
        raise EmptySequence("no records to summarize")
    total = len(records)
    mistakes = sum(1 for r in records if r.mistake)
    exploit = [r.set_size for r in records if not r.explored]
    return RunSummary(
        total_mistakes=mistakes,
        mistake_fraction=mistakes / total,
        mean_set_size=sum(r.set_size for r in records) / total,
        mean_work=sum(r.work for r in records) / total,
        mean_exploit_set_size=(sum(exploit) / len(exploit)) if exploit else 0.0,
        s_star_size=None if s_star_size is None else int(s_star_size),
        universe_size=int(universe_size),
    )
