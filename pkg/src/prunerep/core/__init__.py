from .bounds import (
    corollary_mistake_bound,
    corollary_pruned_size_bound,
    lower_bound_product,
    mistake_bound,
    pruned_size_bound,
    tight_construction_expectations,
)
from .pruner import (
    PrunerState,
    RunSummary,
    TrialDetail,
    pruner_step,
    run_trial,
    run_trial_detailed,
    summarize,
)
from .schedule import Schedule
from .types import DomainOracle, PrunedSet, RoundRecord, SolveOutcome, UniverseId

__all__ = [
    "DomainOracle",
    "PrunedSet",
    "PrunerState",
    "RoundRecord",
    "RunSummary",
    "Schedule",
    "SolveOutcome",
    "TrialDetail",
    "UniverseId",
    "corollary_mistake_bound",
    "corollary_pruned_size_bound",
    "lower_bound_product",
    "mistake_bound",
    "pruned_size_bound",
    "pruner_step",
    "run_trial",
    "run_trial_detailed",
    "summarize",
    "tight_construction_expectations",
]
