"""Learning to prune repeated computations.

A pruner watches a stream of related instances, occasionally solves one
over the full universe to harvest a witness set, and otherwise solves
over the union of witnesses seen so far. The core loop is domain
agnostic; shortest-path, LP, and substring-search oracles plug into it.
"""

from ._accel import BACKEND, NUMBA_ENABLED
from .core import (
    DomainOracle,
    PrunedSet,
    PrunerState,
    RoundRecord,
    RunSummary,
    Schedule,
    SolveOutcome,
    TrialDetail,
    corollary_mistake_bound,
    corollary_pruned_size_bound,
    lower_bound_product,
    mistake_bound,
    pruned_size_bound,
    pruner_step,
    run_trial,
    run_trial_detailed,
    summarize,
    tight_construction_expectations,
)
from .errors import (
    BotWitness,
    ConfigError,
    IoError,
    DegenerateInstance,
    DomainError,
    EmptySequence,
    InfeasibleRestriction,
    MalformedGraph,
    MalformedInstance,
    OracleFailure,
    PruneRepError,
)
from .graphs import (
    EdgeWeights,
    Graph,
    Path,
    ShortestPathOracle,
    dijkstra_canonical,
    load_edge_list,
    sp_witness,
    write_edge_list,
)
from .lp import (
    LpOracle,
    LpProgram,
    LpSolution,
    Objective,
    load_lp,
    load_objectives,
    lp_equal,
    lp_witness,
    simplex_solve,
    write_lp,
    write_objectives,
)
from .strings import (
    DNA,
    SearchInstance,
    StringSearchOracle,
    load_stream,
    match_full,
    match_restricted,
    search_witness,
    write_stream,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "NUMBA_ENABLED",
    "BotWitness",
    "ConfigError",
    "IoError",
    "DNA",
    "DegenerateInstance",
    "DomainError",
    "DomainOracle",
    "EdgeWeights",
    "EmptySequence",
    "Graph",
    "InfeasibleRestriction",
    "LpOracle",
    "LpProgram",
    "LpSolution",
    "MalformedGraph",
    "MalformedInstance",
    "Objective",
    "OracleFailure",
    "Path",
    "PruneRepError",
    "PrunedSet",
    "PrunerState",
    "RoundRecord",
    "RunSummary",
    "Schedule",
    "SearchInstance",
    "ShortestPathOracle",
    "SolveOutcome",
    "StringSearchOracle",
    "TrialDetail",
    "corollary_mistake_bound",
    "corollary_pruned_size_bound",
    "dijkstra_canonical",
    "load_edge_list",
    "load_lp",
    "load_objectives",
    "load_stream",
    "lower_bound_product",
    "lp_equal",
    "lp_witness",
    "match_full",
    "match_restricted",
    "mistake_bound",
    "pruned_size_bound",
    "pruner_step",
    "run_trial",
    "run_trial_detailed",
    "search_witness",
    "simplex_solve",
    "sp_witness",
    "summarize",
    "tight_construction_expectations",
    "write_edge_list",
    "write_lp",
    "write_objectives",
    "write_stream",
    "__version__",
]
