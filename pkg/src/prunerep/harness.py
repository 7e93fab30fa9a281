"""Multi-trial Monte Carlo experiments over the pruning loop.

A config names a domain, a generator with its parameters, a probability
schedule, and a root seed; ``run_experiment`` fans trials out over a
worker pool and writes a per-round CSV plus a JSON summary. Every
random draw descends from the root seed through per-trial spawn keys,
so results are identical for any worker count.

Each trial also runs an always-explore baseline (p = 1) over the same
instance sequence with its own coin stream. The baseline's final
pruned set is the trial's witness union S*, and its per-round work is
the full-solve cost the pruner's work is compared against.
"""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ._accel import BACKEND
from .core import RoundRecord, Schedule, run_trial_detailed
from .errors import ConfigError, IoError
from .generators import (
    PerturbationSpec,
    objective_sequence,
    synth_auction_lp,
    synth_grid_graph,
    synth_search_sequence,
    tight_construction,
    weight_sequence,
)
from .graphs import ShortestPathOracle, load_edge_list
from .lp import LpOracle, load_lp, load_objectives
from .strings import StringSearchOracle, load_stream
from .core.bounds import (
    corollary_mistake_bound,
    corollary_pruned_size_bound,
    mistake_bound,
    pruned_size_bound,
    tight_construction_expectations,
)

# rng stream ids within a trial's spawn key
STREAM_SEQUENCE = 0
STREAM_COINS = 1
STREAM_BASELINE = 2
# spawn key for draws that fix the base problem itself (one per experiment)
PROBLEM_KEY = (999,)

WORKERS_ENV = "PRUNEREP_WORKERS"

DOMAINS = ("shortest-path", "lp", "string-search")
GENERATORS = {
    "shortest-path": ("grid", "tight", "edge-file"),
    "lp": ("auction", "lp-file"),
    "string-search": ("random", "stream-file"),
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything run_experiment needs; round-trips losslessly via JSON."""

    domain: str
    generator: str
    params: Dict[str, Any] = field(default_factory=dict)
    rounds: int = 30
    trials: int = 200
    schedule: Schedule = field(default_factory=Schedule.inverse_sqrt)
    root_seed: int = 0
    csv_path: Optional[str] = None
    json_path: Optional[str] = None
    parallelism: int = 1

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise ConfigError(f"unknown domain {self.domain!r}")
        if self.generator not in GENERATORS[self.domain]:
            raise ConfigError(
                f"generator {self.generator!r} does not serve domain {self.domain!r}"
            )
        if self.rounds < 1:
            raise ConfigError("rounds must be at least 1")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be at least 1")

    def to_json(self) -> Dict[str, Any]:
        out = {
            "domain": self.domain,
            "generator": self.generator,
            "params": dict(self.params),
            "rounds": self.rounds,
            "trials": self.trials,
            "schedule": self.schedule.to_json(),
            "root_seed": self.root_seed,
            "csv_path": self.csv_path,
            "json_path": self.json_path,
            "parallelism": self.parallelism,
        }
        return out

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        try:
            return cls(
                domain=data["domain"],
                generator=data["generator"],
                params=dict(data.get("params", {})),
                rounds=int(data["rounds"]),
                trials=int(data["trials"]),
                schedule=Schedule.from_json(data["schedule"]),
                root_seed=int(data["root_seed"]),
                csv_path=data.get("csv_path"),
                json_path=data.get("json_path"),
                parallelism=int(data.get("parallelism", 1)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad experiment config: {exc}") from exc


@dataclass(frozen=True)
class TrialData:
    """One trial's pruner records plus its paired baseline aggregates."""

    trial: int
    records: Tuple[RoundRecord, ...]
    pruned_sizes: Tuple[int, ...]
    baseline_work: Tuple[int, ...]
    s_star_size: int
    universe_size: int


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    trials: Tuple[TrialData, ...]
    summary: Dict[str, Any]


# -- problem construction ------------------------------------------------------


@dataclass(frozen=True)
class _Problem:
    """Base problem shared by all trials; picklable for worker fan-out."""

    oracle: Any
    payload: Dict[str, Any]


def _require_params(config: ExperimentConfig, required, optional=()):
    given = set(config.params)
    missing = set(required) - given
    unknown = given - set(required) - set(optional)
    if missing:
        raise ConfigError(f"{config.generator}: missing params {sorted(missing)}")
    if unknown:
        raise ConfigError(f"{config.generator}: unknown params {sorted(unknown)}")


def _problem_rng(config: ExperimentConfig):
    return np.random.default_rng(
        np.random.SeedSequence(entropy=config.root_seed, spawn_key=PROBLEM_KEY)
    )


def _load_or_io(loader, path, *args):
    try:
        return loader(path, *args)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc


def build_problem(config: ExperimentConfig) -> _Problem:
    """Fix the base problem for an experiment (deterministic in root_seed)."""
    p = config.params
    if config.domain == "shortest-path":
        if config.generator == "grid":
            _require_params(config, ("width", "height", "perturb"), ("source", "terminal"))
            graph, base = synth_grid_graph(
                int(p["width"]),
                int(p["height"]),
                _problem_rng(config),
                source=p.get("source"),
                terminal=p.get("terminal"),
            )
            spec = _perturb_spec(p["perturb"])
            return _Problem(ShortestPathOracle(graph), {"base": base, "perturb": spec})
        if config.generator == "tight":
            _require_params(config, ("k",))
            k = int(p["k"])
            graph, _ = tight_construction(k, 1, _problem_rng(config))
            return _Problem(ShortestPathOracle(graph), {"k": k})
        _require_params(config, ("path", "source", "terminal", "perturb"))
        graph, base = _load_or_io(load_edge_list, p["path"], int(p["source"]), int(p["terminal"]))
        spec = _perturb_spec(p["perturb"])
        return _Problem(ShortestPathOracle(graph), {"base": base, "perturb": spec})

    if config.domain == "lp":
        if config.generator == "auction":
            _require_params(config, ("bidders", "goods", "bids_per_bidder", "sigma"), ("rhs_jitter",))
            program, base = synth_auction_lp(
                int(p["bidders"]),
                int(p["goods"]),
                int(p["bids_per_bidder"]),
                _problem_rng(config),
                rhs_jitter=float(p.get("rhs_jitter", 0.05)),
            )
            return _Problem(
                LpOracle(program),
                {"program": program, "base": base, "sigma": float(p["sigma"])},
            )
        _require_params(config, ("path", "objectives_path"), ("sigma",))
        program = _load_or_io(load_lp, p["path"])
        objectives = _load_or_io(load_objectives, p["objectives_path"], program.var_count)
        if len(objectives) == config.rounds:
            return _Problem(LpOracle(program), {"program": program, "fixed": objectives})
        if len(objectives) == 1:
            if "sigma" not in p:
                raise ConfigError("lp-file with a single base objective needs sigma")
            return _Problem(
                LpOracle(program),
                {"program": program, "base": objectives[0], "sigma": float(p["sigma"])},
            )
        raise ConfigError(
            f"objectives file holds {len(objectives)} vectors; need 1 (base) or rounds={config.rounds}"
        )

    if config.generator == "random":
        _require_params(
            config,
            ("text_length", "pattern_length"),
            ("alphabet", "hot_positions", "match_prob"),
        )
        oracle = StringSearchOracle(
            text_length=int(p["text_length"]),
            pattern_length=int(p["pattern_length"]),
            alphabet=p.get("alphabet", "ACGT"),
        )
        payload = {
            "alphabet": p.get("alphabet", "ACGT"),
            "hot_positions": int(p.get("hot_positions", 3)),
            "match_prob": float(p.get("match_prob", 0.85)),
        }
        return _Problem(oracle, payload)
    _require_params(config, ("path",))
    stream = _load_or_io(load_stream, p["path"])
    if len(stream) != config.rounds:
        raise ConfigError(
            f"stream file holds {len(stream)} instances; config expects rounds={config.rounds}"
        )
    first = stream[0]
    oracle = StringSearchOracle(
        text_length=len(first.text),
        pattern_length=len(first.pattern),
        alphabet=first.alphabet,
    )
    return _Problem(oracle, {"fixed": stream})


def _perturb_spec(raw) -> PerturbationSpec:
    if isinstance(raw, PerturbationSpec):
        return raw
    if isinstance(raw, str):
        return PerturbationSpec.parse(raw)
    try:
        return PerturbationSpec(kind=raw["kind"], param=float(raw["param"]))
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"bad perturbation spec {raw!r}") from exc


def _make_sequence(problem: _Problem, config: ExperimentConfig, trial: int):
    """Build trial's instance sequence from its dedicated rng stream."""
    if "fixed" in problem.payload:
        return problem.payload["fixed"]
    rng = np.random.default_rng(
        np.random.SeedSequence(entropy=config.root_seed, spawn_key=(trial, STREAM_SEQUENCE))
    )
    pay = problem.payload
    if config.domain == "shortest-path":
        if config.generator == "tight":
            _, seq = tight_construction(pay["k"], config.rounds, rng)
            return seq
        return weight_sequence(pay["base"], pay["perturb"], config.rounds, rng)
    if config.domain == "lp":
        return objective_sequence(
            pay["program"], pay["base"], pay["sigma"], config.rounds, rng
        )
    oracle = problem.oracle
    return synth_search_sequence(
        oracle.text_length,
        oracle.pattern_length,
        config.rounds,
        rng,
        alphabet=pay["alphabet"],
        hot_positions=pay["hot_positions"],
        match_prob=pay["match_prob"],
    )


def _run_single(problem: _Problem, config: ExperimentConfig, trial: int) -> TrialData:
    seq = _make_sequence(problem, config, trial)
    det = run_trial_detailed(
        problem.oracle,
        seq,
        config.schedule,
        np.random.SeedSequence(entropy=config.root_seed, spawn_key=(trial, STREAM_COINS)),
    )
    base = run_trial_detailed(
        problem.oracle,
        seq,
        Schedule.constant(1.0),
        np.random.SeedSequence(entropy=config.root_seed, spawn_key=(trial, STREAM_BASELINE)),
    )
    return TrialData(
        trial=trial,
        records=det.records,
        pruned_sizes=det.pruned_sizes,
        baseline_work=tuple(r.work for r in base.records),
        s_star_size=len(base.final_pruned),
        universe_size=problem.oracle.universe_size,
    )


def _worker(args) -> List[TrialData]:
    problem, config, trial_ids = args
    return [_run_single(problem, config, t) for t in trial_ids]


# -- experiment driver ---------------------------------------------------------


def effective_workers(config: ExperimentConfig) -> int:
    """Configured parallelism, overridden by the PRUNEREP_WORKERS env var."""
    raw = os.environ.get(WORKERS_ENV)
    if raw is None:
        return config.parallelism
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ConfigError(f"{WORKERS_ENV} must be positive, got {value}")
    return value


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Run all trials, write any configured outputs, return the results.

    Deterministic in config.root_seed for any worker count: trials are
    seeded individually and merged by a final sort on trial id.
    """
    problem = build_problem(config)
    workers = effective_workers(config)
    ids = list(range(config.trials))
    if workers == 1 or config.trials == 1:
        data = [_run_single(problem, config, t) for t in ids]
    else:
        shards = [ids[i::workers] for i in range(workers) if ids[i::workers]]
        data = []
        with ProcessPoolExecutor(max_workers=len(shards)) as pool:
            for part in pool.map(_worker, [(problem, config, s) for s in shards]):
                data.extend(part)
    data.sort(key=lambda d: d.trial)
    trials = tuple(data)

    summary = summarize_experiment(config, trials, problem.oracle.universe_size)
    if config.csv_path is not None:
        write_rounds_csv(config.csv_path, trials)
    if config.json_path is not None:
        try:
            with open(config.json_path, "w", encoding="utf-8") as fh:
                json.dump(summary, fh, indent=2, sort_keys=True)
                fh.write("\n")
        except OSError as exc:
            raise IoError(f"cannot write {config.json_path}: {exc}") from exc
    return ExperimentResult(config=config, trials=trials, summary=summary)


CSV_COLUMNS = ("trial", "round", "explored", "set_size", "universe_size", "mistake", "work", "witness_size")


def write_rounds_csv(path: str, trials: Sequence[TrialData]) -> None:
    """One row per (trial, round), sorted, bools as 1/0, empty witness on
    exploit rounds."""
    try:
        fh = open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    with fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for td in trials:
            for rec in td.records:
                writer.writerow(
                    (
                        td.trial,
                        rec.round,
                        int(rec.explored),
                        rec.set_size,
                        td.universe_size,
                        int(rec.mistake),
                        rec.work,
                        "" if rec.witness_size is None else rec.witness_size,
                    )
                )


def _mean(xs) -> float:
    xs = list(xs)
    return sum(xs) / len(xs)


def _stderr(xs) -> Optional[float]:
    xs = np.asarray(list(xs), dtype=float)
    if xs.size < 2:
        return None
    return float(xs.std(ddof=1) / np.sqrt(xs.size))


def summarize_experiment(
    config: ExperimentConfig, trials: Sequence[TrialData], universe_size: int
) -> Dict[str, Any]:
    T = config.rounds
    n = len(trials)
    per_trial_mistakes = [sum(1 for r in td.records if r.mistake) for td in trials]
    total_mistakes = sum(per_trial_mistakes)

    work_series = [_mean(td.records[i].work for td in trials) for i in range(T)]
    base_series = [_mean(td.baseline_work[i] for td in trials) for i in range(T)]
    pruned_series = [_mean(td.pruned_sizes[i] for td in trials) for i in range(T)]
    set_series = [_mean(td.records[i].set_size for td in trials) for i in range(T)]

    exploit_work = [r.work for td in trials for r in td.records if not r.explored]
    explore_work = [r.work for td in trials for r in td.records if r.explored]
    baseline_mean = _mean(w for td in trials for w in td.baseline_work)

    s_star = [td.s_star_size for td in trials]
    s_star_mean = _mean(s_star)

    sched = config.schedule
    bounds: Dict[str, Any] = {
        "evaluated_at_mean_s_star": s_star_mean,
        "mistake_bound": mistake_bound(s_star_mean, sched, T),
        "pruned_size_bound": pruned_size_bound(s_star_mean, universe_size, sched, T),
    }
    if sched.kind == "inverse-sqrt":
        bounds["corollary_mistake_bound"] = corollary_mistake_bound(s_star_mean, T)
        bounds["corollary_pruned_size_bound"] = corollary_pruned_size_bound(
            s_star_mean, universe_size, T
        )
    if config.generator == "tight" and sched.kind == "constant":
        es, em = tight_construction_expectations(int(config.params["k"]), sched.p, T)
        bounds["tight_expected_s_star"] = es
        bounds["tight_expected_mistakes"] = em

    summary: Dict[str, Any] = {
        "config": config.to_json(),
        "backend": BACKEND,
        "universe_size": universe_size,
        "mistakes": {
            "total": total_mistakes,
            "fraction": total_mistakes / (n * T),
            "per_trial_mean": _mean(per_trial_mistakes),
            "per_trial_stderr": _stderr(per_trial_mistakes),
        },
        "s_star": {
            "mean": s_star_mean,
            "stderr": _stderr(s_star),
            "min": min(s_star),
            "max": max(s_star),
        },
        "pruned_size": {
            "per_round_mean": pruned_series,
            "mean_solve_set_size": _mean(set_series),
        },
        "work": {
            "per_round_mean": work_series,
            "baseline_per_round_mean": base_series,
            "mean": _mean(work_series),
            "baseline_mean": baseline_mean,
            "exploit_mean": _mean(exploit_work) if exploit_work else None,
            "explore_mean": _mean(explore_work) if explore_work else None,
            "work_reduction_ratio": (
                (_mean(exploit_work) / baseline_mean) if exploit_work and baseline_mean > 0 else None
            ),
        },
        "bounds": bounds,
    }
    return summary
