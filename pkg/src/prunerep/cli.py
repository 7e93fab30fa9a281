"""Command-line front end: run experiments, print bounds, verify, export.

Exit codes: 0 success, 1 check or run failure, 2 usage, 3 file I/O.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

import numpy as np

from .core import Schedule
from .core.bounds import (
    lower_bound_product,
    mistake_bound,
    pruned_size_bound,
    tight_construction_expectations,
)
from .errors import ConfigError, DomainError, IoError, PruneRepError
from .generators import (
    synth_auction_lp,
    synth_grid_graph,
    synth_search_sequence,
    tight_construction,
)
from .harness import (
    PROBLEM_KEY,
    STREAM_SEQUENCE,
    ExperimentConfig,
    run_experiment,
)
from .graphs import EdgeWeights, write_edge_list
from .lp import write_lp, write_objectives
from .strings import write_stream
from .verify import format_report, run_all_checks


def _parse_p(raw: str):
    """Probability argument: a float or the literal 'invsqrt'."""
    if raw == "invsqrt":
        return Schedule.inverse_sqrt()
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"expected a probability or 'invsqrt', got {raw!r}") from None


def _parse_schedule(raw: str) -> Schedule:
    try:
        return Schedule.parse(raw)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None


# -- run -------------------------------------------------------------------------

_PARAM_FLAGS = {
    # dest -> params key
    "width": "width",
    "height": "height",
    "source": "source",
    "terminal": "terminal",
    "perturb": "perturb",
    "k": "k",
    "graph_file": "path",
    "lp_file": "path",
    "objectives_file": "objectives_path",
    "stream_file": "path",
    "bidders": "bidders",
    "goods": "goods",
    "bids_per_bidder": "bids_per_bidder",
    "rhs_jitter": "rhs_jitter",
    "sigma": "sigma",
    "text_length": "text_length",
    "pattern_length": "pattern_length",
    "alphabet": "alphabet",
    "hot_positions": "hot_positions",
    "match_prob": "match_prob",
}


def _cmd_run(args) -> int:
    params = {}
    for dest, key in _PARAM_FLAGS.items():
        value = getattr(args, dest, None)
        if value is not None:
            if key in params:
                raise ConfigError(f"conflicting flags set generator param {key!r} twice")
            params[key] = value
    config = ExperimentConfig(
        domain=args.domain,
        generator=args.generator,
        params=params,
        rounds=args.rounds,
        trials=args.trials,
        schedule=_parse_schedule(args.schedule),
        root_seed=args.seed,
        csv_path=args.csv,
        json_path=args.json,
        parallelism=args.parallelism,
    )
    result = run_experiment(config)
    s = result.summary
    print(f"domain {config.domain} / {config.generator}, "
          f"{config.trials} trials x {config.rounds} rounds, backend {s['backend']}")
    print(f"mistake fraction {s['mistakes']['fraction']!r} "
          f"(total {s['mistakes']['total']})")
    print(f"mean |S*| {s['s_star']['mean']!r} of universe {s['universe_size']}")
    work = s["work"]
    if work["work_reduction_ratio"] is not None:
        print(f"exploit work {work['exploit_mean']!r} vs full {work['baseline_mean']!r} "
              f"(ratio {work['work_reduction_ratio']!r})")
    if config.csv_path:
        print(f"rounds csv: {config.csv_path}")
    if config.json_path:
        print(f"summary json: {config.json_path}")
    return 0


# -- bounds ----------------------------------------------------------------------


def _cmd_bounds(args) -> int:
    printed = False
    if args.mistake is not None:
        s, p_raw, t = args.mistake
        p = _parse_p(p_raw)
        value = mistake_bound(float(s), p, int(t))
        label = "invsqrt" if isinstance(p, Schedule) else repr(float(p_raw))
        print(f"mistake_bound(s*={s}, p={label}, T={t}) = {value!r}")
        printed = True
    if args.pruned is not None:
        s, u, p_raw, t = args.pruned
        p = _parse_p(p_raw)
        value = pruned_size_bound(float(s), float(u), p, int(t))
        label = "invsqrt" if isinstance(p, Schedule) else repr(float(p_raw))
        print(f"pruned_size_bound(s*={s}, U={u}, p={label}, T={t}) = {value!r}")
        printed = True
    if args.tight is not None:
        k, p, t = args.tight
        es, em = tight_construction_expectations(int(k), float(p), int(t))
        print(f"tight_expected_s_star(k={k}, p={p}, T={t}) = {es!r}")
        print(f"tight_expected_mistakes(k={k}, p={p}, T={t}) = {em!r}")
        printed = True
    if args.lower is not None:
        m, t = args.lower
        value = lower_bound_product(float(m), int(t))
        print(f"lower_bound_product(m={m}, T={t}) = {value!r}")
        printed = True
    if not printed:
        raise ConfigError("nothing to compute: pass --mistake/--pruned/--tight/--lower")
    return 0


# -- verify ----------------------------------------------------------------------


def _cmd_verify(args) -> int:
    results = run_all_checks(
        seed=args.seed, quick=not args.full, inject_fault=args.inject_fault
    )
    print(format_report(results))
    return 0 if all(r.passed for r in results) else 1


# -- gen -------------------------------------------------------------------------


def _gen_rng(seed: int):
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=PROBLEM_KEY))


def _cmd_gen_grid(args) -> int:
    graph, base = synth_grid_graph(args.width, args.height, _gen_rng(args.seed))
    write_edge_list(graph, base, args.out)
    print(f"grid {args.width}x{args.height}: {graph.edge_count} arcs -> {args.out}")
    return 0


def _cmd_gen_tight(args) -> int:
    graph, _ = tight_construction(args.k, 1, _gen_rng(args.seed))
    write_edge_list(graph, EdgeWeights(np.ones(args.k)), args.out)
    print(f"tight k={args.k} base graph -> {args.out}")
    return 0


def _cmd_gen_auction(args) -> int:
    program, base = synth_auction_lp(
        args.bidders, args.goods, args.bids_per_bidder, _gen_rng(args.seed),
        rhs_jitter=args.rhs_jitter,
    )
    write_lp(program, args.out)
    print(f"auction {program.row_count} rows x {program.var_count} bids -> {args.out}")
    if args.objectives_out:
        write_objectives([base], args.objectives_out)
        print(f"base objective -> {args.objectives_out}")
    return 0


def _cmd_gen_string(args) -> int:
    rng = np.random.default_rng(
        np.random.SeedSequence(entropy=args.seed, spawn_key=(0, STREAM_SEQUENCE))
    )
    stream = synth_search_sequence(
        args.text_length, args.pattern_length, args.rounds, rng,
        alphabet=args.alphabet, hot_positions=args.hot_positions,
        match_prob=args.match_prob,
    )
    write_stream(stream, args.out)
    print(f"{len(stream)} search instances -> {args.out}")
    return 0


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prunerep",
        description="Explore/exploit pruning of repeated computations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a multi-trial experiment")
    run_p.add_argument("--domain", required=True,
                       choices=("shortest-path", "lp", "string-search"))
    run_p.add_argument("--generator", required=True,
                       choices=("grid", "tight", "edge-file", "auction", "lp-file",
                                "random", "stream-file"))
    run_p.add_argument("--trials", type=int, default=200)
    run_p.add_argument("--rounds", "-T", type=int, default=30)
    run_p.add_argument("--schedule", default="invsqrt",
                       help="invsqrt, const:P, or custom:P1,P2,...")
    run_p.add_argument("--seed", type=int, default=0)
    run_p.add_argument("--parallelism", type=int, default=1)
    run_p.add_argument("--csv", help="write per-round CSV here")
    run_p.add_argument("--json", help="write summary JSON here")
    run_p.add_argument("--width", type=int)
    run_p.add_argument("--height", type=int)
    run_p.add_argument("--source", type=int)
    run_p.add_argument("--terminal", type=int)
    run_p.add_argument("--perturb", help="gaussian:SIGMA or uniform:CLAMP")
    run_p.add_argument("--k", type=int, help="tight construction arm count")
    run_p.add_argument("--graph-file", help="edge-list file for edge-file runs")
    run_p.add_argument("--lp-file", help="program file for lp-file runs")
    run_p.add_argument("--objectives-file",
                       help="objective vectors: 1 base row or exactly --rounds rows")
    run_p.add_argument("--stream-file", help="text/pattern stream file")
    run_p.add_argument("--bidders", type=int)
    run_p.add_argument("--goods", type=int)
    run_p.add_argument("--bids-per-bidder", type=int)
    run_p.add_argument("--rhs-jitter", type=float)
    run_p.add_argument("--sigma", type=float, help="objective noise for lp runs")
    run_p.add_argument("--text-length", type=int)
    run_p.add_argument("--pattern-length", type=int)
    run_p.add_argument("--alphabet")
    run_p.add_argument("--hot-positions", type=int)
    run_p.add_argument("--match-prob", type=float)
    run_p.set_defaults(func=_cmd_run)

    bounds_p = sub.add_parser("bounds", help="evaluate the closed-form guarantees")
    bounds_p.add_argument("--mistake", nargs=3, metavar=("S_STAR", "P", "T"))
    bounds_p.add_argument("--pruned", nargs=4, metavar=("S_STAR", "UNIVERSE", "P", "T"))
    bounds_p.add_argument("--tight", nargs=3, metavar=("K", "P", "T"))
    bounds_p.add_argument("--lower", nargs=2, metavar=("M", "T"))
    bounds_p.set_defaults(func=_cmd_bounds)

    verify_p = sub.add_parser("verify", help="randomized solver and witness checks")
    verify_p.add_argument("--seed", type=int, default=20260819)
    verify_p.add_argument("--full", action="store_true", help="4x the case counts")
    verify_p.add_argument("--inject-fault", action="store_true",
                          help="tamper witnesses to prove the checks can fail")
    verify_p.set_defaults(func=_cmd_verify)

    gen_p = sub.add_parser("gen", help="export a generated base problem")
    gen_sub = gen_p.add_subparsers(dest="family", required=True)

    gg = gen_sub.add_parser("grid")
    gg.add_argument("--width", type=int, required=True)
    gg.add_argument("--height", type=int, required=True)
    gg.add_argument("--seed", type=int, default=0)
    gg.add_argument("--out", required=True)
    gg.set_defaults(func=_cmd_gen_grid)

    gt = gen_sub.add_parser("tight")
    gt.add_argument("--k", type=int, required=True)
    gt.add_argument("--seed", type=int, default=0)
    gt.add_argument("--out", required=True)
    gt.set_defaults(func=_cmd_gen_tight)

    ga = gen_sub.add_parser("auction")
    ga.add_argument("--bidders", type=int, required=True)
    ga.add_argument("--goods", type=int, required=True)
    ga.add_argument("--bids-per-bidder", type=int, required=True)
    ga.add_argument("--rhs-jitter", type=float, default=0.05)
    ga.add_argument("--seed", type=int, default=0)
    ga.add_argument("--out", required=True)
    ga.add_argument("--objectives-out", help="also write the base objective")
    ga.set_defaults(func=_cmd_gen_auction)

    gs = gen_sub.add_parser("string")
    gs.add_argument("--text-length", type=int, required=True)
    gs.add_argument("--pattern-length", type=int, required=True)
    gs.add_argument("--rounds", type=int, default=30)
    gs.add_argument("--alphabet", default="ACGT")
    gs.add_argument("--hot-positions", type=int, default=3)
    gs.add_argument("--match-prob", type=float, default=0.85)
    gs.add_argument("--seed", type=int, default=0)
    gs.add_argument("--out", required=True)
    gs.set_defaults(func=_cmd_gen_string)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PruneRepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
