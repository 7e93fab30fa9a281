"""Time the hot kernels under both backends.

Run with no arguments: spawns itself twice (PRUNEREP_BACKEND=numpy,
then numba), collects per-op timings from each child as JSON, and
prints a comparison table. The backend is fixed at import time, which
is why each lane needs its own interpreter.

    python3 benchmarks/bench_backends.py
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def _time_op(fn, warmup: int, reps: int) -> float:
    for _ in range(warmup):
        fn()
    t0 = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - t0) / reps


def run_workloads() -> dict:
    from prunerep import (
        BACKEND,
        LpOracle,
        Schedule,
        ShortestPathOracle,
        StringSearchOracle,
        run_trial,
    )
    from prunerep.generators import (
        PerturbationSpec,
        perturb_objective_gaussian,
        synth_auction_lp,
        synth_grid_graph,
        synth_search_sequence,
        weight_sequence,
    )

    timings = {}
    rng = np.random.default_rng(11)

    graph, base = synth_grid_graph(30, 30, rng)
    sp_oracle = ShortestPathOracle(graph)
    weights = weight_sequence(base, PerturbationSpec("gaussian", 0.5), 8, rng)
    idx = iter(range(10**9))
    timings["dijkstra grid 30x30 (3480 arcs), full solve"] = _time_op(
        lambda: sp_oracle.solve(weights[next(idx) % len(weights)]), warmup=4, reps=24
    )

    program, obj_base = synth_auction_lp(20, 30, 2, rng)
    lp_oracle = LpOracle(program)
    objs = [perturb_objective_gaussian(obj_base, 0.5, rng) for _ in range(8)]
    idx = iter(range(10**9))
    timings["simplex auction 130x40, full solve"] = _time_op(
        lambda: lp_oracle.solve(objs[next(idx) % len(objs)]), warmup=4, reps=24
    )

    instances = synth_search_sequence(4000, 6, 8, rng, match_prob=0.2)
    ss_oracle = StringSearchOracle(text_length=4000, pattern_length=6)
    idx = iter(range(10**9))
    timings["string match text 4000 / pattern 6, full scan"] = _time_op(
        lambda: ss_oracle.solve(instances[next(idx) % len(instances)]), warmup=4, reps=24
    )

    grid_small, base_small = synth_grid_graph(10, 10, rng)
    seq = weight_sequence(base_small, PerturbationSpec("gaussian", 0.5), 20, rng)
    oracle_small = ShortestPathOracle(grid_small)
    timings["end-to-end trial, grid 10x10 x 20 rounds"] = _time_op(
        lambda: run_trial(oracle_small, seq, Schedule.inverse_sqrt(), 7),
        warmup=2,
        reps=10,
    )

    return {"backend": BACKEND, "timings": timings}


def run_lane(lane: str) -> dict:
    env = dict(os.environ, PRUNEREP_BACKEND=lane)
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--child"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--child", action="store_true", help="run one lane and emit JSON")
    args = parser.parse_args()

    if args.child:
        json.dump(run_workloads(), sys.stdout)
        return 0

    lanes = {}
    for lane in ("numpy", "numba"):
        print(f"timing {lane} lane...", file=sys.stderr)
        lanes[lane] = run_lane(lane)
        assert lanes[lane]["backend"] == lane, lanes[lane]

    names = list(lanes["numpy"]["timings"])
    width = max(len(n) for n in names)
    print(f"{'workload':<{width}}  {'numpy':>12}  {'numba':>12}  {'speedup':>8}")
    for name in names:
        a = lanes["numpy"]["timings"][name]
        b = lanes["numba"]["timings"][name]
        print(f"{name:<{width}}  {a * 1e3:>10.3f}ms  {b * 1e3:>10.3f}ms  {a / b:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
