"""Randomized self-checks: production solvers vs brute-force references,
and exhaustive sufficiency tests of the witness contract.

Every check is a pure function of its seed, so a rerun with the same
seed prints an identical report. ``tamper`` hooks let the CLI prove
the checkers can catch a lying witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Set

import numpy as np

from .core import PrunedSet
from .graphs import EdgeWeights, Graph, ShortestPathOracle, dijkstra_canonical
from .lp import EPS_CMP, LpOracle, LpProgram, Objective, simplex_solve
from .errors import DegenerateInstance
from .reference import enumerate_shortest_path, full_scan_match, lp_vertex_solve
from .strings import SearchInstance, StringSearchOracle, match_restricted


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    seed: int
    detail: str = ""

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        tail = f"  [{self.detail}]" if self.detail else ""
        return f"{status}  {self.name}  ({self.cases} cases, seed {self.seed}){tail}"


def format_report(results: List[CheckResult]) -> str:
    lines = [r.line() for r in results]
    bad = sum(1 for r in results if not r.passed)
    lines.append(f"{len(results) - bad}/{len(results)} checks passed")
    return "\n".join(lines)


# -- random instance families ---------------------------------------------------


def _random_graph(rng, max_edges: int = 16, connect: bool = True) -> Graph:
    """Small digraph with a 0->...->V-1 spine, random extra arcs
    (parallel duplicates allowed), and lattice weights left to callers.

    connect=False isolates the terminal to exercise no-path rounds.
    """
    v = int(rng.integers(4, 8))
    tails, heads = [], []
    if connect:
        for i in range(v - 1):
            tails.append(i)
            heads.append(i + 1)
    extra = int(rng.integers(2, max(3, max_edges - len(tails) + 1)))
    for _ in range(extra):
        if len(tails) >= max_edges:
            break
        a = int(rng.integers(0, v))
        b = int(rng.integers(0, v))
        if a == b:
            continue
        if not connect and b == v - 1:
            continue
        tails.append(a)
        heads.append(b)
    if not tails:  # terminal isolated and no extras drawn
        tails, heads = [0], [1]
    return Graph(
        vertex_count=v,
        tails=np.asarray(tails, dtype=np.int64),
        heads=np.asarray(heads, dtype=np.int64),
        source=0,
        terminal=v - 1,
    )


def _lattice_weights(rng, count: int) -> EdgeWeights:
    """Multiples of 0.25 in [0, 1.5]: exact float ties and zero weights."""
    return EdgeWeights(rng.integers(0, 7, size=count) * 0.25)


def _random_lp(rng, extra_rows: int = 4) -> LpProgram:
    """Bounded 2-variable program with the origin strictly inside."""
    rows = [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]
    rhs = list(rng.uniform(0.5, 2.0, size=4))
    for _ in range(int(rng.integers(0, extra_rows + 1))):
        a = rng.normal(0.0, 1.0, size=2)
        if np.abs(a).max() < 1e-3:
            continue
        rows.append(list(a))
        rhs.append(float(rng.uniform(0.2, 1.5)))
    return LpProgram(a=np.asarray(rows), b=np.asarray(rhs))


def _random_search(rng, universe_max: int = 12, embed: bool = True) -> SearchInstance:
    alphabet = "AB" if rng.random() < 0.5 else "ACGT"
    m = int(rng.integers(1, 4))
    u = int(rng.integers(2, universe_max + 1))
    n = m + u - 1
    letters = np.array(list(alphabet))
    text = "".join(letters[rng.integers(0, len(letters), size=n)])
    pattern = "".join(letters[rng.integers(0, len(letters), size=m)])
    if embed:
        j = int(rng.integers(1, u + 1))
        text = text[: j - 1] + pattern + text[j - 1 + m :]
    return SearchInstance(text=text, pattern=pattern, alphabet=alphabet)


def _random_subset(rng, universe: int) -> PrunedSet:
    mask = rng.random(universe) < rng.uniform(0.2, 0.9)
    return PrunedSet.of(np.nonzero(mask)[0].tolist(), universe)


# -- oracle agreement against brute force ----------------------------------------


def check_sp_oracle(seed: int, cases: int = 500) -> CheckResult:
    """Canonical Dijkstra vs exhaustive simple-path enumeration, full and
    restricted, on tie-heavy lattice-weight graphs."""
    rng = np.random.default_rng(seed)
    name = "shortest-path vs path enumeration"
    for i in range(cases):
        graph = _random_graph(rng, connect=rng.random() > 0.1)
        weights = _lattice_weights(rng, graph.edge_count)
        allowed = None if rng.random() < 0.5 else _random_subset(rng, graph.edge_count)
        got, _ = dijkstra_canonical(graph, weights, allowed)
        want = enumerate_shortest_path(graph, weights, allowed)
        if (got is None) != (want is None):
            return CheckResult(name, False, i + 1, seed, f"case {i}: {got} vs {want}")
        if got is not None and (
            got.edge_ids != want.edge_ids or got.total_weight != want.total_weight
        ):
            return CheckResult(name, False, i + 1, seed, f"case {i}: {got} vs {want}")
    return CheckResult(name, True, cases, seed)


def check_lp_oracle(seed: int, cases: int = 500) -> CheckResult:
    """Two-phase simplex vs basis enumeration on random bounded 2-var
    programs, including agreement on degenerate/non-unique rejections."""
    rng = np.random.default_rng(seed)
    name = "lp simplex vs vertex enumeration"
    for i in range(cases):
        program = _random_lp(rng)
        objective = Objective(rng.normal(0.0, 1.0, size=2))
        ref = lp_vertex_solve(program, objective)
        try:
            got, _ = simplex_solve(program, objective)
        except DegenerateInstance:
            got = None
        if (got is None) != (ref.status == "bot"):
            return CheckResult(
                name, False, i + 1, seed,
                f"case {i}: simplex {'bot' if got is None else 'unique'}, "
                f"enumeration {ref.status} ({ref.reason})",
            )
        if got is not None:
            if np.abs(got.y - ref.y).max() > EPS_CMP:
                return CheckResult(name, False, i + 1, seed, f"case {i}: y {got.y} vs {ref.y}")
            if got.tight != ref.tight:
                return CheckResult(
                    name, False, i + 1, seed,
                    f"case {i}: tight {sorted(got.tight)} vs {sorted(ref.tight)}",
                )
    return CheckResult(name, True, cases, seed)


def check_string_oracle(seed: int, cases: int = 500) -> CheckResult:
    """Window matcher vs direct slicing scan, full and restricted."""
    rng = np.random.default_rng(seed)
    name = "string matcher vs full scan"
    for i in range(cases):
        inst = _random_search(rng, embed=rng.random() < 0.7)
        oracle = StringSearchOracle(len(inst.text), len(inst.pattern), inst.alphabet)
        out = oracle.solve(inst)
        want, want_work = full_scan_match(inst)
        if out.solution != want or out.work != want_work:
            return CheckResult(
                name, False, i + 1, seed,
                f"case {i}: ({out.solution},{out.work}) vs ({want},{want_work})",
            )
        allowed = _random_subset(rng, oracle.universe_size)
        got_r, _ = match_restricted(inst, allowed)
        want_r, _ = full_scan_match(inst, [j + 1 for j in allowed.members])
        if got_r != want_r:
            return CheckResult(name, False, i + 1, seed, f"case {i}: {got_r} vs {want_r}")
    return CheckResult(name, True, cases, seed)


# -- exhaustive sufficiency of witnesses ------------------------------------------

Tamper = Optional[Callable[[Set[int], int], Set[int]]]


def flip_witness_bit(members: Set[int], universe: int) -> Set[int]:
    """Drop element 0 if present, else claim it; guaranteed wrong."""
    if 0 in members:
        return members - {0}
    return members | {0}


def _exhaustive_iff(oracle, instance, tamper: Tamper = None) -> Optional[str]:
    """Check equality-with-full holds for exactly the witness supersets.

    Scans all 2^U allowed subsets; returns a counterexample string or
    None. The witness may be tampered with to prove the scan catches a
    wrong one.
    """
    full = oracle.solve(instance)
    members = set(full.witness.members)
    if tamper is not None:
        members = tamper(members, oracle.universe_size)
    u = oracle.universe_size
    for bits in range(1 << u):
        subset = frozenset(i for i in range(u) if bits >> i & 1)
        restricted = oracle.solve(instance, PrunedSet(subset, u))
        equal = oracle.equal(restricted.solution, full.solution)
        expected = members <= subset
        if equal != expected:
            return (
                f"subset {sorted(subset)}: restricted "
                f"{'==' if equal else '!='} full but witness containment is {expected}"
            )
    return None


def check_sp_assumption(
    seed: int, instances: int = 25, tamper: Tamper = None
) -> CheckResult:
    """Exhaustive iff over all edge subsets, graphs with <= 12 edges,
    including no-path instances (empty witness, bottom propagates)."""
    rng = np.random.default_rng(seed)
    name = "shortest-path witness iff (exhaustive)"
    for i in range(instances):
        graph = _random_graph(rng, max_edges=12, connect=rng.random() > 0.15)
        weights = _lattice_weights(rng, graph.edge_count)
        bad = _exhaustive_iff(ShortestPathOracle(graph), weights, tamper)
        if bad is not None:
            return CheckResult(name, False, i + 1, seed, f"instance {i}: {bad}")
    return CheckResult(name, True, instances, seed)


def check_lp_assumption(
    seed: int, instances: int = 10, tamper: Tamper = None
) -> CheckResult:
    """Exhaustive iff over all row subsets of <= 10-row 2-var programs.

    Objectives are redrawn until the full solve is clean, then every
    subset must reproduce the optimum exactly when it contains all
    tight rows and fail to otherwise."""
    rng = np.random.default_rng(seed)
    name = "lp witness iff (exhaustive)"
    done = 0
    while done < instances:
        program = _random_lp(rng, extra_rows=6)
        oracle = LpOracle(program)
        objective = Objective(rng.normal(0.0, 1.0, size=2))
        try:
            simplex_solve(program, objective)
        except DegenerateInstance:
            continue
        bad = _exhaustive_iff(oracle, objective, tamper)
        if bad is not None:
            return CheckResult(name, False, done + 1, seed, f"instance {done}: {bad}")
        done += 1
    return CheckResult(name, True, instances, seed)


def check_string_assumption(
    seed: int, instances: int = 30, tamper: Tamper = None
) -> CheckResult:
    """Exhaustive iff over all position subsets, universes <= 12.

    Match-bearing instances check the singleton witness; matchless ones
    check that bottom propagates to every restriction."""
    rng = np.random.default_rng(seed)
    name = "string witness iff (exhaustive)"
    for i in range(instances):
        inst = _random_search(rng, embed=i % 3 != 2)
        oracle = StringSearchOracle(len(inst.text), len(inst.pattern), inst.alphabet)
        bad = _exhaustive_iff(oracle, inst, tamper)
        if bad is not None:
            return CheckResult(name, False, i + 1, seed, f"instance {i}: {bad}")
    return CheckResult(name, True, instances, seed)


def run_all_checks(
    seed: int = 20260819, quick: bool = True, inject_fault: bool = False
) -> List[CheckResult]:
    """The full randomized suite. ``inject_fault`` tampers one witness
    per assumption check so the report must show failures."""
    scale = 1 if quick else 4
    tamper = flip_witness_bit if inject_fault else None
    return [
        check_sp_oracle(seed, cases=150 * scale),
        check_lp_oracle(seed + 1, cases=150 * scale),
        check_string_oracle(seed + 2, cases=150 * scale),
        check_sp_assumption(seed + 3, instances=6 * scale, tamper=tamper),
        check_lp_assumption(seed + 4, instances=4 * scale, tamper=tamper),
        check_string_assumption(seed + 5, instances=8 * scale, tamper=tamper),
    ]
