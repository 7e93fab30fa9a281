"""Brute-force reference solvers used to cross-check the fast paths.

These implementations share no search logic with the production
solvers: paths are enumerated by backtracking, LP optima by basis
enumeration, matches by string slicing. They are exponential or
quadratic and meant for small verification instances only.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Optional, Tuple

import numpy as np

from .graphs import Graph, Path
from .lp import EPS_TIGHT, LpProgram, Objective

EPS_FEAS_REF = 1e-8

# -- shortest path: exhaustive simple-path enumeration -----------------------


def enumerate_shortest_path(
    graph: Graph, weights, allowed=None
) -> Optional[Path]:
    """Minimum-weight simple source-terminal path, edge-id-lexicographic
    smallest among exact weight ties. None when no path exists.

    Weight sums accumulate along the path left to right, matching the
    solver's arithmetic, so float ties agree between the two.
    """
    vals = weights.values if hasattr(weights, "values") else np.asarray(weights, float)
    if allowed is None:
        mask = np.ones(graph.edge_count, dtype=bool)
    else:
        mask = allowed.to_mask().astype(bool)
    adjacency = [[] for _ in range(graph.vertex_count)]
    for eid in range(graph.edge_count):
        if mask[eid]:
            adjacency[int(graph.tails[eid])].append((eid, int(graph.heads[eid])))
    for lst in adjacency:
        lst.sort()

    best: Optional[Tuple[float, Tuple[int, ...]]] = None
    stack_edges = []
    visited = bytearray(graph.vertex_count)

    def walk(v: int, acc: float):
        nonlocal best
        if best is not None and acc > best[0]:
            return
        if v == graph.terminal:
            key = (acc, tuple(stack_edges))
            if best is None or key < best:
                best = key
            return
        visited[v] = 1
        for eid, head in adjacency[v]:
            if visited[head]:
                continue
            stack_edges.append(eid)
            walk(head, acc + vals[eid])
            stack_edges.pop()
        visited[v] = 0

    walk(graph.source, 0.0)
    if best is None:
        return None
    return Path(edge_ids=best[1], total_weight=best[0])


# -- LP: vertex enumeration ---------------------------------------------------


@dataclass(frozen=True)
class VertexSolveResult:
    """Outcome of basis enumeration: a unique nondegenerate optimum or bottom."""

    status: str  # "unique" | "bot"
    y: Optional[np.ndarray] = None
    tight: Optional[FrozenSet[int]] = None
    value: Optional[float] = None
    reason: str = ""


def _recession_improves(a_s: np.ndarray, x: np.ndarray) -> bool:
    """2-d only: is max x.y unbounded over {y : a_s y <= b}?

    The feasible cone {d : a_s d <= 0} is scanned through its candidate
    extreme directions: x itself plus each row's two perpendiculars.
    """
    n = a_s.shape[1]
    if n != 2:
        raise ValueError("recession scan implemented for 2 variables only")
    cands = [x]
    for row in a_s:
        cands.append(np.array([row[1], -row[0]]))
        cands.append(np.array([-row[1], row[0]]))
    for d in cands:
        norm = float(np.linalg.norm(d))
        if norm == 0.0:
            continue
        d = d / norm
        if a_s.size and np.any(a_s @ d > 1e-9):
            continue
        if float(x @ d) > 1e-9 * (1.0 + float(np.abs(x).max())):
            return True
    return False


def lp_vertex_solve(
    program: LpProgram,
    objective: Objective,
    allowed=None,
    assume_bounded: bool = False,
) -> VertexSolveResult:
    """Enumerate all n-row bases of the (restricted) program.

    Reports a unique optimum only when exactly one feasible vertex
    attains the best value and exactly n rows are tight there, the same
    contract the production solver implements. ``assume_bounded`` skips
    the unboundedness scan (only available for 2 variables) for
    programs bounded by construction.
    """
    x = objective.coefficients
    n = program.var_count
    if allowed is None:
        rows = list(range(program.row_count))
    else:
        rows = sorted(allowed.members)
    a_s = program.a[rows] if rows else np.zeros((0, n))
    b_s = program.b[rows] if rows else np.zeros(0)

    if not assume_bounded and _recession_improves(a_s, x):
        return VertexSolveResult(status="bot", reason="unbounded objective")

    verts = []
    for combo in combinations(range(len(rows)), n):
        mat = a_s[list(combo)]
        rhs = b_s[list(combo)]
        try:
            y = np.linalg.solve(mat, rhs)
        except np.linalg.LinAlgError:
            continue
        if not np.all(np.isfinite(y)):
            continue
        if np.any(np.abs(mat @ y - rhs) > 1e-7 * (1.0 + np.abs(rhs))):
            continue  # solve() succeeded but the system is ill-conditioned
        resid = a_s @ y - b_s
        if np.any(resid > EPS_FEAS_REF * (1.0 + np.abs(b_s))):
            continue
        verts.append((float(x @ y), y))
    if not verts:
        return VertexSolveResult(status="bot", reason="no feasible vertex")

    best_value = max(v for v, _ in verts)
    tol = 1e-9 * (1.0 + abs(best_value))
    winners = [y for v, y in verts if v >= best_value - tol]
    distinct = []
    for y in winners:
        if not any(np.abs(y - z).max() <= 1e-6 for z in distinct):
            distinct.append(y)
    if len(distinct) != 1:
        return VertexSolveResult(status="bot", reason="optimum attained at several vertices")
    y = distinct[0]
    resid = np.abs(a_s @ y - b_s)
    tight_local = np.nonzero(resid <= EPS_TIGHT * (1.0 + np.abs(b_s)))[0]
    if tight_local.size != n:
        return VertexSolveResult(
            status="bot", reason=f"{tight_local.size} tight rows at the optimum"
        )
    tight = frozenset(int(rows[i]) for i in tight_local)
    return VertexSolveResult(status="unique", y=y, tight=tight, value=best_value)


# -- string search: full scan by slicing --------------------------------------


def full_scan_match(instance, positions=None) -> Tuple[Optional[int], int]:
    """Smallest matching 1-based position by direct slicing.

    ``positions`` restricts the scan (iterable of 1-based positions);
    None scans everything. Returns (position or None, work).
    """
    m = len(instance.pattern)
    if positions is None:
        candidates = range(1, instance.universe_size + 1)
    else:
        candidates = sorted(int(j) for j in positions)
    work = 0
    for j in candidates:
        work += 1
        if instance.text[j - 1 : j - 1 + m] == instance.pattern:
            return j, work
    return None, work
