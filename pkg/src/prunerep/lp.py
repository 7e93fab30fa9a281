"""Repeated linear programs: fixed constraint rows, varying objective.

Programs are ``maximize x.y subject to A y <= b`` with free y, A of
shape (m, n), m >= n. The universe for this domain is the row set of A;
a restricted solve keeps only the rows in the allowed set. The witness
of a full solve is the set of rows tight at the optimum.

A solution is only reported when the optimum is a single nondegenerate
vertex: exactly n rows tight at tolerance. Restricted solves return
None (bottom) otherwise, including unbounded restrictions; the full
program failing these checks raises DegenerateInstance, which
generators treat as "redraw the objective". Work is the simplex pivot
count, both phases included.

Internally the dual (min b.lam, A^T lam = x, lam >= 0) is solved by a
dense tableau simplex with Bland's rule; the primal vertex is then
recovered from the optimal basis rows. Deterministic pivot order makes
pivot counts reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple

import numpy as np

from ._lp_kernels import DEGENERATE, INFEASIBLE, UNBOUNDED, dual_simplex_kernel
from .core.types import PrunedSet, SolveOutcome
from .errors import (
    BotWitness,
    DegenerateInstance,
    InfeasibleRestriction,
    MalformedInstance,
)

EPS_TIGHT = 1e-9  # row-relative: eps * (1 + |b_j|)
EPS_FEAS = 1e-8  # row-relative feasibility slack
EPS_CMP = 1e-7  # solution comparison, max-abs difference
_PIVOT_TOL = 1e-10
_OPT_TOL = 1e-9
_LAM_TOL = 1e-9  # dual positivity threshold, relative to max multiplier


@dataclass(frozen=True)
class LpProgram:
    """Constraint rows A y <= b, immutable across a run."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.ascontiguousarray(np.asarray(self.a, dtype=np.float64))
        b = np.ascontiguousarray(np.asarray(self.b, dtype=np.float64))
        if a.ndim != 2:
            raise MalformedInstance("constraint matrix must be 2-d")
        if b.shape != (a.shape[0],):
            raise MalformedInstance(
                f"b has shape {b.shape}, expected ({a.shape[0]},)"
            )
        m, n = a.shape
        if n < 1 or m < n:
            raise MalformedInstance(f"need m >= n >= 1, got shape {a.shape}")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise MalformedInstance("constraint data must be finite")
        row_norms = np.abs(a).max(axis=1)
        if np.any(row_norms == 0.0):
            raise MalformedInstance("all-zero constraint rows are not allowed")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def row_count(self) -> int:
        return int(self.a.shape[0])

    @property
    def var_count(self) -> int:
        return int(self.a.shape[1])


@dataclass(frozen=True)
class Objective:
    """One round's objective direction; must not be the zero vector."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.ascontiguousarray(np.asarray(self.coefficients, dtype=np.float64))
        if c.ndim != 1 or c.size < 1:
            raise MalformedInstance("objective must be a nonempty 1-d vector")
        if not np.all(np.isfinite(c)):
            raise MalformedInstance("objective must be finite")
        if np.all(c == 0.0):
            raise MalformedInstance("objective must not be the zero vector")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)


@dataclass(frozen=True)
class LpSolution:
    """A unique nondegenerate optimum: the vertex and its defining rows."""

    y: np.ndarray
    tight: FrozenSet[int]
    pivots: int

    def __post_init__(self):
        y = np.ascontiguousarray(np.asarray(self.y, dtype=np.float64))
        y.setflags(write=False)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "tight", frozenset(int(j) for j in self.tight))
        if len(self.tight) != y.size:
            raise MalformedInstance(
                f"{len(self.tight)} tight rows for {y.size} variables"
            )


def _fail(full: bool, pivots: int, reason: str):
    if full:
        raise DegenerateInstance(
            f"full LP violates the unique-nondegenerate-optimum assumption: {reason}"
        )
    return None, pivots


def simplex_solve(
    program: LpProgram, objective: Objective, allowed: Optional[PrunedSet] = None
) -> Tuple[Optional[LpSolution], int]:
    """Solve the (possibly restricted) program; returns (solution, pivots).

    None stands for bottom: the restriction is unbounded or its optimal
    face is not a single nondegenerate vertex. The same conditions on
    the full program raise DegenerateInstance instead, and a genuinely
    infeasible system raises InfeasibleRestriction (unreachable for
    restrictions of a feasible program, kept as a defensive check).
    """
    x = objective.coefficients
    if x.size != program.var_count:
        raise MalformedInstance(
            f"objective has {x.size} coefficients, program has {program.var_count} variables"
        )
    full = allowed is None
    if full:
        rows = np.arange(program.row_count, dtype=np.int64)
    else:
        if allowed.universe_size != program.row_count:
            raise MalformedInstance(
                f"pruned set universe {allowed.universe_size} does not match "
                f"row count {program.row_count}"
            )
        rows = allowed.as_array()
    n = program.var_count
    if rows.size < n:
        # fewer rows than variables cannot pin a vertex; with a nonzero
        # objective the restriction is unbounded or underdetermined
        return _fail(full, 0, f"{rows.size} rows for {n} variables")

    a_s = np.ascontiguousarray(program.a[rows])
    b_s = np.ascontiguousarray(program.b[rows])
    d_mat = np.ascontiguousarray(a_s.T)
    feas_tol = 1e-7 * (1.0 + float(np.abs(x).max()))

    status, pivots, basis, lam = dual_simplex_kernel(
        d_mat, x, b_s, _PIVOT_TOL, _OPT_TOL, feas_tol
    )
    pivots = int(pivots)
    if status == INFEASIBLE:
        # dual infeasible means the primal objective is unbounded
        return _fail(full, pivots, "objective is unbounded over the feasible set")
    if status == UNBOUNDED:
        # dual unbounded means the primal is infeasible; impossible when
        # restricting a feasible program (dropping rows only enlarges
        # the feasible set) but reported rather than assumed away
        raise InfeasibleRestriction(
            "constraint system is infeasible"
            + ("" if full else " under the given restriction")
        )
    if status == DEGENERATE:
        return _fail(full, pivots, "constraint rows are numerically rank-deficient")

    lam_floor = _LAM_TOL * (1.0 + float(lam.max()))
    if float(lam.min()) <= lam_floor:
        # a zero multiplier on a basic row: the optimal face is not a
        # single point
        return _fail(full, pivots, "optimum is not unique (degenerate dual basis)")

    basis_rows = rows[np.asarray(basis, dtype=np.int64)]
    mat = program.a[basis_rows]
    try:
        y = np.linalg.solve(mat, program.b[basis_rows])
    except np.linalg.LinAlgError:
        return _fail(full, pivots, "singular basis system")

    resid = a_s @ y - b_s
    scale = 1.0 + np.abs(b_s)
    if bool(np.any(resid > EPS_FEAS * scale)):
        return _fail(full, pivots, "recovered vertex violates feasibility")
    tight_mask = np.abs(resid) <= EPS_TIGHT * scale
    if int(tight_mask.sum()) != n:
        return _fail(
            full,
            pivots,
            f"{int(tight_mask.sum())} tight rows at the optimum, expected exactly {n}",
        )
    tight_rows = frozenset(int(j) for j in rows[tight_mask])
    if not frozenset(int(j) for j in basis_rows) <= tight_rows:
        return _fail(full, pivots, "optimal basis disagrees with the tight set")
    return LpSolution(y=y, tight=tight_rows, pivots=pivots), pivots


def lp_witness(solution: Optional[LpSolution], universe_size: int) -> PrunedSet:
    """The tight row set of a full solve. Raises BotWitness on None."""
    if solution is None:
        raise BotWitness("bottom LP result has no witness")
    return PrunedSet.of(solution.tight, universe_size)


def lp_equal(
    a: Optional[LpSolution], b: Optional[LpSolution], eps: float = EPS_CMP
) -> bool:
    """Solution comparison: bottom equals only bottom, else max-abs <= eps."""
    if a is None or b is None:
        return a is None and b is None
    if a.y.size != b.y.size:
        return False
    return float(np.abs(a.y - b.y).max()) <= eps


class LpOracle:
    """Domain oracle over objectives for one fixed program."""

    def __init__(self, program: LpProgram):
        self.program = program
        self.universe_size = program.row_count

    def solve(self, instance: Objective, allowed: Optional[PrunedSet] = None) -> SolveOutcome:
        solution, pivots = simplex_solve(self.program, instance, allowed)
        if allowed is not None:
            return SolveOutcome(solution=solution, witness=None, work=pivots)
        # a full solve that survives simplex_solve is never None
        witness = lp_witness(solution, self.universe_size)
        return SolveOutcome(solution=solution, witness=witness, work=pivots)

    def equal(self, a: Optional[LpSolution], b: Optional[LpSolution]) -> bool:
        return lp_equal(a, b)


# -- file formats -------------------------------------------------------------
#
# Program file: first line "m n", then m lines of n coefficients
# followed by b_j. Objectives file: one n-vector per line, one line per
# round.


def write_lp(program: LpProgram, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{program.row_count} {program.var_count}\n")
        for row, rhs in zip(program.a, program.b):
            cells = " ".join(repr(float(v)) for v in row)
            fh.write(f"{cells} {float(rhs)!r}\n")


def load_lp(path) -> LpProgram:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise MalformedInstance(f"{path}: empty program file")
    head = lines[0].split()
    if len(head) != 2:
        raise MalformedInstance(f"{path}: header must be 'm n'")
    try:
        m, n = int(head[0]), int(head[1])
    except ValueError:
        raise MalformedInstance(f"{path}: header must be 'm n'") from None
    if len(lines) - 1 != m:
        raise MalformedInstance(f"{path}: header promises {m} rows, file has {len(lines) - 1}")
    a = np.empty((m, n), dtype=np.float64)
    b = np.empty(m, dtype=np.float64)
    for i, ln in enumerate(lines[1:]):
        parts = ln.split()
        if len(parts) != n + 1:
            raise MalformedInstance(
                f"{path}: line {i + 2}: expected {n} coefficients plus the bound"
            )
        try:
            a[i] = [float(v) for v in parts[:n]]
            b[i] = float(parts[n])
        except ValueError:
            raise MalformedInstance(f"{path}: line {i + 2}: non-numeric value") from None
    return LpProgram(a=a, b=b)


def write_objectives(objectives, path) -> None:
    with open(path, "w") as fh:
        for obj in objectives:
            fh.write(" ".join(repr(float(v)) for v in obj.coefficients) + "\n")


def load_objectives(path, var_count: int) -> List[Objective]:
    out = []
    with open(path) as fh:
        for ln_no, ln in enumerate(fh, start=1):
            if not ln.strip():
                continue
            parts = ln.split()
            if len(parts) != var_count:
                raise MalformedInstance(
                    f"{path}: line {ln_no}: expected {var_count} coefficients"
                )
            try:
                out.append(Objective(np.asarray([float(v) for v in parts])))
            except ValueError:
                raise MalformedInstance(
                    f"{path}: line {ln_no}: non-numeric value"
                ) from None
    if not out:
        raise MalformedInstance(f"{path}: no objectives found")
    return out
