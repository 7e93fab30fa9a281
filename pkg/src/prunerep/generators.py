"""Synthetic instance families and round-to-round perturbations.

Every generator takes an explicit ``numpy.random.Generator`` so that
callers control the stream; nothing here touches global RNG state.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .errors import ConfigError, DegenerateInstance, DomainError
from .graphs import EdgeWeights, Graph
from .lp import LpProgram, Objective, simplex_solve
from .strings import DNA, SearchInstance

logger = logging.getLogger(__name__)

# -- perturbations ------------------------------------------------------------


def perturb_weights_gaussian(base: EdgeWeights, sigma: float, rng) -> EdgeWeights:
    """Add N(0, sigma^2) noise per edge, truncating negatives to zero."""
    if sigma < 0:
        raise DomainError("sigma must be nonnegative")
    shifted = base.values + rng.normal(0.0, sigma, size=base.values.size)
    return EdgeWeights(np.where(shifted > 0.0, shifted, 0.0))


def perturb_weights_uniform(base: EdgeWeights, clamp: float, rng) -> EdgeWeights:
    """Jitter each weight by U(-w, w) with w = min(weight, clamp).

    The window never exceeds the weight itself, so results stay
    nonnegative without truncation.
    """
    if clamp < 0:
        raise DomainError("clamp must be nonnegative")
    w = np.minimum(base.values, clamp)
    return EdgeWeights(rng.uniform(base.values - w, base.values + w))


def perturb_objective_gaussian(base: Objective, sigma: float, rng) -> Objective:
    """Add N(0, sigma^2) noise per coefficient. No truncation."""
    if sigma < 0:
        raise DomainError("sigma must be nonnegative")
    return Objective(base.coefficients + rng.normal(0.0, sigma, size=base.coefficients.size))


@dataclass(frozen=True)
class PerturbationSpec:
    """How successive rounds' inputs are drawn from a base instance.

    kind "gaussian" (param = sigma) or "uniform" (param = half-window
    clamp) for edge weights; LP objectives always use gaussian noise.
    """

    kind: str
    param: float

    _KINDS = ("gaussian", "uniform")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ConfigError(f"unknown perturbation kind {self.kind!r}")
        if not (self.param >= 0 and np.isfinite(self.param)):
            raise ConfigError("perturbation parameter must be finite and nonnegative")

    def apply(self, base: EdgeWeights, rng) -> EdgeWeights:
        if self.kind == "gaussian":
            return perturb_weights_gaussian(base, self.param, rng)
        return perturb_weights_uniform(base, self.param, rng)

    @classmethod
    def parse(cls, text: str) -> "PerturbationSpec":
        """Parse CLI spellings like 'gaussian:1.0' or 'uniform:0.5'."""
        kind, sep, raw = text.partition(":")
        if not sep:
            raise ConfigError(f"expected kind:param, got {text!r}")
        try:
            param = float(raw)
        except ValueError:
            raise ConfigError(f"bad perturbation parameter {raw!r}") from None
        return cls(kind=kind, param=param)

    def label(self) -> str:
        return f"{self.kind}:{self.param!r}"


def weight_sequence(
    base: EdgeWeights, spec: PerturbationSpec, rounds: int, rng
) -> List[EdgeWeights]:
    """Independent per-round perturbations of a fixed base weighting."""
    if rounds < 1:
        raise DomainError("rounds must be at least 1")
    return [spec.apply(base, rng) for _ in range(rounds)]


def objective_sequence(
    program: LpProgram,
    base: Objective,
    sigma: float,
    rounds: int,
    rng,
    max_redraws: int = 200,
) -> List[Objective]:
    """Per-round gaussian objective perturbations, redrawn until the full
    program has a unique nondegenerate optimum for each.

    Draws that hit a degenerate or non-unique optimum are discarded and
    logged; more than ``max_redraws`` consecutive rejections raises.
    """
    if rounds < 1:
        raise DomainError("rounds must be at least 1")
    out: List[Objective] = []
    for i in range(rounds):
        for attempt in range(max_redraws + 1):
            cand = perturb_objective_gaussian(base, sigma, rng)
            try:
                simplex_solve(program, cand)
            except DegenerateInstance as exc:
                logger.debug("round %d: redraw %d (%s)", i + 1, attempt + 1, exc)
                continue
            out.append(cand)
            break
        else:
            raise DegenerateInstance(
                f"round {i + 1}: no usable objective after {max_redraws} redraws"
            )
    return out


# -- structured families ------------------------------------------------------


def tight_construction(k: int, rounds: int, rng) -> Tuple[Graph, List[EdgeWeights]]:
    """Two vertices joined by k parallel edges; each round all weights are
    1 except one uniformly chosen edge at 0.

    The unique shortest path is the zero edge, so the witness set walks
    a coupon-collector process over the k edges.
    """
    if k < 1:
        raise DomainError("k must be at least 1")
    if rounds < 1:
        raise DomainError("rounds must be at least 1")
    graph = Graph(
        vertex_count=2,
        tails=np.zeros(k, dtype=np.int64),
        heads=np.ones(k, dtype=np.int64),
        source=0,
        terminal=1,
    )
    picks = rng.integers(0, k, size=rounds)
    seq = []
    for i in range(rounds):
        vals = np.ones(k)
        vals[picks[i]] = 0.0
        seq.append(EdgeWeights(vals))
    return graph, seq


def synth_grid_graph(
    width: int,
    height: int,
    rng,
    source: Optional[int] = None,
    terminal: Optional[int] = None,
) -> Tuple[Graph, EdgeWeights]:
    """4-connected grid with both directions of every adjacency as
    separate arcs, base weights U(0.5, 1.5) per arc.

    Vertex (r, c) has id r*width + c. Default route: corner 0 to corner
    width*height - 1.
    """
    if width < 1 or height < 1 or width * height < 2:
        raise DomainError("grid needs at least two vertices")
    tails, heads = [], []
    for r in range(height):
        for c in range(width):
            v = r * width + c
            if c + 1 < width:
                tails += [v, v + 1]
                heads += [v + 1, v]
            if r + 1 < height:
                tails += [v, v + width]
                heads += [v + width, v]
    graph = Graph(
        vertex_count=width * height,
        tails=np.asarray(tails, dtype=np.int64),
        heads=np.asarray(heads, dtype=np.int64),
        source=0 if source is None else source,
        terminal=width * height - 1 if terminal is None else terminal,
    )
    weights = EdgeWeights(rng.uniform(0.5, 1.5, size=graph.edge_count))
    return graph, weights


def synth_auction_lp(
    n_bidders: int,
    n_goods: int,
    bids_per_bidder: int,
    rng,
    rhs_jitter: float = 0.05,
) -> Tuple[LpProgram, Objective]:
    """Relaxed winner determination: one variable per bid, rows for good
    capacities, per-bidder caps, and per-bid box constraints.

    Bundle sizes are min(geometric(1/2), n_goods); every good is patched
    into some bundle so no row is all-zero; bid value is bundle size
    times U(0.8, 1.2). Capacity and upper-box right-hand sides are
    1 + U(0, rhs_jitter) rather than exactly 1: with exact ones every
    integral optimum is massively degenerate, so the uniqueness
    assumption would fail on essentially every draw. Lower boxes stay
    exactly -x_v <= 0. Row order: goods, then bidders, then upper
    boxes, then lower boxes.
    """
    if n_bidders < 1 or n_goods < 1 or bids_per_bidder < 1:
        raise DomainError("auction needs at least one bidder, good, and bid")
    if rhs_jitter < 0:
        raise DomainError("rhs_jitter must be nonnegative")
    n_bids = n_bidders * bids_per_bidder

    bundles: List[set] = []
    for _ in range(n_bids):
        size = min(int(rng.geometric(0.5)), n_goods)
        bundles.append(set(rng.choice(n_goods, size=size, replace=False).tolist()))
    covered = set().union(*bundles)
    for g in range(n_goods):
        if g not in covered:
            bundles[int(rng.integers(0, n_bids))].add(g)
    values = np.array([len(b) * rng.uniform(0.8, 1.2) for b in bundles])

    m = n_goods + n_bidders + 2 * n_bids
    a = np.zeros((m, n_bids))
    b = np.zeros(m)
    jit = rng.uniform(0.0, rhs_jitter, size=n_goods + n_bidders + n_bids)
    for g in range(n_goods):
        for v, bundle in enumerate(bundles):
            if g in bundle:
                a[g, v] = 1.0
        b[g] = 1.0 + jit[g]
    for i in range(n_bidders):
        row = n_goods + i
        a[row, i * bids_per_bidder : (i + 1) * bids_per_bidder] = 1.0
        b[row] = 1.0 + jit[n_goods + i]
    for v in range(n_bids):
        row = n_goods + n_bidders + v
        a[row, v] = 1.0
        b[row] = 1.0 + jit[n_goods + n_bidders + v]
    for v in range(n_bids):
        row = n_goods + n_bidders + n_bids + v
        a[row, v] = -1.0
        b[row] = 0.0
    return LpProgram(a=a, b=b), Objective(values)


def synth_search_sequence(
    text_length: int,
    pattern_length: int,
    rounds: int,
    rng,
    alphabet: str = DNA,
    hot_positions: int = 3,
    match_prob: float = 0.85,
) -> List[SearchInstance]:
    """Random texts with the pattern embedded at one of a few recurring
    hot positions with probability match_prob, else left to chance.

    The hot set is drawn once per call, so a sequence concentrates its
    matches on a small stable part of the position universe.
    """
    if pattern_length < 1 or pattern_length > text_length:
        raise DomainError("need 1 <= pattern_length <= text_length")
    if rounds < 1:
        raise DomainError("rounds must be at least 1")
    if not 0.0 <= match_prob <= 1.0:
        raise DomainError("match_prob must lie in [0, 1]")
    if hot_positions < 1:
        raise DomainError("hot_positions must be at least 1")
    universe = text_length - pattern_length + 1
    letters = np.array(list(alphabet))
    hot = rng.choice(universe, size=min(hot_positions, universe), replace=False) + 1

    def draw(length: int) -> str:
        return "".join(letters[rng.integers(0, letters.size, size=length)])

    out = []
    for _ in range(rounds):
        text = draw(text_length)
        pattern = draw(pattern_length)
        if rng.random() < match_prob:
            j = int(hot[rng.integers(0, hot.size)])
            text = text[: j - 1] + pattern + text[j - 1 + pattern_length :]
        out.append(SearchInstance(text=text, pattern=pattern, alphabet=alphabet))
    return out
