"""Repeated shortest-path queries on a fixed graph with varying weights.

The universe for this domain is the arc set: universe id = arc id, in
input order. Undirected input lines are expanded into two arcs that
share a display id but are distinct universe elements.

The solver is deterministic under ties: among all minimum-weight simple
source-terminal paths it returns the one whose edge-id sequence is
lexicographically smallest, comparing ids only on exact float distance
ties. Zero weights are allowed; negative weights are rejected at load.
Work is the number of settle events, counting source and terminal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple

import numpy as np

from ._sp_kernels import dijkstra_kernel
from .core.types import PrunedSet, SolveOutcome
from .errors import BotWitness, MalformedGraph


@dataclass(frozen=True)
class Graph:
    """Immutable arc-list graph with a fixed source/terminal pair."""

    vertex_count: int
    tails: np.ndarray
    heads: np.ndarray
    source: int
    terminal: int
    directed: bool = True
    display_ids: Optional[np.ndarray] = None

    def __post_init__(self):
        tails = np.ascontiguousarray(np.asarray(self.tails, dtype=np.int64))
        heads = np.ascontiguousarray(np.asarray(self.heads, dtype=np.int64))
        if tails.ndim != 1 or heads.ndim != 1 or tails.shape != heads.shape:
            raise MalformedGraph("tails and heads must be equal-length 1-d arrays")
        if self.vertex_count < 1:
            raise MalformedGraph(f"vertex_count must be >= 1, got {self.vertex_count}")
        if tails.size and (
            tails.min() < 0
            or heads.min() < 0
            or tails.max() >= self.vertex_count
            or heads.max() >= self.vertex_count
        ):
            raise MalformedGraph("arc endpoint outside [0, vertex_count)")
        for name in ("source", "terminal"):
            v = getattr(self, name)
            if not 0 <= v < self.vertex_count:
                raise MalformedGraph(f"{name} {v} outside [0, {self.vertex_count})")
        if self.source == self.terminal:
            raise MalformedGraph("source and terminal must differ")
        display = self.display_ids
        if display is None:
            display = np.arange(tails.size, dtype=np.int64)
        else:
            display = np.ascontiguousarray(np.asarray(display, dtype=np.int64))
            if display.shape != tails.shape:
                raise MalformedGraph("display_ids length must match arc count")
        for arr in (tails, heads, display):
            arr.setflags(write=False)
        object.__setattr__(self, "tails", tails)
        object.__setattr__(self, "heads", heads)
        object.__setattr__(self, "display_ids", display)

    @property
    def edge_count(self) -> int:
        return int(self.tails.size)

    @cached_property
    def _csr(self):
        # adjacency sorted by (tail, arc id); arc id order is what the
        # lexicographic tie-break is defined over
        order = np.lexsort((np.arange(self.edge_count), self.tails))
        adj_eid = np.ascontiguousarray(order.astype(np.int64))
        adj_head = np.ascontiguousarray(self.heads[order])
        indptr = np.zeros(self.vertex_count + 1, dtype=np.int64)
        np.add.at(indptr, self.tails + 1, 1)
        np.cumsum(indptr, out=indptr)
        return indptr, adj_eid, adj_head


@dataclass(frozen=True)
class EdgeWeights:
    """Nonnegative finite weights, one per arc."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.ascontiguousarray(np.asarray(self.values, dtype=np.float64))
        if vals.ndim != 1:
            raise MalformedGraph("weights must be a 1-d array")
        if vals.size and not np.all(np.isfinite(vals)):
            raise MalformedGraph("weights must be finite")
        if vals.size and vals.min() < 0.0:
            raise MalformedGraph("negative edge weights are not allowed")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class Path:
    """A simple source-terminal path as an ordered tuple of arc ids."""

    edge_ids: Tuple[int, ...]
    total_weight: float

    def __post_init__(self):
        object.__setattr__(self, "edge_ids", tuple(int(e) for e in self.edge_ids))
        object.__setattr__(self, "total_weight", float(self.total_weight))


def _as_weight_array(graph: Graph, weights) -> np.ndarray:
    vals = weights.values if isinstance(weights, EdgeWeights) else EdgeWeights(weights).values
    if vals.size != graph.edge_count:
        raise MalformedGraph(
            f"{vals.size} weights for {graph.edge_count} arcs"
        )
    return vals


def dijkstra_canonical(
    graph: Graph, weights, allowed: Optional[PrunedSet] = None
) -> Tuple[Optional[Path], int]:
    """Canonical shortest path; returns (path or None, settle count).

    ``allowed`` restricts relaxation to the given arc ids; None means
    the full arc set. No reachable terminal gives (None, work).
    """
    vals = _as_weight_array(graph, weights)
    if allowed is None:
        mask = np.ones(graph.edge_count, dtype=np.uint8)
    else:
        if allowed.universe_size != graph.edge_count:
            raise MalformedGraph(
                f"pruned set universe {allowed.universe_size} does not match "
                f"arc count {graph.edge_count}"
            )
        mask = allowed.to_mask()
    indptr, adj_eid, adj_head = graph._csr
    found, work, total, path = dijkstra_kernel(
        graph.vertex_count,
        indptr,
        adj_eid,
        adj_head,
        vals,
        mask,
        graph.source,
        graph.terminal,
    )
    if not found:
        return None, int(work)
    return Path(tuple(int(e) for e in path), float(total)), int(work)


def sp_witness(path: Optional[Path], universe_size: int) -> PrunedSet:
    """The arc set of a returned path. Raises BotWitness on None."""
    if path is None:
        raise BotWitness("no-path result has no witness")
    return PrunedSet.of(path.edge_ids, universe_size)


class ShortestPathOracle:
    """Domain oracle: instances are EdgeWeights over one fixed graph.

    Full solves on a disconnected round return None with an empty
    witness; restricting can never create a path the full graph lacks,
    so exploring such rounds has nothing to add.
    """

    def __init__(self, graph: Graph):
        self.graph = graph
        self.universe_size = graph.edge_count

    def solve(self, instance, allowed: Optional[PrunedSet] = None) -> SolveOutcome:
        path, work = dijkstra_canonical(self.graph, instance, allowed)
        if allowed is not None:
            return SolveOutcome(solution=path, witness=None, work=work)
        if path is None:
            witness = PrunedSet.empty(self.universe_size)
        else:
            witness = sp_witness(path, self.universe_size)
        return SolveOutcome(solution=path, witness=witness, work=work)

    def equal(self, a: Optional[Path], b: Optional[Path]) -> bool:
        if a is None or b is None:
            return a is None and b is None
        return a.edge_ids == b.edge_ids


# -- edge-list file format ---------------------------------------------------
#
# Header: "directed V E" or "undirected V E". Then E lines "tail head
# weight". Arc ids follow line order; an undirected line i becomes arcs
# 2i (as written) and 2i+1 (reversed), both with display id i.


def write_edge_list(graph: Graph, weights: EdgeWeights, path) -> None:
    vals = _as_weight_array(graph, weights)
    with open(path, "w") as fh:
        fh.write(f"directed {graph.vertex_count} {graph.edge_count}\n")
        for t, h, w in zip(graph.tails, graph.heads, vals):
            fh.write(f"{int(t)} {int(h)} {float(w)!r}\n")


def load_edge_list(path, source: int, terminal: int) -> Tuple[Graph, EdgeWeights]:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise MalformedGraph(f"{path}: empty edge-list file")
    head = lines[0].split()
    if len(head) != 3 or head[0] not in ("directed", "undirected"):
        raise MalformedGraph(f"{path}: header must be 'directed|undirected V E'")
    try:
        n_vertices, n_lines = int(head[1]), int(head[2])
    except ValueError as exc:
        raise MalformedGraph(f"{path}: bad header counts") from exc
    body = lines[1:]
    if len(body) != n_lines:
        raise MalformedGraph(
            f"{path}: header promises {n_lines} edges, file has {len(body)}"
        )
    tails, heads, weights, display = [], [], [], []
    for i, ln in enumerate(body):
        parts = ln.split()
        if len(parts) != 3:
            raise MalformedGraph(f"{path}: line {i + 2}: expected 'tail head weight'")
        try:
            t, h, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError as exc:
            raise MalformedGraph(f"{path}: line {i + 2}: {exc}") from exc
        if head[0] == "directed":
            tails.append(t)
            heads.append(h)
            weights.append(w)
            display.append(i)
        else:
            tails.extend((t, h))
            heads.extend((h, t))
            weights.extend((w, w))
            display.extend((i, i))
    graph = Graph(
        vertex_count=n_vertices,
        tails=np.asarray(tails, dtype=np.int64),
        heads=np.asarray(heads, dtype=np.int64),
        source=source,
        terminal=terminal,
        directed=(head[0] == "directed"),
        display_ids=np.asarray(display, dtype=np.int64),
    )
    return graph, EdgeWeights(np.asarray(weights, dtype=np.float64))
