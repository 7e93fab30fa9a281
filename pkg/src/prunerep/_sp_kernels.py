"""Heap and search kernels for the canonical shortest-path solver.

Everything here is plain loops over preallocated NumPy arrays so the
same source compiles under numba or runs uncompiled (see _accel).

Search entries form a label tree: entry e extends entry ent_pred[e] by
edge ent_edge[e]. Heap order is (distance, edge-id sequence) with the
sequence compared lexicographically root-first, and only consulted on
exact distance ties. A proper sequence prefix sorts before its
extensions.
"""

import numpy as np

from ._accel import maybe_njit


@maybe_njit(cache=True)
def _seq_fill(e, ent_pred, ent_edge, ent_depth, buf):
    """Write entry e's root-first edge-id sequence into buf; returns length."""
    d = ent_depth[e]
    i = d - 1
    cur = e
    while i >= 0:
        buf[i] = ent_edge[cur]
        cur = ent_pred[cur]
        i -= 1
    return d


@maybe_njit(cache=True)
def _entry_less(a, b, ent_dist, ent_pred, ent_edge, ent_depth, buf_a, buf_b):
    if ent_dist[a] < ent_dist[b]:
        return True
    if ent_dist[b] < ent_dist[a]:
        return False
    da = _seq_fill(a, ent_pred, ent_edge, ent_depth, buf_a)
    db = _seq_fill(b, ent_pred, ent_edge, ent_depth, buf_b)
    m = da if da < db else db
    for i in range(m):
        if buf_a[i] != buf_b[i]:
            return buf_a[i] < buf_b[i]
    return da < db


@maybe_njit(cache=True)
def _heap_push(heap, n, e, ent_dist, ent_pred, ent_edge, ent_depth, buf_a, buf_b):
    heap[n] = e
    i = n
    while i > 0:
        parent = (i - 1) >> 1
        if _entry_less(
            heap[i], heap[parent], ent_dist, ent_pred, ent_edge, ent_depth, buf_a, buf_b
        ):
            tmp = heap[i]
            heap[i] = heap[parent]
            heap[parent] = tmp
            i = parent
        else:
            break
    return n + 1


@maybe_njit(cache=True)
def _heap_pop(heap, n, ent_dist, ent_pred, ent_edge, ent_depth, buf_a, buf_b):
    root = heap[0]
    n -= 1
    if n > 0:
        heap[0] = heap[n]
        i = 0
        while True:
            left = 2 * i + 1
            right = left + 1
            best = i
            if left < n and _entry_less(
                heap[left], heap[best], ent_dist, ent_pred, ent_edge, ent_depth, buf_a, buf_b
            ):
                best = left
            if right < n and _entry_less(
                heap[right], heap[best], ent_dist, ent_pred, ent_edge, ent_depth, buf_a, buf_b
            ):
                best = right
            if best == i:
                break
            tmp = heap[i]
            heap[i] = heap[best]
            heap[best] = tmp
            i = best
    return root, n


@maybe_njit(cache=True)
def dijkstra_kernel(
    n_vertices, indptr, adj_eid, adj_head, weights, allowed, source, terminal
):
    """Settle vertices in (distance, edge-sequence) order.

    Relaxation happens once per arc (when its tail settles), so entry
    capacity n_edges + 1 suffices without decrease-key. Returns
    (found, work, total weight, path edge ids); work counts settle
    events including source and terminal.
    """
    n_edges = adj_eid.shape[0]
    cap = n_edges + 1
    ent_pred = np.empty(cap, np.int64)
    ent_edge = np.empty(cap, np.int64)
    ent_vert = np.empty(cap, np.int64)
    ent_depth = np.empty(cap, np.int64)
    ent_dist = np.empty(cap, np.float64)
    heap = np.empty(cap, np.int64)
    buf_a = np.empty(n_vertices + 1, np.int64)
    buf_b = np.empty(n_vertices + 1, np.int64)
    settled = np.zeros(n_vertices, np.uint8)

    ent_pred[0] = -1
    ent_edge[0] = -1
    ent_vert[0] = source
    ent_depth[0] = 0
    ent_dist[0] = 0.0
    n_ent = 1
    heap_n = _heap_push(heap, 0, 0, ent_dist, ent_pred, ent_edge, ent_depth, buf_a, buf_b)

    work = 0
    final_entry = -1
    while heap_n > 0:
        e, heap_n = _heap_pop(
            heap, heap_n, ent_dist, ent_pred, ent_edge, ent_depth, buf_a, buf_b
        )
        v = ent_vert[e]
        if settled[v] == 1:
            continue
        settled[v] = 1
        work += 1
        if v == terminal:
            final_entry = e
            break
        for k in range(indptr[v], indptr[v + 1]):
            eid = adj_eid[k]
            if allowed[eid] == 0:
                continue
            h = adj_head[k]
            if settled[h] == 1:
                continue
            ent_pred[n_ent] = e
            ent_edge[n_ent] = eid
            ent_vert[n_ent] = h
            ent_depth[n_ent] = ent_depth[e] + 1
            ent_dist[n_ent] = ent_dist[e] + weights[eid]
            heap_n = _heap_push(
                heap, heap_n, n_ent, ent_dist, ent_pred, ent_edge, ent_depth, buf_a, buf_b
            )
            n_ent += 1

    if final_entry < 0:
        return 0, work, 0.0, np.empty(0, np.int64)

    d = ent_depth[final_entry]
    path = np.empty(d, np.int64)
    cur = final_entry
    i = d - 1
    while i >= 0:
        path[i] = ent_edge[cur]
        cur = ent_pred[cur]
        i -= 1
    return 1, work, ent_dist[final_entry], path
