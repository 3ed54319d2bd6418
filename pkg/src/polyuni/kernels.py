"""Hot inner loops over flat rotation arrays.

A rotation system is passed as two int64 arrays: ``offsets`` (length p+1)
and ``nbrs`` (length 2q), the neighbours of vertex v being
``nbrs[offsets[v]:offsets[v+1]]`` in rotation order. Flat index e into
``nbrs`` names the dart from the owning vertex to ``nbrs[e]``.
"""

from __future__ import annotations

import numpy as np

from ._accel import kernel


@kernel
def dart_twins(offsets, nbrs):
    p = offsets.shape[0] - 1
    m = nbrs.shape[0]
    twin = np.full(m, -1, np.int64)
    for v in range(p):
        for e in range(offsets[v], offsets[v + 1]):
            w = nbrs[e]
            for f in range(offsets[w], offsets[w + 1]):
                if nbrs[f] == v:
                    twin[e] = f
                    break
    return twin


@kernel
def canonical_body(offsets, nbrs):
    """Lexicographically least relabelled planar-code body over all darts and both chiralities.

    For every start dart and direction a BFS relabels the vertices; each
    vertex emits the labels of its neighbours in rotation order beginning
    at the dart it was discovered from, then a 0. Candidates are abandoned
    as soon as they exceed the current best prefix.
    """
    p = offsets.shape[0] - 1
    m = nbrs.shape[0]
    twin = dart_twins(offsets, nbrs)
    tail = np.empty(m, np.int64)
    for v in range(p):
        for e in range(offsets[v], offsets[v + 1]):
            tail[e] = v
    size = p + m
    best = np.zeros(size, np.int64)
    cand = np.zeros(size, np.int64)
    label = np.zeros(p, np.int64)
    order = np.zeros(p, np.int64)
    entry = np.zeros(p, np.int64)
    have_best = False
    for start in range(m):
        for step in (1, -1):
            for v in range(p):
                label[v] = 0
            v0 = tail[start]
            label[v0] = 1
            order[0] = v0
            entry[v0] = start
            nlab = 1
            head = 0
            pos = 0
            # 0: equal to best so far, -1: already smaller, 1: larger (abort)
            state = 0 if have_best else -1
            while head < nlab and state != 1:
                x = order[head]
                head += 1
                base = offsets[x]
                deg = offsets[x + 1] - base
                k0 = entry[x] - base
                for t in range(deg):
                    e = base + (k0 + step * t) % deg
                    z = nbrs[e]
                    if label[z] == 0:
                        nlab += 1
                        label[z] = nlab
                        order[nlab - 1] = z
                        entry[z] = twin[e]
                    val = label[z]
                    if state == 0:
                        if val < best[pos]:
                            state = -1
                        elif val > best[pos]:
                            state = 1
                            break
                    cand[pos] = val
                    pos += 1
                if state == 1:
                    break
                if state == 0 and best[pos] > 0:
                    state = -1
                elif state == 0 and best[pos] < 0:
                    state = 1
                    break
                cand[pos] = 0
                pos += 1
            if state == -1 and pos == size:
                for t in range(size):
                    best[t] = cand[t]
                have_best = True
    return best


@kernel
def _components_without(offsets, nbrs, a, b, seen, stack):
    p = offsets.shape[0] - 1
    for v in range(p):
        seen[v] = False
    if a >= 0:
        seen[a] = True
    if b >= 0:
        seen[b] = True
    comps = 0
    for s in range(p):
        if seen[s]:
            continue
        comps += 1
        if comps > 1:
            return comps
        seen[s] = True
        top = 0
        stack[top] = s
        top += 1
        while top > 0:
            top -= 1
            x = stack[top]
            for e in range(offsets[x], offsets[x + 1]):
                z = nbrs[e]
                if not seen[z]:
                    seen[z] = True
                    stack[top] = z
                    top += 1
    return comps


@kernel
def separating_sets(offsets, nbrs, k):
    """Exhaustively test removal of every vertex set of size < k (k <= 3).

    Returns ``(disconnected, single, pair)``: whether the graph itself is
    disconnected, a boolean per vertex, and a boolean upper-triangular
    p x p matrix of disconnecting pairs.
    """
    p = offsets.shape[0] - 1
    seen = np.zeros(p, np.bool_)
    stack = np.zeros(p, np.int64)
    single = np.zeros(p, np.bool_)
    pair = np.zeros((p, p), np.bool_)
    disconnected = _components_without(offsets, nbrs, -1, -1, seen, stack) > 1
    if k >= 2:
        for a in range(p):
            single[a] = _components_without(offsets, nbrs, a, -1, seen, stack) > 1
    if k >= 3:
        for a in range(p):
            for b in range(a + 1, p):
                pair[a, b] = _components_without(offsets, nbrs, a, b, seen, stack) > 1
    return disconnected, single, pair
