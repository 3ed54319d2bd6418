"""Canonical codes for polyhedra.

A 3-connected planar graph has a unique embedding up to reflection, so the
least relabelled planar-code body over all start darts and both chiralities
is a complete isomorphism invariant.
"""

from __future__ import annotations

import numpy as np

from .embedding import Polyhedron, RotationSystem, mirror
from .kernels import canonical_body

CanonicalCode = bytes

__all__ = [
    "CanonicalCode",
    "canonical_code",
    "code_of_rotation",
    "is_isomorphic",
    "mirror",
    "brute_force_isomorphic",
]


def encode_body(p: int, body: np.ndarray) -> bytes:
    if p <= 255:
        return bytes([p]) + body.astype(np.uint8).tobytes()
    # plantri's wide variant: a 0 byte, then big-endian 16-bit entries
    return b"\x00" + np.concatenate(([p], body)).astype(">u2").tobytes()


def code_of_rotation(rs: RotationSystem) -> CanonicalCode:
    """Canonical code of a connected embedding (complete for 3-connected ones)."""
    offsets, nbrs = rs.arrays
    return encode_body(rs.p, canonical_body(offsets, nbrs))


def canonical_code(g: Polyhedron) -> CanonicalCode:
    return code_of_rotation(g.rs)


def is_isomorphic(g: Polyhedron, h: Polyhedron) -> bool:
    if g.p != h.p or g.q != h.q or g.degseq != h.degseq:
        return False
    return canonical_code(g) == canonical_code(h)


def brute_force_isomorphic(g: RotationSystem, h: RotationSystem) -> bool:
    """Try every degree-respecting vertex bijection. Only for small graphs."""
    if g.p != h.p or g.q != h.q:
        return False
    gd = [len(r) for r in g.rot]
    hd = [len(r) for r in h.rot]
    if sorted(gd) != sorted(hd):
        return False
    gadj = g.adjacency
    hedges = {frozenset(e) for e in h.edges()}
    candidates = [[w for w in range(h.p) if hd[w] == gd[v]] for v in range(g.p)]
    order = sorted(range(g.p), key=lambda v: len(candidates[v]))
    image: dict[int, int] = {}
    used: set[int] = set()

    def extend(t: int) -> bool:
        if t == len(order):
            return True
        v = order[t]
        for w in candidates[v]:
            if w in used:
                continue
            if any((u in image) and frozenset((w, image[u])) not in hedges for u in gadj[v]):
                continue
            image[v] = w
            used.add(w)
            if extend(t + 1):
                return True
            del image[v]
            used.discard(w)
        return False

    # edge count equal + every g-edge mapped to an h-edge => bijection on edges
    return extend(0)

