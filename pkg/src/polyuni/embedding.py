"""Rotation systems, face tracing and polyhedron validation.

Conventions used throughout the package:

* vertices are ``0..p-1``; ``rot[v]`` lists the neighbours of ``v`` in
  clockwise order;
* a face is traced by arriving at ``v`` from ``u`` and leaving towards the
  neighbour that follows ``u`` in ``rot[v]``. Every traced boundary is
  called clockwise, and the face on the other side of the dart ``u -> v``
  is the one containing ``v -> u``;
* indices into a face boundary are 0-based and taken mod n.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AsymmetricAdjacency,
    DegreeTooLow,
    DuplicateNeighbor,
    NotGenusZero,
    NotThreeConnected,
    NotTwoConnected,
    PreconditionNotTwoConnected,
    SelfLoop,
)

DegreeSequence = tuple[int, ...]


@dataclass(frozen=True)
class RotationSystem:
    p: int
    rot: tuple[tuple[int, ...], ...]

    @cached_property
    def q(self) -> int:
        return sum(len(r) for r in self.rot) // 2

    @cached_property
    def position(self) -> tuple[dict[int, int], ...]:
        """``position[v][u]`` is the index of ``u`` in ``rot[v]``."""
        return tuple({u: k for k, u in enumerate(r)} for r in self.rot)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(r) for r in self.rot)

    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        offsets = np.zeros(self.p + 1, np.int64)
        offsets[1:] = np.cumsum([len(r) for r in self.rot])
        nbrs = np.fromiter((u for r in self.rot for u in r), np.int64, int(offsets[-1]))
        return offsets, nbrs

    def edges(self) -> list[tuple[int, int]]:
        return [(v, u) for v, r in enumerate(self.rot) for u in r if v < u]

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def succ(self, v: int, u: int) -> int:
        """Neighbour following ``u`` in the rotation at ``v``."""
        r = self.rot[v]
        return r[(self.position[v][u] + 1) % len(r)]

    def pred(self, v: int, u: int) -> int:
        r = self.rot[v]
        return r[(self.position[v][u] - 1) % len(r)]

    def mirrored(self) -> RotationSystem:
        return RotationSystem(self.p, tuple(tuple(reversed(r)) for r in self.rot))

    def relabeled(self, perm: Sequence[int]) -> RotationSystem:
        """Rename vertex ``v`` to ``perm[v]``."""
        rot: list[tuple[int, ...]] = [()] * self.p
        for v, r in enumerate(self.rot):
            rot[perm[v]] = tuple(perm[u] for u in r)
        return RotationSystem(self.p, tuple(rot))


@dataclass(frozen=True)
class Face:
    id: int
    boundary: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.boundary)

    @property
    def darts(self) -> list[tuple[int, int]]:
        b = self.boundary
        return [(b[t], b[(t + 1) % len(b)]) for t in range(len(b))]

    @property
    def key(self) -> tuple[int, ...]:
        """Rotation-normalised boundary; equal keys mean the same oriented face."""
        b = self.boundary
        k = b.index(min(b))
        return b[k:] + b[:k]

    def index(self, v: int) -> int:
        return self.boundary.index(v)


def build_rotation_system(p: int, lists: Sequence[Iterable[int]]) -> RotationSystem:
    """Validate per-vertex neighbour lists and freeze them into a RotationSystem."""
    if len(lists) != p:
        raise ValueError(f"expected {p} neighbour lists, got {len(lists)}")
    rot = tuple(tuple(int(u) for u in r) for r in lists)
    for v, r in enumerate(rot):
        if p >= 2 and not r:
            raise NotTwoConnected(f"vertex {v} is isolated")
        if v in r:
            raise SelfLoop(f"vertex {v} lists itself")
        if len(set(r)) != len(r):
            raise DuplicateNeighbor(f"vertex {v} lists a neighbour twice")
        for u in r:
            if not 0 <= u < p:
                raise ValueError(f"vertex {v} lists out-of-range neighbour {u}")
    for v, r in enumerate(rot):
        for u in r:
            if v not in rot[u]:
                raise AsymmetricAdjacency(f"{u} in rot({v}) but {v} not in rot({u})")
    return RotationSystem(p, rot)


def trace_faces(rs: RotationSystem) -> list[Face]:
    """Partition the darts of ``rs`` into face walks."""
    seen: set[tuple[int, int]] = set()
    faces: list[Face] = []
    for v, r in enumerate(rs.rot):
        for u in r:
            if (v, u) in seen:
                continue
            walk = []
            a, b = v, u
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append(a)
                a, b = b, rs.succ(b, a)
            faces.append(Face(len(faces), tuple(walk)))
    return faces


def _is_connected(rs: RotationSystem) -> bool:
    if rs.p == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        for u in rs.rot[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == rs.p


def faces_intersect_properly(faces: Sequence[Face]) -> bool:
    """Every two faces meet in nothing, one vertex, or exactly one shared edge."""
    on = defaultdict(list)
    for fi, f in enumerate(faces):
        for v in f.boundary:
            on[v].append(fi)
    shared: dict[tuple[int, int], list[int]] = defaultdict(list)
    for v, fs in on.items():
        for x in range(len(fs)):
            for y in range(x + 1, len(fs)):
                shared[(fs[x], fs[y])].append(v)
    for (fa, fb), vs in shared.items():
        if len(vs) == 1:
            continue
        if len(vs) > 2:
            return False
        a, b = vs
        da = set(faces[fa].darts)
        if (a, b) not in da and (b, a) not in da:
            return False
        db = set(faces[fb].darts)
        if (a, b) not in db and (b, a) not in db:
            return False
    return True


def check_planar_two_connected(rs: RotationSystem, faces: Sequence[Face] | None = None) -> list[Face]:
    """Raise unless ``rs`` is a connected genus-0 embedding whose faces are simple cycles."""
    if faces is None:
        faces = trace_faces(rs)
    if not _is_connected(rs):
        raise NotTwoConnected("graph is disconnected")
    if rs.p - rs.q + len(faces) != 2:
        raise NotGenusZero(f"p - q + r = {rs.p - rs.q + len(faces)}, expected 2")
    for f in faces:
        if len(set(f.boundary)) != len(f.boundary) or len(f.boundary) < 3:
            raise NotTwoConnected(f"face walk {list(f.boundary)} is not a simple cycle")
    return list(faces)


@dataclass(frozen=True)
class Polyhedron:
    rs: RotationSystem
    faces: tuple[Face, ...]
    degseq: DegreeSequence

    @property
    def p(self) -> int:
        return self.rs.p

    @property
    def q(self) -> int:
        return self.rs.q

    @cached_property
    def face_of_dart(self) -> dict[tuple[int, int], Face]:
        return {d: f for f in self.faces for d in f.darts}

    def faces_containing(self, *vs: int) -> list[Face]:
        return [f for f in self.faces if all(v in f.boundary for v in vs)]

    def find_face(self, cycle: Sequence[int]) -> Face:
        """Look up a face by its vertex cycle, in either orientation."""
        target = set(cycle)
        for f in self.faces:
            if len(f) == len(cycle) and set(f.boundary) == target:
                return f
        raise KeyError(f"no face with vertices {sorted(target)}")


def validate_polyhedron(rs: RotationSystem) -> Polyhedron:
    if rs.p < 4:
        raise DegreeTooLow(f"p = {rs.p} < 4")
    low = [v for v in range(rs.p) if rs.degree(v) < 3]
    if low:
        raise DegreeTooLow(f"vertices {low} have degree < 3")
    faces = check_planar_two_connected(rs)
    if not faces_intersect_properly(faces):
        raise NotThreeConnected("two faces share two non-adjacent vertices or more than one edge")
    return Polyhedron(rs, tuple(faces), degree_sequence_of(rs))


def degree_sequence_of(rs: RotationSystem) -> DegreeSequence:
    return tuple(sorted((len(r) for r in rs.rot), reverse=True))


def degree_sequence(g: Polyhedron) -> DegreeSequence:
    return g.degseq


def dual(g: Polyhedron) -> Polyhedron:
    fod = g.face_of_dart
    index = {f.key: k for k, f in enumerate(g.faces)}
    rot = []
    for f in g.faces:
        rot.append(tuple(index[fod[(b, a)].key] for a, b in f.darts))
    return validate_polyhedron(RotationSystem(len(rot), tuple(rot)))


def face_neighbors(g: Polyhedron, f: Face) -> list[Face]:
    """Entry i is the face across the edge ``u_i u_{i+1}`` of ``f``."""
    fod = g.face_of_dart
    return [fod[(b, a)] for a, b in f.darts]


def is_pyramid(g: Polyhedron) -> tuple[int, Face] | None:
    """Return ``(apex, base)`` if ``g`` is a wheel, else None."""
    p = g.p
    for v in range(p):
        if g.rs.degree(v) != p - 1:
            continue
        if all(g.rs.degree(u) == 3 for u in range(p) if u != v):
            base = next(f for f in g.faces if v not in f.boundary)
            if len(base) == p - 1:
                return v, base
    return None


def mirror(g: Polyhedron) -> Polyhedron:
    rs = g.rs.mirrored()
    faces = tuple(Face(f.id, tuple(reversed(f.boundary))) for f in g.faces)
    return Polyhedron(rs, faces, g.degseq)


# -- standard examples used by tests, docs and the CLI ------------------------


def from_adjacency_cycles(lists: Sequence[Sequence[int]]) -> RotationSystem:
    return build_rotation_system(len(lists), lists)


def tetrahedron() -> Polyhedron:
    return validate_polyhedron(from_adjacency_cycles([(1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1)]))


def pyramid(n: int) -> Polyhedron:
    """n-gonal pyramid: apex 0, base cycle 1..n."""
    if n < 3:
        raise ValueError("pyramid needs a base of at least 3 vertices")
    rot = [tuple(range(1, n + 1))]
    for k in range(1, n + 1):
        prv = n if k == 1 else k - 1
        nxt = 1 if k == n else k + 1
        rot.append((0, prv, nxt))
    return validate_polyhedron(from_adjacency_cycles(rot))


def prism(n: int) -> Polyhedron:
    """n-gonal prism: top cycle 0..n-1, bottom cycle n..2n-1, rungs k -- n+k."""
    if n < 3:
        raise ValueError("prism needs n >= 3")
    rot = []
    for k in range(n):
        rot.append(((k + 1) % n, (k - 1) % n, n + k))
    for k in range(n):
        rot.append((n + (k - 1) % n, n + (k + 1) % n, k))
    return validate_polyhedron(from_adjacency_cycles(rot))


def cube() -> Polyhedron:
    return prism(4)


def octahedron() -> Polyhedron:
    # vertices 0/5 poles, 1..4 equator
    rot = [(1, 2, 3, 4), (0, 4, 5, 2), (0, 1, 5, 3), (0, 2, 5, 4), (0, 3, 5, 1), (1, 4, 3, 2)]
    return validate_polyhedron(from_adjacency_cycles(rot))
