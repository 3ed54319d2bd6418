"""Degree-preserving edge surgeries on a polyhedron with a distinguished face.

Every transform takes a validated :class:`Polyhedron` ``g`` and a face ``f``
of it, with ``f.boundary = (u_0, ..., u_{n-1})`` and indices read mod n.
``F_i`` is the face across the edge ``u_i u_{i+1}``. Parameter errors raise
:class:`PreconditionFailed`; a non-simple or non-polyhedral result is
returned as a rejected :class:`TransformOutcome`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

import networkx as nx

from .embedding import (
    Face,
    Polyhedron,
    RotationSystem,
    face_neighbors,
    trace_faces,
    validate_polyhedron,
)
from .errors import (
    DegreeTooLow,
    NotGenusZero,
    NotThreeConnected,
    NotTwoConnected,
    PreconditionFailed,
)
from .isomorphism import code_of_rotation

KINDS = ("T1", "T2", "T3", "U2", "U3", "Phi", "Psi")


class SurgeryError(RuntimeError):
    """A rewiring produced a non-planar embedding; always a bug, never data."""


@dataclass(frozen=True)
class TransformInstance:
    kind: str
    face: tuple[int, ...]
    params: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "face": list(self.face), "params": dict(self.params)}


@dataclass(frozen=True)
class TransformOutcome:
    instance: TransformInstance
    result: Polyhedron | None
    rotation: RotationSystem | None
    rejection_reason: str | None
    is_isomorphic_to_input: bool | None
    added: tuple[tuple[int, int], ...] = ()
    removed: tuple[tuple[int, int], ...] = ()
    detail: str = ""

    @property
    def valid(self) -> bool:
        return self.rejection_reason is None


@lru_cache(maxsize=4096)
def _code(rs: RotationSystem) -> bytes:
    return code_of_rotation(rs)


def _mutable(g: Polyhedron) -> list[list[int]]:
    return [list(r) for r in g.rs.rot]


def _freeze(rot: list[list[int]]) -> RotationSystem:
    return RotationSystem(len(rot), tuple(tuple(r) for r in rot))


def _finish(
    g: Polyhedron,
    inst: TransformInstance,
    rot: list[list[int]],
    added,
    removed,
    detail: str = "",
) -> TransformOutcome:
    rs = _freeze(rot)
    try:
        h = validate_polyhedron(rs)
    except NotGenusZero as exc:
        raise SurgeryError(f"{inst.kind} {inst.params}: {exc}") from exc
    except (NotTwoConnected, NotThreeConnected, DegreeTooLow) as exc:
        return TransformOutcome(inst, None, rs, type(exc).__name__, None, tuple(added), tuple(removed), str(exc))
    iso = _code(h.rs) == _code(g.rs)
    return TransformOutcome(inst, h, rs, None, iso, tuple(added), tuple(removed), detail)


def _non_simple(inst: TransformInstance, added, removed, detail: str) -> TransformOutcome:
    return TransformOutcome(inst, None, None, "NonSimple", None, tuple(added), tuple(removed), detail)


def _net(add: list[tuple[int, int]], remove: list[tuple[int, int]]):
    """Cancel edges that are both added and removed (degenerate corners)."""
    add_keys = [frozenset(e) for e in add]
    rem_keys = [frozenset(e) for e in remove]
    common = set(add_keys) & set(rem_keys)
    return (
        [e for e, k in zip(add, add_keys) if k not in common],
        [e for e, k in zip(remove, rem_keys) if k not in common],
    )


def _insert_chord(rot: list[list[int]], a: int, b: int, bd: tuple[int, ...]) -> None:
    n = len(bd)
    for x, y in ((a, b), (b, a)):
        prev = bd[(bd.index(x) - 1) % n]
        r = rot[x]
        r.insert(r.index(prev) + 1, y)


def _reembed(p: int, edges: set[frozenset[int]]) -> list[list[int]] | None:
    """Embed an edge set from scratch; None if it is not planar."""
    h = nx.Graph()
    h.add_nodes_from(range(p))
    h.add_edges_from(tuple(e) for e in edges)
    planar, emb = nx.check_planarity(h)
    if not planar:
        return None
    return [list(emb.neighbors_cw_order(v)) for v in range(p)]


def _rewire(g: Polyhedron, inst: TransformInstance, add, remove) -> TransformOutcome:
    """Insert each new edge through the face holding both ends, then delete.

    Inserting chords into faces of a plane embedding keeps it plane, and so
    does deleting edges. In degenerate corner coincidences an earlier chord
    can split the face a later one needs; the result is then re-embedded from
    its edge set (the embedding of a 3-connected planar graph is unique up to
    reflection, so nothing downstream depends on which route was taken).
    """
    add, remove = _net(add, remove)
    rot = _mutable(g)
    for a, b in add:
        if b in rot[a]:
            return _non_simple(inst, add, remove, f"edge {a}-{b} already present")
    for a, b in add:
        hosts = [f for f in trace_faces(_freeze(rot)) if a in f.boundary and b in f.boundary]
        if len(hosts) != 1:
            break
        _insert_chord(rot, a, b, hosts[0].boundary)
    else:
        for a, b in remove:
            rot[a].remove(b)
            rot[b].remove(a)
        return _finish(g, inst, rot, add, remove)
    edges = {frozenset(e) for e in g.rs.edges()}
    edges |= {frozenset(e) for e in add}
    edges -= {frozenset(e) for e in remove}
    rot = _reembed(g.p, edges)
    if rot is None:
        return TransformOutcome(inst, None, None, "NotPlanar", None, tuple(add), tuple(remove), "edge set is not planar")
    return _finish(g, inst, rot, add, remove, detail="re-embedded")


def _check_face(g: Polyhedron, f: Face) -> Face:
    """Accept any cyclic shift of a traced face; its first vertex becomes u_0."""
    u = tuple(f.boundary)
    for h in g.faces:
        if len(h) == len(u) and h.key == Face(-1, u).key:
            return Face(h.id, u)
    raise PreconditionFailed(f"{list(u)} is not a face of the input (as traced)")


def cyclic_gap(i: int, j: int, n: int) -> int:
    """Distance between positions i and j on an n-cycle."""
    d = (j - i) % n
    return min(d, n - d)


def t1(g: Polyhedron, f: Face, i: int, j: int) -> TransformOutcome:
    """Swap the far ends of edges ``u_i u_{i+1}`` and ``u_j u_{j+1}`` inside ``f``."""
    face = _check_face(g, f)
    u = face.boundary
    n = len(u)
    if n < 6:
        raise PreconditionFailed(f"T1 needs a face of size >= 6, got {n}")
    i, j = i % n, j % n
    if not 3 <= cyclic_gap(i, j, n) <= n - 3:
        raise PreconditionFailed(f"T1 needs 3 <= |j-i| <= n-3, got i={i}, j={j}, n={n}")
    inst = TransformInstance("T1", u, {"i": i, "j": j})
    ui, ui1, uj, uj1 = u[i], u[(i + 1) % n], u[j], u[(j + 1) % n]
    return _rewire(g, inst, [(ui, uj1), (uj, ui1)], [(ui, ui1), (uj, uj1)])


def t2(g: Polyhedron, f: Face, i: int, k: int, j: int) -> TransformOutcome:
    """Move the first ``d - d'`` edges of the fan at ``u_i`` (starting at ``u_k``) onto ``u_j``."""
    face = _check_face(g, f)
    u = face.boundary
    n = len(u)
    if n < 4:
        raise PreconditionFailed(f"T2 needs a face of size >= 4, got {n}")
    i, k, j = i % n, k % n, j % n
    if k not in ((i + 1) % n, (i - 1) % n):
        raise PreconditionFailed("u_k must be a neighbour of u_i on the face")
    if not 2 <= cyclic_gap(k, j, n) <= n - 2:
        raise PreconditionFailed(f"T2 needs 2 <= |k-j| <= n-2, got k={k}, j={j}")
    ui, uj = u[i], u[j]
    d, dd = g.rs.degree(ui), g.rs.degree(uj)
    if not d > dd:
        raise PreconditionFailed(f"T2 needs deg(u_i) > deg(u_j), got {d} and {dd}")
    inst = TransformInstance("T2", u, {"i": i, "k": k, "j": j})
    w, step = _fan(g, u, i, k)
    moved = w[: d - dd]
    added = [(uj, x) for x in moved]
    removed = [(ui, x) for x in moved]
    clash = [x for x in moved if x == uj or x in g.rs.adjacency[uj]]
    if clash:
        return _non_simple(inst, added, removed, f"u_j already adjacent to {clash}")
    rot = _mutable(g)
    for x in moved:
        rx = rot[x]
        rx[rx.index(ui)] = uj
        rot[ui].remove(x)
    fan = moved if step == 1 else moved[::-1]
    rj = rot[uj]
    at = rj.index(u[(j - 1) % n]) + 1
    rj[at:at] = fan
    return _finish(g, inst, rot, added, removed)


def _fan(g: Polyhedron, u: tuple[int, ...], i: int, k: int) -> tuple[list[int], int]:
    n = len(u)
    ui = u[i % n]
    l = (i - 1) % n if k % n == (i + 1) % n else (i + 1) % n
    r = g.rs.rot[ui]
    d = len(r)
    pos = g.rs.position[ui][u[k % n]]
    step = -1 if r[(pos + 1) % d] == u[l] else 1
    return [r[(pos + step * t) % d] for t in range(d)], step


def t2_fan(g: Polyhedron, f: Face, i: int, k: int) -> list[int]:
    """Neighbours ``w_1 = u_k, ..., w_d = u_l`` of ``u_i``, sweeping away from the face."""
    return _fan(g, tuple(f.boundary), i, k)[0]


def t3_corners(g: Polyhedron, f: Face, i: int, x_i: int, j: int, x_j: int) -> dict[str, int]:
    """The successors a1 (of u_i), b1 (of x_i) on F_i and c1 (of u_j), d1 (of x_j) on F_j."""
    u = f.boundary
    n = len(u)
    nb = face_neighbors(g, f)

    def succ_on(face: Face, v: int) -> int:
        b = face.boundary
        return b[(b.index(v) + 1) % len(b)]

    fi, fj = nb[i % n], nb[j % n]
    return {
        "a1": succ_on(fi, u[i % n]),
        "b1": succ_on(fi, x_i),
        "c1": succ_on(fj, u[j % n]),
        "d1": succ_on(fj, x_j),
    }


def t3(g: Polyhedron, f: Face, i: int, x_i: int, j: int, x_j: int) -> TransformOutcome:
    face = _check_face(g, f)
    u = face.boundary
    n = len(u)
    if n < 4:
        raise PreconditionFailed(f"T3 needs a face of size >= 4, got {n}")
    i, j = i % n, j % n
    if not 2 <= cyclic_gap(i, j, n) <= n - 2:
        raise PreconditionFailed(f"T3 needs 2 <= |j-i| <= n-2, got i={i}, j={j}")
    nb = face_neighbors(g, face)
    if x_i == x_j:
        raise PreconditionFailed("x_i and x_j must be distinct")
    if x_i in u or x_j in u:
        raise PreconditionFailed("x_i and x_j must lie off F")
    if x_i not in nb[i].boundary or x_j not in nb[j].boundary:
        raise PreconditionFailed("need x_i on F_i and x_j on F_j")
    if x_j in g.rs.adjacency[x_i]:
        raise PreconditionFailed("x_i and x_j must not be adjacent")
    if not g.faces_containing(x_i, x_j):
        raise PreconditionFailed("x_i and x_j must lie on a common face")
    c = t3_corners(g, face, i, x_i, j, x_j)
    a1, b1, c1, d1 = c["a1"], c["b1"], c["c1"], c["d1"]
    ui, uj = u[i], u[j]
    inst = TransformInstance("T3", u, {"i": i, "x_i": x_i, "j": j, "x_j": x_j})
    add = [(ui, uj), (a1, b1), (x_i, x_j), (d1, c1)]
    remove = [(ui, a1), (b1, x_i), (x_j, d1), (c1, uj)]
    return _rewire(g, inst, add, remove)


def u_configuration(g: Polyhedron, f: Face, offset: int = 0) -> dict[str, int] | None:
    """Corners of the triangle-fan configuration with ``u_1 = u_offset``, or None.

    Requires F_2 = [u_2, u_3, x_1] to be a triangle and deg(u_2) = deg(u_3) = 3.
    """
    u = f.boundary
    n = len(u)
    r = offset % n
    u1, u2, u3, un = u[r], u[(r + 1) % n], u[(r + 2) % n], u[(r - 1) % n]
    nb = face_neighbors(g, f)
    f2 = nb[(r + 1) % n]
    if len(f2) != 3 or g.rs.degree(u2) != 3 or g.rs.degree(u3) != 3:
        return None
    x1 = next(v for v in f2.boundary if v not in (u2, u3))
    return {"u1": u1, "u2": u2, "u3": u3, "un": un, "x1": x1, "F1": nb[r], "F3": nb[(r + 2) % n]}


def u_move(g: Polyhedron, f: Face, variant: int, offset: int = 0) -> TransformOutcome:
    """``variant`` 2 gives G + u1x1 - x1u2 + u2un - unu1; 3 uses u3 in place of u2."""
    face = _check_face(g, f)
    u = face.boundary
    n = len(u)
    if variant not in (2, 3):
        raise PreconditionFailed("variant must be 2 or 3")
    if n < 5:
        raise PreconditionFailed(f"U move needs a face of size >= 5, got {n}")
    cfg = u_configuration(g, face, offset)
    if cfg is None:
        raise PreconditionFailed("no triangle fan [u2, u3, x1] with deg(u2) = deg(u3) = 3 at this offset")
    if len(cfg["F1"]) == 3:
        raise PreconditionFailed("F_1 is a triangle")
    inst = TransformInstance(f"U{variant}", u, {"offset": offset % n})
    u1, x1, un = cfg["u1"], cfg["x1"], cfg["un"]
    uv = cfg["u2"] if variant == 2 else cfg["u3"]
    return _rewire(g, inst, [(u1, x1), (uv, un)], [(x1, uv), (un, u1)])


def _zeta_targets(n: int, i: int) -> tuple[int, int]:
    return (i + n // 2) % n, (i + n // 2 - 1) % n


def phi(g: Polyhedron, f: Face, i: int) -> TransformOutcome:
    n = len(f)
    if n < 8:
        raise PreconditionFailed(f"phi/psi need a face of size >= 8, got {n}")
    out = t1(g, f, i, _zeta_targets(n, i)[0])
    return _retag(out, "Phi", i)


def psi(g: Polyhedron, f: Face, i: int) -> TransformOutcome:
    n = len(f)
    if n < 8:
        raise PreconditionFailed(f"phi/psi need a face of size >= 8, got {n}")
    out = t1(g, f, i, _zeta_targets(n, i)[1])
    return _retag(out, "Psi", i)


def _retag(out: TransformOutcome, kind: str, i: int) -> TransformOutcome:
    params = dict(out.instance.params)
    params["index"] = i
    inst = TransformInstance(kind, out.instance.face, params)
    return TransformOutcome(
        inst, out.result, out.rotation, out.rejection_reason, out.is_isomorphic_to_input,
        out.added, out.removed, out.detail,
    )


def zeta(g: Polyhedron, f: Face, i: int) -> tuple[TransformOutcome, str]:
    """phi_i unless its output is isomorphic to the input, in which case psi_i."""
    first = phi(g, f, i)
    if first.is_isomorphic_to_input:
        return psi(g, f, i), "psi"
    return first, "phi"


def apply(g: Polyhedron, inst: TransformInstance) -> TransformOutcome:
    """Run a described instance; precondition failures come back as rejected outcomes."""
    face = Face(-1, tuple(inst.face))
    p = inst.params
    try:
        if inst.kind == "T1":
            return t1(g, face, p["i"], p["j"])
        if inst.kind == "T2":
            return t2(g, face, p["i"], p["k"], p["j"])
        if inst.kind == "T3":
            return t3(g, face, p["i"], p["x_i"], p["j"], p["x_j"])
        if inst.kind in ("U2", "U3"):
            return u_move(g, face, int(inst.kind[1]), p.get("offset", 0))
        if inst.kind in ("Phi", "Psi"):
            face = g.find_face(inst.face)
            return (phi if inst.kind == "Phi" else psi)(g, face, p["index"] if "index" in p else p["i"])
    except PreconditionFailed as exc:
        return TransformOutcome(inst, None, None, "PreconditionFailed", None, detail=str(exc))
    raise ValueError(f"unknown transform kind {inst.kind!r}")
