"""Transform instance enumeration and the invariant checks shared by the
transform tests and the acceptance run."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from polyuni.connectivity import connectivity_oracle, is_three_connected_via_faces
from polyuni.embedding import Face, Polyhedron, face_neighbors, trace_faces
from polyuni.errors import PreconditionNotTwoConnected
from polyuni.transforms import TransformInstance, TransformOutcome, apply, t2_fan


def instances(g: Polyhedron) -> list[TransformInstance]:
    """Every T1, T2, T3, U2 and U3 parameter choice whose index ranges make sense."""
    out = []
    for f in g.faces:
        u = f.boundary
        n = len(u)
        for i in range(n):
            for j in range(i + 1, n):
                out.append(TransformInstance("T1", u, {"i": i, "j": j}))
        for i in range(n):
            for k in ((i + 1) % n, (i - 1) % n):
                for j in range(n):
                    if j != i:
                        out.append(TransformInstance("T2", u, {"i": i, "k": k, "j": j}))
        for r in range(n):
            out.append(TransformInstance("U2", u, {"offset": r}))
            out.append(TransformInstance("U3", u, {"offset": r}))
        nb = face_neighbors(g, f)
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for xi in nb[i].boundary:
                    for xj in nb[j].boundary:
                        if xi not in u and xj not in u:
                            out.append(TransformInstance("T3", u, {"i": i, "x_i": xi, "j": j, "x_j": xj}))
    return out


@dataclass
class Tally:
    applicable: int = 0
    accepted: int = 0
    by_kind: Counter = field(default_factory=Counter)
    rejections: Counter = field(default_factory=Counter)
    violations: list = field(default_factory=list)
    connectivity_checked: int = 0
    connectivity_disagreements: list = field(default_factory=list)
    t1_iso_checked: int = 0
    t1_failure_checked: int = 0
    t2_iso_checked: int = 0
    t2_iso_mismatch: list = field(default_factory=list)

    def fail(self, what: str, inst: TransformInstance) -> None:
        self.violations.append((what, inst.as_dict()))


def _t1_failure_pair_exists(g: Polyhedron, inst: TransformInstance, out: TransformOutcome) -> bool:
    u = inst.face
    n = len(u)
    i, j = inst.params["i"], inst.params["j"]
    f = g.find_face(u)
    nb = face_neighbors(g, Face(f.id, tuple(u)))
    fi, fj = set(nb[i].boundary), set(nb[j].boundary)
    report = connectivity_oracle(out.rotation, 3)
    for s in report.witnesses:
        if len(s) == 1:
            if s[0] in fi and s[0] in fj:
                return True
            continue
        for x, y in (s, s[::-1]):
            if x in fi and y in fj and any(h.key != f.key for h in g.faces_containing(x, y)):
                return True
    return False


def check_outcome(g: Polyhedron, inst: TransformInstance, out: TransformOutcome, tally: Tally) -> None:
    if out.rejection_reason == "PreconditionFailed":
        return
    tally.applicable += 1
    tally.by_kind[inst.kind] += 1
    if out.rejection_reason is not None:
        tally.rejections[out.rejection_reason] += 1
    rs = out.rotation
    if rs is not None:
        if sorted(map(len, rs.rot)) != sorted(map(len, g.rs.rot)):
            tally.fail("degree multiset", inst)
        if rs.q != g.q:
            tally.fail("edge count", inst)
        if rs.p - rs.q + len(trace_faces(rs)) != 2:
            tally.fail("euler", inst)
        try:
            by_faces = is_three_connected_via_faces(rs)
        except PreconditionNotTwoConnected:
            by_faces = False
        by_cuts = connectivity_oracle(rs, 3).kind == "three_connected"
        tally.connectivity_checked += 1
        if by_faces != by_cuts or by_faces != out.valid:
            tally.connectivity_disagreements.append(inst.as_dict())
    if out.valid:
        tally.accepted += 1
    u = inst.face
    n = len(u)
    if inst.kind == "T1" and out.valid and out.is_isomorphic_to_input:
        tally.t1_iso_checked += 1
        f = g.find_face(u)
        nb = face_neighbors(g, Face(f.id, tuple(u)))
        d = (inst.params["j"] - inst.params["i"]) % n
        sizes = sorted((len(nb[inst.params["i"]]), len(nb[inst.params["j"]])))
        if sizes != sorted((d, n - d)):
            tally.fail("T1 isomorphism face sizes", inst)
    if inst.kind == "T1" and out.rejection_reason in ("NotTwoConnected", "NotThreeConnected"):
        tally.t1_failure_checked += 1
        if not _t1_failure_pair_exists(g, inst, out):
            tally.fail("T1 failure pair", inst)
    if inst.kind == "T2" and rs is not None:
        i, k, j = inst.params["i"], inst.params["k"], inst.params["j"]
        if len(rs.rot[u[i]]) != g.rs.degree(u[j]) or len(rs.rot[u[j]]) != g.rs.degree(u[i]):
            tally.fail("T2 degree swap", inst)
        if out.valid and out.is_isomorphic_to_input:
            tally.t2_iso_checked += 1
            w = _fan(g, inst)
            m = g.rs.degree(u[i]) - g.rs.degree(u[j])
            nprime = (j - i) % n if k == (i + 1) % n else n - (j - i) % n
            corner = (w[m - 1], u[i], w[m])
            if not any(len(h) == nprime and _consecutive(h.boundary, corner) for h in g.faces):
                tally.t2_iso_mismatch.append(inst.as_dict())


def _fan(g: Polyhedron, inst: TransformInstance) -> list[int]:
    return t2_fan(g, Face(-1, tuple(inst.face)), inst.params["i"], inst.params["k"])


def _consecutive(bd: tuple[int, ...], triple: tuple[int, int, int]) -> bool:
    n = len(bd)
    for s in range(n):
        window = (bd[s], bd[(s + 1) % n], bd[(s + 2) % n])
        if window == triple or window == triple[::-1]:
            return True
    return False


def run(g: Polyhedron, insts, tally: Tally) -> None:
    for inst in insts:
        check_outcome(g, inst, apply(g, inst), tally)

