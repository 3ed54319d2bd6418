"""Second polyhedral realisations for polyhedra with a face of size >= 8.

The search runs in three stages:

1. ``zeta_i`` for every index of the face; the first 3-connected output is
   a witness (``zeta`` never returns an output isomorphic to the input).
2. When every ``zeta_i`` loses 3-connectivity, collect the obstruction
   vertices left by the separating sets, pick them consistently along one
   common face, classify the configuration and apply T3, T2 or a U move.
3. A defensive exhaustive scan over all T1/T2/T3/U instances on all faces.

Every returned witness is re-checked from scratch: degree multiset,
planarity of the traced embedding, 3-connectivity by two independent
methods, and inequality of canonical codes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator

from .connectivity import connectivity_oracle, separating_sets_upto_two
from .embedding import (
    Face,
    Polyhedron,
    check_planar_two_connected,
    face_neighbors,
    faces_intersect_properly,
    is_pyramid,
    mirror,
    trace_faces,
)
from .errors import ClassificationFailed, NoObstructionFound, PolyuniError, PreconditionFailed
from .isomorphism import CanonicalCode, canonical_code
from .transforms import (
    TransformInstance,
    TransformOutcome,
    cyclic_gap,
    t1,
    t2,
    t3,
    u_configuration,
    u_move,
    zeta,
)

log = logging.getLogger(__name__)

STAGES = ("zeta", "condition3_T3", "condition4_T2", "condition4_U", "exhaustive_fallback", "failed")
MAX_SELECTIONS_PER_FACE = 512


@dataclass
class ObstructionProfile:
    graph: Polyhedron
    face: Face
    mirrored: bool
    choices: list[str]
    targets: list[int]
    pairs: list[tuple[int, int]]
    common_face: Face
    case: str | None = None
    relabel_offset: int | None = None

    @property
    def xs(self) -> list[int]:
        return [x for x, _ in self.pairs]


@dataclass
class WitnessReport:
    input: Polyhedron
    face: Face
    input_code: CanonicalCode
    stage: str
    transform: TransformInstance | None = None
    output: Polyhedron | None = None
    output_code: CanonicalCode | None = None
    checks: dict[str, bool] = field(
        default_factory=lambda: dict.fromkeys(("same_degree_sequence", "planar", "three_connected", "non_isomorphic"), False)
    )
    diagnostics: list[str] = field(default_factory=list)
    mirrored: bool = False
    profile: ObstructionProfile | None = None
    outcome: TransformOutcome | None = None

    @property
    def ok(self) -> bool:
        return self.stage != "failed" and all(self.checks.values())


def verify(g: Polyhedron, out: TransformOutcome, input_code: CanonicalCode | None = None) -> dict[str, bool]:
    """Independent re-check of a candidate second realisation."""
    checks = dict.fromkeys(("same_degree_sequence", "planar", "three_connected", "non_isomorphic"), False)
    rs = out.rotation
    if rs is None:
        return checks
    checks["same_degree_sequence"] = sorted(map(len, rs.rot)) == sorted(map(len, g.rs.rot))
    faces = trace_faces(rs)
    checks["planar"] = rs.p - rs.q + len(faces) == 2
    try:
        check_planar_two_connected(rs, faces)
        by_faces = rs.p >= 4 and faces_intersect_properly(faces)
    except PolyuniError:
        by_faces = False
    by_cuts = connectivity_oracle(rs, 3).kind == "three_connected"
    checks["three_connected"] = by_faces and by_cuts
    if out.result is not None:
        code = input_code if input_code is not None else canonical_code(g)
        checks["non_isomorphic"] = canonical_code(out.result) != code
    return checks


# -- obstruction profiles ------------------------------------------------------


def obstruction_candidates(g: Polyhedron, f: Face, i: int, j: int, out: TransformOutcome) -> list[tuple[int, int]]:
    """Pairs (x, y), x on F_i and y on F_j, that separate the T1 image as the theory predicts.

    A lone cut vertex c contributes (c, c). Pairs must not both lie on ``f``
    and must share a face of ``g`` other than ``f``.
    """
    if out.rotation is None:
        return []
    nb = face_neighbors(g, f)
    fi, fj = set(nb[i].boundary), set(nb[j].boundary)
    on_f = set(f.boundary)
    seps = separating_sets_upto_two(out.rotation)
    singles = {s[0] for s in seps if len(s) == 1}
    found: set[tuple[int, int]] = set()
    for s in seps:
        if len(s) == 1:
            c = s[0]
            if c in fi and c in fj and c not in on_f:
                found.add((c, c))
            continue
        if s[0] in singles or s[1] in singles:
            continue
        for x, y in (s, s[::-1]):
            if x in fi and y in fj and not (x in on_f and y in on_f):
                if any(h.key != f.key for h in g.faces_containing(x, y)):
                    found.add((x, y))
    return sorted(found)


def _selections(
    xs_per_index: list[list[tuple[int, int]]], boundary: tuple[int, ...], limit: int
) -> Iterator[list[tuple[int, int]]]:
    """Choices of one pair per index whose x's run once around ``boundary`` in order."""
    where = {v: k for k, v in enumerate(boundary)}
    size = len(boundary)
    n = len(xs_per_index)
    count = 0
    for direction in (1, -1):
        chosen: list[tuple[int, int]] = []

        def rec(t: int, total: int):
            nonlocal count
            if count >= limit:
                return
            if t == n:
                close = (direction * (where[chosen[0][0]] - where[chosen[-1][0]])) % size
                if total + close in (0, size) and (total + close == size or len({c[0] for c in chosen}) == 1):
                    count += 1
                    yield list(chosen)
                return
            for pair in xs_per_index[t]:
                step = 0 if t == 0 else (direction * (where[pair[0]] - where[chosen[-1][0]])) % size
                if total + step > size:
                    continue
                chosen.append(pair)
                yield from rec(t + 1, total + step)
                chosen.pop()

        yield from rec(0, 0)


def obstruction_profile(g: Polyhedron, f: Face, mirrored: bool = False) -> list[ObstructionProfile]:
    """All consistent obstruction selections, assuming every zeta_i breaks 3-connectivity."""
    n = len(f)
    choices, targets, cands = [], [], []
    for i in range(n):
        out, which = zeta(g, f, i)
        if out.valid:
            raise PreconditionFailed(f"zeta_{i} is 3-connected; no obstruction to collect")
        j = (i + n // 2) % n if which == "phi" else (i + n // 2 - 1) % n
        choices.append(which)
        targets.append(j)
        cands.append(obstruction_candidates(g, f, i, j, out))
    empty = [i for i, c in enumerate(cands) if not c]
    if empty:
        raise NoObstructionFound(f"no separating pair on F_i/F_j for indices {empty}")
    profiles = []
    seen = set()
    for fp in sorted(g.faces, key=lambda h: h.id):
        onfp = set(fp.boundary)
        per = [[c for c in cs if c[0] in onfp] for cs in cands]
        if any(not c for c in per):
            continue
        for sel in _selections(per, fp.boundary, MAX_SELECTIONS_PER_FACE):
            key = (fp.key, tuple(sel))
            if key in seen:
                continue
            seen.add(key)
            profiles.append(ObstructionProfile(g, f, mirrored, choices, targets, sel, fp))
    if not profiles:
        raise NoObstructionFound("obstruction vertices never share a common face")
    return profiles


def in_cyclic_order(profile: ObstructionProfile) -> bool:
    """x_0..x_{n-1} wind exactly once around the common face (ties allowed)."""
    bd = profile.common_face.boundary
    where = {v: k for k, v in enumerate(bd)}
    xs = profile.xs
    if len(set(xs)) == 1:
        return True
    for direction in (1, -1):
        total = sum((direction * (where[xs[(t + 1) % len(xs)]] - where[xs[t]])) % len(bd) for t in range(len(xs)))
        if total == len(bd):
            return True
    return False


def coincidences_are_intervals(profile: ObstructionProfile) -> bool:
    """Equal x's occupy a cyclic interval of indices."""
    xs = profile.xs
    n = len(xs)
    for v in set(xs):
        idx = [t for t in range(n) if xs[t] == v]
        runs = sum(1 for t in idx if xs[(t - 1) % n] != v)
        if runs > 1:
            return False
    return True


# -- classification -----------------------------------------------------------


def condition3_offsets(profile: ObstructionProfile) -> list[int]:
    xs = profile.xs
    n = len(xs)
    on_f = set(profile.face.boundary)
    out = []
    for r in range(n):
        quad = [xs[(r + 2 * t) % n] for t in range(4)]
        if len(set(quad)) == 4 and quad[0] not in on_f and quad[2] not in on_f:
            out.append(r)
    return out


def condition4_offsets(profile: ObstructionProfile) -> list[int]:
    g, f = profile.graph, profile.face
    xs = profile.xs
    n = len(xs)
    nb = face_neighbors(g, f)
    fp = profile.common_face.key
    out = []
    for r in range(n):
        cfg = u_configuration(g, f, r)
        if cfg is None or cfg["x1"] != xs[r]:
            continue
        if any(nb[(r + t) % n].key == fp for t in range(3)):
            continue
        if g.rs.degree(cfg["u1"]) >= 4 or len(cfg["F1"]) != 3:
            out.append(r)
    return out


def lemma1_matches(profile: ObstructionProfile) -> list[tuple[str, int]]:
    return [("condition3", r) for r in condition3_offsets(profile)] + [
        ("condition4", r) for r in condition4_offsets(profile)
    ]


def lemma1_classify(profile: ObstructionProfile) -> tuple[str, int]:
    """First matching normal form: condition (3) preferred, then condition (4)."""
    matches = lemma1_matches(profile)
    if not matches:
        raise ClassificationFailed(f"profile {profile.xs} on face {list(profile.common_face.boundary)} fits neither case")
    profile.case, profile.relabel_offset = matches[0]
    return matches[0]


# -- property P ---------------------------------------------------------------


def has_property_p(g: Polyhedron, f: Face) -> Face | None:
    """A face other than ``f`` meeting every face adjacent to ``f``, if any."""
    adjacent = [set(h.boundary) for h in face_neighbors(g, f)]
    for h in g.faces:
        if h.key == f.key:
            continue
        hs = set(h.boundary)
        if all(hs & a for a in adjacent):
            return h
    return None


def property_P_faces(g: Polyhedron) -> list[tuple[Face, Face]]:
    out = []
    for f in g.faces:
        w = has_property_p(g, f)
        if w is not None:
            out.append((f, w))
    return out


def new_faces(g: Polyhedron, h: Polyhedron) -> list[Face]:
    """Faces of ``h`` whose vertex sets are not faces of ``g``."""
    old = {frozenset(f.boundary) for f in g.faces}
    return [f for f in h.faces if frozenset(f.boundary) not in old]


# -- the pipeline ---------------------------------------------------------------


def _accept(report: WitnessReport, g: Polyhedron, out: TransformOutcome, stage: str) -> bool:
    if not out.valid or out.is_isomorphic_to_input:
        return False
    checks = verify(g, out, report.input_code)
    if not all(checks.values()):
        report.diagnostics.append(f"{out.instance.kind} {out.instance.params} failed re-verification: {checks}")
        return False
    report.stage = stage
    report.transform = out.instance
    report.output = out.result
    report.output_code = canonical_code(out.result)
    report.checks = checks
    report.outcome = out
    return True


def _stage2_candidates(profile: ObstructionProfile) -> Iterator[tuple[str, TransformOutcome]]:
    g, f = profile.graph, profile.face
    n = len(f)
    xs = profile.xs
    for case, r in lemma1_matches(profile):
        profile.case, profile.relabel_offset = case, r
        if case == "condition3":
            try:
                yield "condition3_T3", t3(g, f, r, xs[r], r + 4, xs[(r + 4) % n])
            except PreconditionFailed as exc:
                log.debug("T3 at offset %d not applicable: %s", r, exc)
            continue
        u1 = f.boundary[r]
        if g.rs.degree(u1) >= 4:
            for j in (r + 1, r + 2):
                try:
                    yield "condition4_T2", t2(g, f, r, r - 1, j)
                except PreconditionFailed as exc:
                    log.debug("T2 at offset %d not applicable: %s", r, exc)
        if len(face_neighbors(g, f)[r]) != 3:
            for variant in (2, 3):
                try:
                    yield "condition4_U", u_move(g, f, variant, r)
                except PreconditionFailed as exc:
                    log.debug("U%d at offset %d not applicable: %s", variant, r, exc)


def exhaustive_instances(g: Polyhedron) -> Iterator[TransformOutcome]:
    """Every T1, T2, T3 and U instance on every face of ``g``, in a fixed order."""
    for f in g.faces:
        u = f.boundary
        n = len(u)
        for i in range(n):
            for j in range(i + 1, n):
                if n >= 6 and 3 <= cyclic_gap(i, j, n) <= n - 3:
                    yield t1(g, f, i, j)
        for i in range(n):
            for k in ((i - 1) % n, (i + 1) % n):
                for j in range(n):
                    if 2 <= cyclic_gap(k, j, n) <= n - 2 and g.rs.degree(u[i]) > g.rs.degree(u[j]):
                        yield t2(g, f, i, k, j)
        if n >= 5:
            for r in range(n):
                cfg = u_configuration(g, f, r)
                if cfg is not None and len(cfg["F1"]) != 3:
                    for variant in (2, 3):
                        yield u_move(g, f, variant, r)
        nb = face_neighbors(g, f)
        on_f = set(u)
        for i in range(n):
            for j in range(n):
                if i == j or not 2 <= cyclic_gap(i, j, n) <= n - 2:
                    continue
                for xi in nb[i].boundary:
                    if xi in on_f:
                        continue
                    for xj in nb[j].boundary:
                        if xj in on_f or xj == xi or xj in g.rs.adjacency[xi]:
                            continue
                        if g.faces_containing(xi, xj):
                            yield t3(g, f, i, xi, j, xj)


def find_second_realization(g: Polyhedron, f: Face, fallback: bool = True) -> WitnessReport:
    n = len(f)
    if n < 8:
        raise PreconditionFailed(f"face has {n} sides; need at least 8")
    if is_pyramid(g) is not None:
        raise PreconditionFailed("pyramids are unigraphic; no second realisation exists")
    report = WitnessReport(g, f, canonical_code(g), "failed")

    zeta_outs = []
    for i in range(n):
        out, which = zeta(g, f, i)
        zeta_outs.append(out)
        if out.valid and _accept(report, g, out, "zeta"):
            return report

    for mirrored in (False, True):
        h = mirror(g) if mirrored else g
        fh = h.find_face(f.boundary)
        try:
            profiles = obstruction_profile(h, fh, mirrored)
        except NoObstructionFound as exc:
            report.diagnostics.append(f"{'mirrored' if mirrored else 'original'}: {exc}")
            continue
        for profile in profiles:
            for stage, out in _stage2_candidates(profile):
                if _accept(report, g, out, stage):
                    report.mirrored = mirrored
                    report.profile = profile
                    return report
        report.diagnostics.append(
            f"{'mirrored' if mirrored else 'original'}: {len(profiles)} profiles, none classified into a working branch"
        )

    if not fallback:
        return report
    report.diagnostics.append("deviation: stages 1-2 found no witness; exhaustive fallback used")
    log.warning("exhaustive fallback reached for input %s", report.input_code.hex())
    for out in exhaustive_instances(g):
        if _accept(report, g, out, "exhaustive_fallback"):
            return report
    report.stage = "failed"
    return report


def largest_face(g: Polyhedron, minimum: int = 8) -> Face | None:
    best = max(g.faces, key=lambda f: (len(f), -f.id))
    return best if len(best) >= minimum else None
