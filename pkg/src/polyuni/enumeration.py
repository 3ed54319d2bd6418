"""Isomorph-free generation of polyhedra and degree-sequence realisation search.

The census is the closure of K4 under two expansions, each undoing a
reduction that every polyhedron other than K4 admits:

* vertex splitting (inverse of edge contraction), and
* face insertion: a new edge drawn inside a face between two corners, a
  corner and a new vertex on an edge, or new vertices on two edges (inverse of
  deleting an edge and suppressing the degree-2 vertices this leaves).

Candidates are deduplicated by canonical code and only codes not seen before
are validated.
"""

from __future__ import annotations

import heapq
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .embedding import (
    DegreeSequence,
    Polyhedron,
    RotationSystem,
    tetrahedron,
    trace_faces,
    validate_polyhedron,
)
from .errors import BoundExceeded, BoundTooLarge, InfeasibleSequence, PolyuniError, Undecided
from .isomorphism import CanonicalCode, encode_body
from .kernels import canonical_body
from .planar_code import decode_code

log = logging.getLogger(__name__)

MAX_P = 255
DEFAULT_BUDGET = 2_000_000

Rot = list[list[int]]


def code_of_lists(rot: Rot) -> CanonicalCode:
    offsets = np.zeros(len(rot) + 1, np.int64)
    offsets[1:] = np.cumsum([len(r) for r in rot])
    nbrs = np.fromiter((u for r in rot for u in r), np.int64, int(offsets[-1]))
    return encode_body(len(rot), canonical_body(offsets, nbrs))


def _insert_after(r: list[int], anchor: int, new: int) -> None:
    r.insert(r.index(anchor) + 1, new)


def _replace(r: list[int], old: int, new: int) -> None:
    r[r.index(old)] = new


# --- expansions -------------------------------------------------------------
# Each yields fresh rotation lists; ``faces`` are the traced boundaries of rot.


def chord_expansions(rot: Rot, faces: Sequence[Sequence[int]]) -> Iterator[Rot]:
    """Join two non-consecutive corners of a face."""
    for f in faces:
        s = len(f)
        for a in range(s):
            for b in range(a + 2, s - (a == 0)):
                x, y = f[a], f[b]
                if y in rot[x]:
                    continue
                new = [list(r) for r in rot]
                _insert_after(new[x], f[a - 1], y)
                _insert_after(new[y], f[b - 1], x)
                yield new


def corner_edge_expansions(rot: Rot, faces: Sequence[Sequence[int]]) -> Iterator[Rot]:
    """Put a new vertex on a face edge and join it to another corner of the face."""
    p = len(rot)
    for f in faces:
        s = len(f)
        for t in range(s):
            x, y = f[t], f[(t + 1) % s]
            for u in range(s):
                if u == t or u == (t + 1) % s:
                    continue
                w = f[u]
                new = [list(r) for r in rot]
                _replace(new[x], y, p)
                _replace(new[y], x, p)
                _insert_after(new[w], f[u - 1], p)
                new.append([x, w, y])
                yield new


def edge_edge_expansions(rot: Rot, faces: Sequence[Sequence[int]]) -> Iterator[Rot]:
    """Put new vertices on two edges of a face and join them."""
    p = len(rot)
    z1, z2 = p, p + 1
    for f in faces:
        s = len(f)
        for t in range(s):
            for u in range(t + 1, s):
                a, b = f[t], f[(t + 1) % s]
                c, d = f[u], f[(u + 1) % s]
                new = [list(r) for r in rot]
                _replace(new[a], b, z1)
                _replace(new[b], a, z1)
                _replace(new[c], d, z2)
                _replace(new[d], c, z2)
                new.append([a, z2, b])
                new.append([c, z1, d])
                yield new


def split_expansions(rot: Rot, faces: Sequence[Sequence[int]] = ()) -> Iterator[Rot]:
    """Split a vertex into two adjacent vertices, each of degree >= 3."""
    p = len(rot)
    for v, r in enumerate(rot):
        d = len(r)
        for a in range(2, d // 2 + 1):
            # arcs of length a and d - a are the same split when they are equal
            starts = range(d // 2) if 2 * a == d else range(d)
            for s in starts:
                arc = [r[(s + k) % d] for k in range(a)]
                rest = [r[(s + k) % d] for k in range(a, d)]
                new = [list(x) for x in rot]
                new[v] = arc + [p]
                for w in rest:
                    _replace(new[w], v, p)
                new.append(rest + [v])
                yield new


FACE_OPS: tuple[Callable[..., Iterator[Rot]], ...] = (
    chord_expansions,
    corner_edge_expansions,
    edge_edge_expansions,
)
CONFIGURATIONS = {
    "default": (split_expansions,) + FACE_OPS,
    "reverse": tuple(reversed(FACE_OPS)),
}


def _lists(rs: RotationSystem) -> Rot:
    return [list(r) for r in rs.rot]


def _pq(code: CanonicalCode) -> tuple[int, int]:
    if code[0] == 0:
        p = int.from_bytes(code[1:3], "big")
        return p, (len(code) // 2 - 1 - p) // 2
    p = code[0]
    return p, (len(code) - 1 - p) // 2


def _closure(
    ops: Sequence[Callable[..., Iterator[Rot]]],
    keep: Callable[[Rot], bool],
    reverse: bool = False,
    budget: Optional[int] = None,
    stop: Optional[Callable[[dict], bool]] = None,
) -> tuple[dict[CanonicalCode, tuple[int, int]], bool]:
    """Expand from K4 in increasing (p, q) order.

    ``keep`` filters candidate rotation lists before they are coded. Every
    expansion strictly increases p + q, so once a (p, q) bucket is reached no
    later graph can land in it. Returns the accepted codes and whether the
    search ran to completion.
    """
    k4 = tetrahedron()
    start = code_of_lists(_lists(k4.rs))
    found: dict[CanonicalCode, tuple[int, int]] = {start: (4, 6)}
    buckets: dict[tuple[int, int], list[CanonicalCode]] = defaultdict(list)
    buckets[(4, 6)].append(start)
    heap = [(4, 6)]
    rejected: set[CanonicalCode] = set()
    expanded = 0
    while heap:
        key = heapq.heappop(heap)
        if stop is not None and stop(found):
            return found, False
        level = buckets.pop(key)
        for code in reversed(level) if reverse else level:
            expanded += 1
            if budget is not None and expanded > budget:
                exc = BoundExceeded(f"search budget of {budget} expansions exhausted")
                exc.found = found  # type: ignore[attr-defined]
                raise exc
            rot = _lists(decode_code(code))
            faces = [f.boundary for f in trace_faces(RotationSystem(len(rot), tuple(map(tuple, rot))))]
            for op in ops:
                for cand in op(rot, faces):
                    if not keep(cand):
                        continue
                    c = code_of_lists(cand)
                    if c in found or c in rejected:
                        continue
                    try:
                        validate_polyhedron(RotationSystem(len(cand), tuple(map(tuple, cand))))
                    except PolyuniError:
                        rejected.add(c)
                        continue
                    pq = _pq(c)
                    found[c] = pq
                    if pq not in buckets:
                        heapq.heappush(heap, pq)
                    buckets[pq].append(c)
    return found, True


@dataclass
class Census:
    max_p: int
    by_code: set[CanonicalCode] = field(default_factory=set)
    by_sequence: dict[DegreeSequence, list[CanonicalCode]] = field(default_factory=dict)
    counts: dict[int, int] = field(default_factory=dict)

    def codes(self, p: Optional[int] = None) -> list[CanonicalCode]:
        """Codes in a deterministic order: by vertex count, then bytewise."""
        chosen = (c for c in self.by_code if p is None or _pq(c)[0] == p)
        return sorted(chosen, key=lambda c: (_pq(c), c))

    def graphs(self, p: Optional[int] = None) -> Iterator[Polyhedron]:
        for c in self.codes(p):
            yield validate_polyhedron(decode_code(c))

    def __len__(self) -> int:
        return len(self.by_code)

    def __contains__(self, code: object) -> bool:
        return code in self.by_code


def _sequence_of_code(code: CanonicalCode) -> DegreeSequence:
    rs = decode_code(code)
    return tuple(sorted((len(r) for r in rs.rot), reverse=True))


def generate_census(max_p: int, config: str = "default") -> Census:
    """All polyhedra with at most ``max_p`` vertices, one per isomorphism class."""
    if max_p > MAX_P:
        raise BoundTooLarge(f"max_p = {max_p} exceeds {MAX_P}")
    if max_p < 4:
        raise BoundTooLarge(f"max_p = {max_p} is below 4")
    try:
        ops = CONFIGURATIONS[config]
    except KeyError:
        raise ValueError(f"unknown configuration {config!r}") from None
    found, _ = _closure(ops, keep=lambda rot: len(rot) <= max_p, reverse=config == "reverse")
    census = Census(max_p)
    for code, (p, _q) in sorted(found.items(), key=lambda kv: (kv[1], kv[0])):
        census.by_code.add(code)
        census.by_sequence.setdefault(_sequence_of_code(code), []).append(code)
        census.counts[p] = census.counts.get(p, 0) + 1
    census.counts = dict(sorted(census.counts.items()))
    return census


# --- degree sequences -------------------------------------------------------


def normalize_sequence(sigma: Sequence[int]) -> DegreeSequence:
    seq = tuple(sorted((int(d) for d in sigma), reverse=True))
    p = len(seq)
    if p < 4:
        raise InfeasibleSequence(f"need at least 4 entries, got {p}")
    if seq[-1] < 3:
        raise InfeasibleSequence("every degree must be at least 3")
    if sum(seq) % 2:
        raise InfeasibleSequence("degree sum is odd")
    if sum(seq) // 2 > 3 * p - 6:
        raise InfeasibleSequence(f"q = {sum(seq) // 2} exceeds 3p - 6 = {3 * p - 6}")
    if seq[0] > p - 1:
        raise InfeasibleSequence(f"degree {seq[0]} exceeds p - 1 = {p - 1}")
    if p > MAX_P:
        raise BoundTooLarge(f"p = {p} exceeds {MAX_P}")
    return seq


class Realizations(list):
    """Realisations found; ``complete`` is True when no others exist."""

    complete: bool = False


def _dominated_by(sigma: DegreeSequence) -> Callable[[Rot], bool]:
    p, q = len(sigma), sum(sigma) // 2

    def keep(rot: Rot) -> bool:
        if len(rot) > p:
            return False
        degs = sorted((len(r) for r in rot), reverse=True)
        if sum(degs) > 2 * q:
            return False
        return all(d <= s for d, s in zip(degs, sigma))

    return keep


def realizations_of(
    sigma: Sequence[int],
    limit: Optional[int] = None,
    census: Optional[Census] = None,
    budget: int = DEFAULT_BUDGET,
) -> Realizations:
    """Pairwise non-isomorphic polyhedra with degree sequence ``sigma``.

    Uses ``census`` when it covers ``len(sigma)``. Otherwise searches the face
    insertions from K4, which never lower a degree, so every intermediate
    graph of a valid derivation is degree-dominated by ``sigma``. Raises
    BoundExceeded (carrying ``found``) when ``budget`` runs out first.
    """
    seq = normalize_sequence(sigma)
    p, q = len(seq), sum(seq) // 2
    out = Realizations()
    if census is not None and p <= census.max_p:
        codes = census.by_sequence.get(seq, [])
        chosen = codes if limit is None else codes[:limit]
        out.extend(validate_polyhedron(decode_code(c)) for c in chosen)
        out.complete = len(chosen) == len(codes)
        return out

    def hits(found: dict) -> list[CanonicalCode]:
        return sorted(c for c, pq in found.items() if pq == (p, q))

    stop = None if limit is None else (lambda found: len(hits(found)) >= limit)
    try:
        found, finished = _closure(FACE_OPS, _dominated_by(seq), budget=budget, stop=stop)
    except BoundExceeded as exc:
        exc.found = [validate_polyhedron(decode_code(c)) for c in hits(exc.found)]  # type: ignore[attr-defined]
        raise
    codes = hits(found)
    if limit is not None:
        codes = codes[:limit]
    # dominated graphs with the same p and q have exactly this sequence
    out.extend(validate_polyhedron(decode_code(c)) for c in codes)
    out.complete = finished
    return out


def is_unigraphic(sigma: Sequence[int], census: Optional[Census] = None, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff ``sigma`` has exactly one polyhedral realisation."""
    try:
        found = realizations_of(sigma, limit=2, census=census, budget=budget)
    except BoundExceeded as exc:
        if len(exc.found) == 1:  # type: ignore[attr-defined]
            raise Undecided(f"one realisation found before the budget ran out: {exc}") from exc
        raise
    if len(found) >= 2:
        return False
    if not found.complete:
        raise Undecided("search stopped before ruling out a second realisation")
    return len(found) == 1
