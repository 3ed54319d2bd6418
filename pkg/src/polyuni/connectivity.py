"""2- and 3-connectivity, decided from the embedding and by brute-force cut search."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

import numpy as np

from .embedding import RotationSystem, check_planar_two_connected, faces_intersect_properly
from .errors import NotGenusZero, NotTwoConnected, PreconditionNotTwoConnected
from .kernels import separating_sets

Graph = Union[RotationSystem, Mapping[int, Sequence[int]], Sequence[Sequence[int]]]


@dataclass(frozen=True)
class CutReport:
    # disconnected | one_cut | two_cut | connected | three_connected
    kind: str
    witnesses: list[tuple[int, ...]] = field(default_factory=list)


def is_three_connected_via_faces(rs: RotationSystem) -> bool:
    """Face-intersection criterion; requires a 2-connected genus-0 embedding."""
    try:
        faces = check_planar_two_connected(rs)
    except (NotTwoConnected, NotGenusZero) as exc:
        raise PreconditionNotTwoConnected(str(exc)) from exc
    return rs.p >= 4 and faces_intersect_properly(faces)


def _csr(graph: Graph) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(graph, RotationSystem):
        return graph.arrays
    if isinstance(graph, Mapping):
        lists = [sorted(graph[v]) for v in range(len(graph))]
    else:
        lists = [list(r) for r in graph]
    offsets = np.zeros(len(lists) + 1, np.int64)
    offsets[1:] = np.cumsum([len(r) for r in lists])
    nbrs = np.fromiter((u for r in lists for u in r), np.int64, int(offsets[-1]))
    return offsets, nbrs


def connectivity_oracle(graph: Graph, k: int = 3) -> CutReport:
    """Remove every vertex set of size < k and report those that disconnect.

    ``graph`` may be a RotationSystem, a vertex -> neighbours mapping, or a
    list of neighbour lists over vertices ``0..p-1``.
    """
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    offsets, nbrs = _csr(graph)
    p = len(offsets) - 1
    disconnected, single, pair = separating_sets(offsets, nbrs, k)
    if disconnected:
        return CutReport("disconnected", [()])
    ones = [(int(a),) for a in np.flatnonzero(single)]
    if ones:
        return CutReport("one_cut", ones + [(int(a), int(b)) for a, b in np.argwhere(pair)])
    twos = [(int(a), int(b)) for a, b in np.argwhere(pair)]
    if twos:
        return CutReport("two_cut", twos)
    if k == 3 and p >= 4:
        return CutReport("three_connected")
    return CutReport("connected")


def separating_sets_upto_two(graph: Graph) -> list[tuple[int, ...]]:
    """All single vertices and vertex pairs whose removal disconnects ``graph``."""
    report = connectivity_oracle(graph, 3)
    return [] if report.kind in ("three_connected", "connected") else report.witnesses


def two_cuts(graph: Graph) -> list[tuple[int, int]]:
    """All separating pairs of a 2-connected graph, lexicographically ordered."""
    report = connectivity_oracle(graph, 3)
    if report.kind in ("disconnected", "one_cut"):
        raise NotTwoConnected("two_cuts needs a 2-connected graph")
    return sorted(w for w in report.witnesses if len(w) == 2)
