"""plantri-compatible ``planar_code`` reading and writing.

Wire format: the ASCII header ``>>planar_code<<`` followed by one record per
graph. A record is the vertex count as one unsigned byte, then for every
vertex its clockwise neighbours as 1-based bytes, each list closed by a 0.
Graphs with more than 255 vertices use plantri's wide form: a 0 byte, then
big-endian 16-bit words for the count and every entry.
"""

from __future__ import annotations

from typing import Iterable, Union

from .embedding import Polyhedron, RotationSystem, build_rotation_system
from .errors import BadHeader, PolyuniError, TruncatedRecord, VertexOutOfRange

HEADER = b">>planar_code<<"


def encode_record(rs: RotationSystem) -> bytes:
    entries: list[int] = []
    for r in rs.rot:
        entries.extend(u + 1 for u in r)
        entries.append(0)
    if rs.p <= 255:
        return bytes([rs.p]) + bytes(entries)
    wide = bytearray(b"\x00")
    for x in [rs.p] + entries:
        wide += x.to_bytes(2, "big")
    return bytes(wide)


def write_planar_code(graphs: Iterable[Union[RotationSystem, Polyhedron]], header: bool = True) -> bytes:
    out = bytearray(HEADER if header else b"")
    for g in graphs:
        out += encode_record(g.rs if isinstance(g, Polyhedron) else g)
    return bytes(out)


def decode_record(data: bytes, offset: int = 0) -> tuple[RotationSystem, int]:
    """Decode one record starting at ``offset``; return it and the next offset."""
    wide = data[offset] == 0
    width = 2 if wide else 1
    pos = offset + 1 if wide else offset

    def read() -> int:
        nonlocal pos
        if pos + width > len(data):
            raise TruncatedRecord("record ends mid-way", pos)
        val = int.from_bytes(data[pos : pos + width], "big")
        pos += width
        return val

    start = offset
    p = read()
    if p == 0:
        raise TruncatedRecord("record declares zero vertices", start)
    lists: list[list[int]] = []
    for v in range(p):
        r: list[int] = []
        while True:
            at = pos
            x = read()
            if x == 0:
                break
            if x > p:
                raise VertexOutOfRange(f"neighbour {x} of vertex {v + 1} exceeds p={p}", at)
            r.append(x - 1)
        lists.append(r)
    try:
        rs = build_rotation_system(p, lists)
    except PolyuniError as exc:
        raise type(exc)(f"{exc} (record at byte offset {start})") from exc
    return rs, pos


def read_planar_code(data: bytes) -> list[RotationSystem]:
    if not data.startswith(HEADER):
        raise BadHeader("missing >>planar_code<< header", 0)
    graphs = []
    pos = len(HEADER)
    while pos < len(data):
        rs, pos = decode_record(data, pos)
        graphs.append(rs)
    return graphs


def decode_code(code: bytes) -> RotationSystem:
    """A canonical code is a headerless planar_code record."""
    return decode_record(code, 0)[0]
