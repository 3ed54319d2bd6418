from __future__ import annotations

import pytest

from polyuni.embedding import prism, tetrahedron
from polyuni.errors import BadHeader, TruncatedRecord, VertexOutOfRange
from polyuni.planar_code import HEADER, decode_code, read_planar_code, write_planar_code
from polyuni.isomorphism import canonical_code

K4_BYTES = HEADER + bytes([4, 2, 3, 4, 0, 1, 4, 3, 0, 1, 2, 4, 0, 1, 3, 2, 0])


def test_k4_record_bytes():
    assert write_planar_code([tetrahedron()]) == K4_BYTES
    assert read_planar_code(K4_BYTES)[0] == tetrahedron().rs


def test_empty_body():
    assert read_planar_code(HEADER) == []
    assert write_planar_code([]) == HEADER


def test_bad_header():
    with pytest.raises(BadHeader) as err:
        read_planar_code(b">>planar_codX<<")
    assert err.value.offset == 0


def test_truncated_record_reports_offset():
    with pytest.raises(TruncatedRecord) as err:
        read_planar_code(K4_BYTES[:-3])
    assert err.value.offset == len(K4_BYTES) - 3


def test_vertex_out_of_range_reports_offset():
    bad = bytearray(K4_BYTES)
    bad[len(HEADER) + 2] = 9
    with pytest.raises(VertexOutOfRange) as err:
        read_planar_code(bytes(bad))
    assert err.value.offset == len(HEADER) + 2


def test_round_trip_on_census(census10):
    data = write_planar_code(g.rs for g in census10.graphs(9))
    assert write_planar_code(read_planar_code(data)) == data
    assert len(read_planar_code(data)) == 2606


def test_wide_records_round_trip():
    g = prism(130)
    data = write_planar_code([g])
    assert data[len(HEADER)] == 0
    assert read_planar_code(data)[0] == g.rs


def test_canonical_code_decodes_to_isomorphic_graph():
    g = prism(6)
    rs = decode_code(canonical_code(g))
    from polyuni.embedding import validate_polyhedron

    assert canonical_code(validate_polyhedron(rs)) == canonical_code(g)
