from __future__ import annotations

import random
from collections import Counter

import pytest

from oracles import atlas_polyhedra, nx_three_connected, rotation_from_nx
from polyuni.embedding import cube, dual, prism, pyramid, tetrahedron
from polyuni.enumeration import (
    Census,
    generate_census,
    is_unigraphic,
    normalize_sequence,
    realizations_of,
)
from polyuni.errors import BoundExceeded, BoundTooLarge, InfeasibleSequence, Undecided
from polyuni.isomorphism import canonical_code, code_of_rotation

COUNTS = {4: 1, 5: 2, 6: 7, 7: 34, 8: 257, 9: 2606, 10: 32300}


def test_counts_to_ten(census10):
    assert census10.counts == COUNTS
    assert len(census10) == sum(COUNTS.values())


def test_small_census_matches_atlas_class_by_class():
    census = generate_census(7)
    atlas = {code_of_rotation(rotation_from_nx(g)) for g in atlas_polyhedra(7)}
    assert census.by_code == atlas
    per_p = Counter(g.number_of_nodes() for g in atlas_polyhedra(7))
    assert dict(per_p) == {p: COUNTS[p] for p in range(4, 8)}


def test_reverse_configuration_agrees_to_eight(census10):
    rev = generate_census(8, config="reverse")
    assert rev.counts == {p: COUNTS[p] for p in range(4, 9)}
    assert rev.by_code == {c for p in range(4, 9) for c in census10.codes(p)}


def test_census_members_are_polyhedra(census10):
    rng = random.Random(3)
    for g in rng.sample(list(census10.graphs()), 300):
        assert nx_three_connected(g.rs)
        assert canonical_code(g) in census10
        assert g.p - g.q + len(g.faces) == 2


def test_census_closed_under_duality(census10):
    for g in census10.graphs():
        if len(g.faces) <= 10:
            assert canonical_code(dual(g)) in census10


def test_named_graphs_present(census10):
    for g in (tetrahedron(), cube(), prism(5), pyramid(9)):
        assert canonical_code(g) in census10


def test_codes_sorted_and_graphs_decode(census10):
    codes = census10.codes(7)
    assert len(codes) == 34 and len(set(codes)) == 34
    assert [canonical_code(g) for g in census10.graphs(7)] == codes


def test_bounds():
    with pytest.raises(BoundTooLarge):
        generate_census(256)
    with pytest.raises(BoundTooLarge):
        generate_census(3)
    with pytest.raises(ValueError):
        generate_census(5, config="nope")


@pytest.mark.parametrize("sigma", [(3, 3, 3), (2, 3, 3, 3), (3, 3, 3, 4), (4, 4, 4, 4, 4), (9, 3, 3, 3, 3)])
def test_infeasible_sequences(sigma):
    with pytest.raises(InfeasibleSequence):
        normalize_sequence(sigma)


def test_normalize_sorts_descending():
    assert normalize_sequence([3, 4, 3, 3, 3]) == (4, 3, 3, 3, 3)


def test_realizations_small_examples(census10):
    (k4,) = realizations_of((3, 3, 3, 3), census=census10)
    assert canonical_code(k4) == canonical_code(tetrahedron())
    (sq,) = realizations_of((4, 3, 3, 3, 3))
    assert canonical_code(sq) == canonical_code(pyramid(4))
    cubic8 = realizations_of((3,) * 8)
    assert len(cubic8) == 2 and cubic8.complete
    assert {canonical_code(g) for g in cubic8} == set(census10.by_sequence[(3,) * 8])


def test_realizations_search_matches_census(census10):
    rng = random.Random(5)
    seqs = [s for s in census10.by_sequence if len(s) <= 8]
    for s in rng.sample(seqs, 25):
        found = realizations_of(s)
        assert found.complete
        assert sorted(canonical_code(g) for g in found) == sorted(census10.by_sequence[s])


def test_realizations_beyond_census_with_limit():
    found = realizations_of((3,) * 16, limit=2)
    assert len(found) == 2 and not found.complete
    assert len({canonical_code(g) for g in found}) == 2
    assert all(g.degseq == (3,) * 16 for g in found)


def test_budget_exhaustion_reported():
    with pytest.raises(BoundExceeded) as err:
        realizations_of((3,) * 14, budget=50)
    assert all(g.degseq == (3,) * 14 for g in err.value.found)


def test_unigraphic_needs_proof():
    with pytest.raises((Undecided, BoundExceeded)):
        is_unigraphic(pyramid(6).degseq, budget=5)


@pytest.mark.parametrize("n", range(3, 10))
def test_pyramid_sequences_unigraphic_from_census(census10, n):
    assert is_unigraphic(pyramid(n).degseq, census=census10)


@pytest.mark.parametrize("n", [6, 7, 8, 9])
def test_pyramid_sequences_unigraphic_by_search(n):
    assert is_unigraphic(pyramid(n).degseq)


def test_cubic_eight_not_unigraphic(census10):
    assert not is_unigraphic((3,) * 8, census=census10)
    assert not is_unigraphic((3,) * 8)


def test_undecided_when_budget_ends_after_one_hit():
    with pytest.raises(Undecided):
        is_unigraphic(pyramid(8).degseq, budget=20)
