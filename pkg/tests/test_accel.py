from __future__ import annotations

import os
import random
import subprocess
import sys

import numpy as np
import pytest

from oracles import random_polyhedron
from polyuni import _accel
from polyuni.kernels import canonical_body, dart_twins, separating_sets
from polyuni.transforms import t1
from polyuni.embedding import prism, pyramid, is_pyramid


def _samples():
    rng = random.Random(9)
    gs = [random_polyhedron(rng, rng.randint(4, 14)) for _ in range(25)]
    bad = t1(pyramid(8), is_pyramid(pyramid(8))[1], 1, 4).rotation
    return [g.rs for g in gs] + [prism(9).rs, bad]


@pytest.mark.skipif(not _accel.USE_NUMBA, reason="numba disabled")
def test_compiled_kernels_match_python_sources():
    for rs in _samples():
        off, nb = rs.arrays
        assert np.array_equal(dart_twins(off, nb), dart_twins.py_func(off, nb))
        assert np.array_equal(canonical_body(off, nb), canonical_body.py_func(off, nb))
        for k in (1, 2, 3):
            fast, slow = separating_sets(off, nb, k), separating_sets.py_func(off, nb, k)
            assert fast[0] == slow[0]
            assert np.array_equal(fast[1], slow[1]) and np.array_equal(fast[2], slow[2])


SCRIPT = """
from polyuni import _accel
from polyuni.embedding import prism
from polyuni.isomorphism import canonical_code
from polyuni.connectivity import connectivity_oracle
assert not _accel.USE_NUMBA
print(canonical_code(prism(9)).hex(), connectivity_oracle(prism(9).rs).kind)
"""


def test_pure_python_fallback_selected_by_env():
    env = dict(os.environ, POLYUNI_NO_NUMBA="1")
    res = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True)
    from polyuni.isomorphism import canonical_code
    from polyuni.connectivity import connectivity_oracle

    expected = f"{canonical_code(prism(9)).hex()} {connectivity_oracle(prism(9).rs).kind}"
    assert res.stdout.strip() == expected
