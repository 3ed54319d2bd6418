"""Time the numba kernels against their plain Python sources.

    python benchmarks/bench_kernels.py [--repeat 5] [--sizes 8,16,32,64]
"""

from __future__ import annotations

import argparse
import time

from polyuni import kernels as K
from polyuni._accel import compiled
from polyuni.embedding import prism
from polyuni.kernels import canonical_body, dart_twins, separating_sets


def _best(fn, args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--sizes", default="8,16,32,64")
    args = parser.parse_args()
    kernels = {
        "dart_twins": (dart_twins, ()),
        "canonical_body": (canonical_body, ()),
        "separating_sets": (separating_sets, (3,)),
    }
    print(f"{'kernel':16s} {'p':>5s} {'python s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for name, (fn, extra) in kernels.items():
        py = getattr(fn, "py_func", fn)
        jit = compiled(fn)
        for n in (int(s) for s in args.sizes.split(",")):
            off, nb = prism(n).rs.arrays
            call = (off, nb) + extra
            jit(*call)  # compile outside the timed region
            helper = K._components_without
            K._components_without = getattr(helper, "py_func", helper)  # keep the python run pure
            try:
                t_py = _best(py, call, args.repeat)
            finally:
                K._components_without = helper
            t_jit = _best(jit, call, args.repeat)
            print(f"{name:16s} {2 * n:5d} {t_py:10.5f} {t_jit:10.5f} {t_py / t_jit:8.1f}")


if __name__ == "__main__":
    main()
