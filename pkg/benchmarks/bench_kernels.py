"""Compare the compiled and pure-Python normal-ordering kernels.

Two measurements:

* the raw ``pair_product`` kernel on random monomial sets of the sizes met
  in the R-matrix suites (rank 8 and rank 12 lattices);
* end-to-end suite runtimes, each backend in a fresh interpreter
  (``MODDOUBLE_PURE_PYTHON=1`` selects the fallback).

Usage: python benchmarks/bench_kernels.py [--repeat R] [--suites a,b,...]
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from moddouble.kernels import _pykernels
from moddouble.weyl import Lattice

try:
    from moddouble.kernels import _ckernels
except ImportError:
    _ckernels = None


def _monomials(rng, count, n):
    return [tuple(int(v) for v in rng.integers(-3, 4, size=n)) for _ in range(count)]


def bench_kernel(repeat: int) -> None:
    rng = np.random.default_rng(0)
    print(f"{'workload':34} {'python [ms]':>12} {'cython [ms]':>12} {'speedup':>8}")
    for arity, na, nb in ((2, 200, 200), (2, 1000, 100), (3, 400, 400)):
        lat = Lattice.cyclic().power(arity)
        xs, ys = _monomials(rng, na, lat.n), _monomials(rng, nb, lat.n)
        weights = tuple([2] * 4 + [1] * 4 + [0] * (lat.n - 8))
        for trunc in (False, True):
            args = (xs, ys, lat.skew) + ((weights, 4) if trunc else ())
            label = f"rank {lat.n}, {na}x{nb}{' truncated' if trunc else ''}"
            tp = min(timeit.repeat(lambda: _pykernels.pair_product(*args), number=1, repeat=repeat))
            if _ckernels is None:
                print(f"{label:34} {tp * 1e3:12.2f} {'n/a':>12} {'n/a':>8}")
                continue
            assert _ckernels.pair_product(*args) == _pykernels.pair_product(*args)
            tc = min(timeit.repeat(lambda: _ckernels.pair_product(*args), number=1, repeat=repeat))
            print(f"{label:34} {tp * 1e3:12.2f} {tc * 1e3:12.2f} {tp / tc:8.1f}")


_SUITE_SCRIPT = """
import sys, time
from moddouble import BACKEND, suites
t0 = time.perf_counter()
rep = suites.run_suite(sys.argv[1])
print(BACKEND, rep.ok, time.perf_counter() - t0)
"""


def bench_suites(names) -> None:
    print(f"\n{'suite':16} {'python [s]':>11} {'cython [s]':>11} {'speedup':>8}")
    for name in names:
        times = {}
        for backend, env_extra in (("python", {"MODDOUBLE_PURE_PYTHON": "1"}), ("cython", {})):
            env = dict(os.environ)
            env.pop("MODDOUBLE_PURE_PYTHON", None)
            env.update(env_extra)
            out = subprocess.run([sys.executable, "-c", _SUITE_SCRIPT, name], env=env,
                                 capture_output=True, text=True, check=True).stdout.split()
            got_backend, ok, secs = out[0], out[1] == "True", float(out[2])
            if not ok:
                raise SystemExit(f"suite {name} failed under {got_backend}")
            times[got_backend] = secs
        py, cy = times.get("python"), times.get("cython")
        if cy is None:
            print(f"{name:16} {py:11.2f} {'n/a':>11} {'n/a':>8}")
        else:
            print(f"{name:16} {py:11.2f} {cy:11.2f} {py / cy:8.2f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--suites", default="factorization,intertwining,yang-baxter,pentagon")
    args = ap.parse_args()
    bench_kernel(args.repeat)
    bench_suites([s for s in args.suites.split(",") if s])


if __name__ == "__main__":
    main()
