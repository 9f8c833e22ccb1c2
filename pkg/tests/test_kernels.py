import os
import subprocess
import sys

import numpy as np
import pytest

from moddouble import kernels
from moddouble.kernels import _pykernels
from moddouble.weyl import Lattice

try:
    from moddouble.kernels import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernel not built")


def _random_monomials(rng, count, n, lo=-3, hi=3):
    return [tuple(int(v) for v in rng.integers(lo, hi + 1, size=n)) for _ in range(count)]


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
    if _ckernels is not None and not os.environ.get("MODDOUBLE_PURE_PYTHON"):
        assert kernels.BACKEND == "cython"


@needs_c
@pytest.mark.parametrize("arity", [1, 2, 3])
def test_compiled_matches_python(arity):
    rng = np.random.default_rng(7 + arity)
    lat = Lattice.cyclic().power(arity)
    weights = tuple([1, 1, -1, -1] + [0] * (lat.n - 4))
    for _ in range(200):
        xs = _random_monomials(rng, 6, lat.n)
        ys = _random_monomials(rng, 5, lat.n)
        assert _ckernels.pair_product(xs, ys, lat.skew) == _pykernels.pair_product(xs, ys, lat.skew)
        for d in (-1, 0, 3):
            assert (_ckernels.pair_product(xs, ys, lat.skew, weights, d)
                    == _pykernels.pair_product(xs, ys, lat.skew, weights, d))
        assert (_ckernels.monomial_phase(xs[0], ys[0], lat.skew)
                == _pykernels.monomial_phase(xs[0], ys[0], lat.skew))


@needs_c
def test_compiled_kernel_survives_many_calls():
    # guards against reference-count errors on cached small integers
    code = (
        "from moddouble.kernels import _ckernels as c\n"
        "from moddouble.weyl import Lattice\n"
        "S = Lattice.cyclic().skew\n"
        "for t in range(200000):\n"
        "    c.pair_product([(t % 7 - 3, 1, -2, 0)], [(0, -1, t % 5 - 2, 3)], S)\n"
        "print('done')\n"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, timeout=300)
    assert out.returncode == 0, out.stderr[-2000:]
    assert out.stdout.strip() == "done"


def test_pure_python_fallback_selected_by_environment():
    env = dict(os.environ, MODDOUBLE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import moddouble; print(moddouble.BACKEND)"],
                         capture_output=True, text=True, env=env, timeout=60)
    assert out.stdout.strip() == "python"


def test_truncation_skips_high_degree_pairs():
    S = Lattice.cyclic().skew
    out = _pykernels.pair_product([(1, 0, 0, 0), (2, 0, 0, 0)], [(0, 1, 0, 0)], S, (1, 1, 1, 1), 2)
    assert set(out) == {(1, 1, 0, 0)}


@needs_c
@pytest.mark.parametrize("suite", ["factorization", "yang-baxter"])
def test_reports_identical_across_backends(suite):
    outs = []
    for pure in (True, False):
        env = dict(os.environ)
        env.pop("MODDOUBLE_PURE_PYTHON", None)
        if pure:
            env["MODDOUBLE_PURE_PYTHON"] = "1"
        res = subprocess.run([sys.executable, "-m", "moddouble", "verify", "--suite", suite,
                              "--format", "json"], capture_output=True, env=env, timeout=300)
        assert res.returncode == 0
        outs.append(res.stdout)
    assert outs[0] == outs[1]
