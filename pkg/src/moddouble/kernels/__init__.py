"""Normal-ordering kernels.

The compiled extension ``_ckernels`` is used when it has been built and
``MODDOUBLE_PURE_PYTHON`` is unset; otherwise the pure-Python module with the
identical contract is used. ``BACKEND`` names the active choice.
"""
import os

from . import _pykernels

if os.environ.get("MODDOUBLE_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

pair_product = _impl.pair_product
monomial_phase = _impl.monomial_phase

__all__ = ["BACKEND", "pair_product", "monomial_phase"]
