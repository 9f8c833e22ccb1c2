"""Exact verification engine for the modular double of U_q(sl2).

Submodules: ``scalar`` (coefficient field), ``weyl`` (quantum-torus
algebras), ``chevalley`` (generators and central elements), ``qseries``
(the q-exponential), ``heiscalc`` (exponentials of Heisenberg generators),
``rmat`` (universal R-matrix), ``matoracle`` (clock-shift matrices),
``qdilog`` (the noncompact quantum dilogarithm) and ``cli``.
"""
from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
