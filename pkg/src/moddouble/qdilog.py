"""Noncompact quantum dilogarithm ``psi(p)``.

Two representations are implemented:

* the contour integral

      psi(p) = exp( 1/4 * int_C exp(-i p xi / pi) / (sinh(b xi) sinh(xi / b)) dxi / xi )

  where ``C`` is the real axis passing above the third-order pole at
  ``xi = 0``. It converges for ``|Im p| / pi < Re(b + 1/b)``;
* the product ratio ``s_q(w) / s_qd(wd)`` with ``w = exp(b p)``,
  ``wd = exp(p / b)``, ``q = exp(i pi b^2)``, ``qd = exp(-i pi / b^2)``,
  valid when ``Im(b^2) > 0`` so that ``|q|, |qd| < 1``.

The contour is split into ``r <= |xi| <= Xi`` (Gauss-Legendre panels on the
odd combination of the two half-lines) and a small semicircle of radius
``r`` whose contribution is integrated term by term from the Laurent
expansion of the integrand.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .report import SuiteReport, numeric_record
from .scalar import as_complex

__all__ = ["PsiParams", "DecayError", "ProductInvalid", "QuadratureError", "psi_integral",
           "psi_product", "psi", "check_functional_equations", "cross_check"]


class DecayError(ValueError):
    """The integral representation does not converge at this ``p``."""


class ProductInvalid(ValueError):
    """``|q| >= 1`` or ``|qd| >= 1``: product representation invalid."""


class QuadratureError(ArithmeticError):
    """Panel doubling changed the result by more than the tolerance."""


@dataclass(frozen=True)
class PsiParams:
    b: complex
    cutoff: float | None = None     # Xi; chosen from the decay rate when None
    panel_width: float = 0.5
    nodes: int = 20
    radius: float = 0.25
    laurent_order: int = 8
    tol: float = 1e-11
    tail_tol: float = 1e-15
    kernel_sign: int = -1           # exp(kernel_sign * i p xi / pi) in the integrand

    def __post_init__(self):
        b = as_complex(self.b)
        object.__setattr__(self, "b", b)
        if b == 0:
            raise ValueError("b must be nonzero")
        if b.real == 0:
            raise ValueError("b must not be purely imaginary")
        if not 0 < self.radius < 1:
            raise ValueError("semicircle radius must lie in (0, 1)")
        if self.cutoff is not None and self.cutoff <= 1:
            raise ValueError("cutoff must exceed 1")
        if self.laurent_order < 2:
            raise ValueError("laurent_order must be at least 2")
        if self.kernel_sign not in (-1, 1):
            raise ValueError("kernel_sign must be +1 or -1")


def decay_rate(p: complex, b: complex) -> float:
    return (b + 1 / b).real - abs(p.imag) / math.pi


def _cutoff(delta: float, tail_tol: float) -> float:
    # |integrand| <= 2 e^{|Im p| xi/pi} / (xi |sinh(b xi) sinh(xi/b)|) ~ 8 e^{-delta xi} / xi
    xi = 2.0
    for _ in range(50):
        new = max(2.0, math.log(8.0 / (delta * xi * tail_tol)) / delta)
        if abs(new - xi) < 1e-6:
            break
        xi = new
    return xi


@lru_cache(maxsize=8)
def _gauss(n: int):
    return np.polynomial.legendre.leggauss(n)


def _real_part(p: complex, b: complex, r: float, Xi: float, width: float, nodes: int) -> complex:
    """``int_r^Xi [f(xi) + f(-xi)] dxi`` with ``f`` the full integrand."""
    npan = max(1, math.ceil((Xi - r) / width))
    edges = np.linspace(r, Xi, npan + 1)
    x, wts = _gauss(nodes)
    a, c = edges[:-1, None], edges[1:, None]
    xi = 0.5 * (c - a) * x[None, :] + 0.5 * (c + a)
    jac = 0.5 * (c - a)
    g = -2j * np.sin(p * xi / math.pi) / (xi * np.sinh(b * xi) * np.sinh(xi / b))
    return complex(np.sum(g * wts[None, :] * jac))


def _sinh_series(a: complex, n: int) -> np.ndarray:
    c = np.zeros(n, dtype=complex)
    for k in range(1, n, 2):
        c[k] = a ** k / math.factorial(k)
    return c


def _laurent(p: complex, b: complex, order: int) -> np.ndarray:
    """Coefficients ``g_j`` with integrand ``= sum_j g_j xi^(j-3)``, ``j < order + 3``."""
    n = order + 3
    m = n + 3
    den = np.convolve(_sinh_series(b, m), _sinh_series(1 / b, m))[:m]
    h = den[2:2 + n]                          # sinh sinh = xi^2 (h_0 + h_1 xi + ...)
    inv = np.zeros(n, dtype=complex)
    inv[0] = 1 / h[0]
    for k in range(1, n):
        inv[k] = -np.dot(h[1:k + 1], inv[k - 1::-1][:k]) / h[0]
    ex = np.array([(-1j * p / math.pi) ** k / math.factorial(k) for k in range(n)])
    return np.convolve(inv, ex)[:n]


def _semicircle(p: complex, b: complex, r: float, order: int) -> complex:
    """Integral over the upper half circle from ``-r`` to ``r``."""
    total = 0j
    for j, gj in enumerate(_laurent(p, b, order)):
        k = j - 3
        if k == -1:
            total += -1j * math.pi * gj
        elif k % 2 == 0:
            total += gj * 2 * r ** (k + 1) / (k + 1)
    return total


def _log_psi_integral(p: complex, params: PsiParams, width: float) -> complex:
    b = params.b
    if params.kernel_sign == 1:
        p = -p                               # exp(+i p xi/pi) is the -p integrand
    delta = decay_rate(p, b)
    Xi = params.cutoff or _cutoff(delta, params.tail_tol)
    body = _real_part(p, b, params.radius, Xi, width, params.nodes)
    return 0.25 * (body + _semicircle(p, b, params.radius, params.laurent_order))


def psi_integral(p, params: PsiParams | None = None, *, b=None) -> complex:
    """``psi(p)`` from the contour integral.

    Raises :class:`DecayError` outside the strip ``|Im p|/pi < Re(b + 1/b)``
    and :class:`QuadratureError` if halving the panel width moves the
    logarithm by more than ``params.tol``.
    """
    if params is None:
        if b is None:
            raise TypeError("give params or b")
        params = PsiParams(b=b)
    p = as_complex(p)
    b = params.b
    if b.real < 0:
        params = replace(params, b=-b)       # the integrand is even in b
    if decay_rate(p, params.b) <= 0:
        raise DecayError(f"|Im p|/pi = {abs(p.imag) / math.pi:.6g} >= Re(b + 1/b) = "
                         f"{(params.b + 1 / params.b).real:.6g}")
    coarse = _log_psi_integral(p, params, params.panel_width)
    fine = _log_psi_integral(p, params, params.panel_width / 2)
    if abs(fine - coarse) > params.tol:
        raise QuadratureError(f"panel halving changed log psi by {abs(fine - coarse):.3g}")
    return cmath.exp(fine)


def _factor_count(w: complex, q: complex, tail: float = 1e-17) -> int:
    """Smallest ``M`` with ``|q|^(2M+1) |w| < tail`` (the first dropped factor)."""
    aq, aw = abs(q), abs(w)
    if aw == 0:
        return 1
    M = math.ceil((math.log(tail / aw) / math.log(aq) - 1) / 2)
    return max(M, 8)


def _ratio(w: complex, wd: complex, q: complex, qd: complex, M: int) -> complex:
    n = 2 * np.arange(M) + 1
    num = np.prod(1 + q ** n * w)
    den = np.prod(1 + qd ** n * wd)
    return complex(num / den)


def psi_product(p, b, M: int | None = None) -> complex:
    """``s_q(e^{bp}) / s_qd(e^{p/b})`` truncated to ``M`` factors each.

    With ``M = None`` the count comes from the geometric tail bound and is
    confirmed by comparing against ``2M`` factors.
    """
    p, b = as_complex(p), as_complex(b)
    if b == 0:
        raise ValueError("b must be nonzero")
    q = cmath.exp(1j * math.pi * b * b)
    qd = cmath.exp(-1j * math.pi / (b * b))
    if abs(q) >= 1 or abs(qd) >= 1:
        raise ProductInvalid("product representation invalid: need |q| < 1 and |qd| < 1 "
                             "(Im b^2 > 0)")
    w = cmath.exp(b * p)
    wd = cmath.exp(p / b)
    if M is not None:
        return _ratio(w, wd, q, qd, int(M))
    M = max(_factor_count(w, q), _factor_count(wd, qd))
    if M > 2_000_000:
        raise ProductInvalid(f"product needs {M} factors; |q| too close to 1")
    val = _ratio(w, wd, q, qd, M)
    check = _ratio(w, wd, q, qd, 2 * M)
    if abs(val - check) > 1e-12 * max(1.0, abs(check)):
        raise QuadratureError(f"product truncation unstable: M vs 2M differ by {abs(val - check):.3g}")
    return val


def psi(p, b, method: str = "auto", params: PsiParams | None = None) -> complex:
    """``psi(p)``; ``auto`` uses the integral inside its strip, else the product."""
    p = as_complex(p)
    b = as_complex(b)
    if method == "integral":
        return psi_integral(p, params or PsiParams(b=b))
    if method == "product":
        return psi_product(p, b)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    bb = -b if b.real < 0 else b
    if decay_rate(p, bb) > 0.05:
        return psi_integral(p, params or PsiParams(b=b))
    return psi_product(p, b)


def cross_check(b, points, tol: float = 1e-8, *, controls: bool = True) -> SuiteReport:
    """Integral vs product and ``b <-> 1/b`` symmetry at each point."""
    b = as_complex(b)
    rep = SuiteReport("psi-cross-check")
    worst = worst_sym = 0.0
    for p in points:
        vi = psi_integral(p, b=b)
        vp = psi_product(p, b)
        worst = max(worst, abs(vi - vp) / abs(vp))
        worst_sym = max(worst_sym, abs(vi - psi_integral(p, b=1 / b)))
    rep.add(numeric_record("psi:integral=product", "psi(p) = s_q(e^{bp}) / s_qd(e^{p/b})",
                           worst, tol, points=len(points)))
    rep.add(numeric_record("psi:b<->1/b", "psi_b(p) = psi_{1/b}(p)", worst_sym, 1e-10,
                           points=len(points)))
    if controls:
        flipped = PsiParams(b=b, kernel_sign=1)
        worst_k = max(abs(psi_integral(p, flipped) - psi_product(p, b)) / abs(psi_product(p, b))
                      for p in points)
        rep.add(numeric_record(
            "psi:control-kernel-exp(+ip xi/pi)",
            "integral with exp(+i p xi/pi) equals s_q(e^{bp}) / s_qd(e^{p/b})",
            worst_k, tol, expect="nonzero"))
    return rep


def check_functional_equations(b, grid, tol: float = 1e-8) -> SuiteReport:
    """Shift equations of ``psi``.

    ``psi(p + 2 pi i b) (1 + q e^{bp}) = psi(p)`` and
    ``psi(p + 2 pi i / b) (1 + qd^-1 e^{p/b}) = psi(p)``; the two shifts
    commute, which is checked on ``p + 2 pi i (b + 1/b)``.
    """
    b = as_complex(b)
    q = cmath.exp(1j * math.pi * b * b)
    qd = cmath.exp(-1j * math.pi / (b * b))
    sb, sd = 2j * math.pi * b, 2j * math.pi / b
    r1 = r2 = r3 = 0.0
    for p in grid:
        p = as_complex(p)
        base = psi(p, b)
        a = psi(p + sb, b)
        d = psi(p + sd, b)
        both = psi(p + sb + sd, b)
        r1 = max(r1, abs(a * (1 + q * cmath.exp(b * p)) - base) / abs(base))
        r2 = max(r2, abs(d * (1 + cmath.exp(p / b) / qd) - base) / abs(base))
        via_b = a / (1 + cmath.exp((p + sb) / b) / qd)
        via_d = d / (1 + q * cmath.exp(b * (p + sd)))
        r3 = max(r3, abs(via_b - both) / abs(both), abs(via_d - both) / abs(both))
    rep = SuiteReport("psi-functional-equations")
    rep.add(numeric_record("psi:shift-b", "psi(p + 2 pi i b)(1 + q e^{bp}) = psi(p)", r1, tol))
    rep.add(numeric_record("psi:shift-1/b", "psi(p + 2 pi i/b)(1 + qd^-1 e^{p/b}) = psi(p)", r2, tol))
    rep.add(numeric_record("psi:double-shift", "both shift orders agree", r3, 1e-7))
    return rep
