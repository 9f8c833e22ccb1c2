"""Truncated q-exponent ``s_q`` and its Weyl-pair identities.

``s_q(w) = prod_{n>=0} (1 + q^(2n+1) w)`` as a formal power series in ``w``
whose coefficients are rational functions of ``q``. Three independent
constructions of the coefficients are provided:

* ``"sum"``: the closed form ``c_k = (-1)^k q^(k(k-1)/2) / prod_{j<=k} (q^j - q^-j)``;
* ``"product"``: the recursion forced by ``s(w) = (1 + q w) s(q^2 w)``,
  which characterises the infinite product as a formal series;
* ``"explog"``: ``exp(sum_{k>=1} (-1)^k w^k / (k (q^k - q^-k)))`` expanded by
  the Taylor series of ``exp`` on truncated power series.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .report import SuiteReport, exact_record
from .scalar import QScalar, q_number
from .weyl import Lattice, WeylElement, normal_product, truncate

FORMS = ("product", "sum", "explog")

__all__ = ["FORMS", "TruncSeries", "sq", "sq_coefficients", "finite_product_coefficients",
           "check_forms", "check_schutzenberger", "check_pentagon"]


class NonNilpotentArgument(ValueError):
    """The argument of ``s_q`` has a term of graded degree < 1."""


# ---------------------------------------------------------------------------
# scalar coefficient sequences
# ---------------------------------------------------------------------------

def _sum_coefficients(N: int) -> list[QScalar]:
    out = [QScalar.one()]
    den = QScalar.one()
    for k in range(1, N + 1):
        den = den * q_number(k)
        sign = -1 if k % 2 else 1
        out.append(QScalar.qpow(k * (k - 1) // 2) * sign / den)
    return out


def _product_coefficients(N: int) -> list[QScalar]:
    # s(w) = (1 + q w) s(q^2 w)  =>  c_k (1 - q^(2k)) = q^(2k-1) c_(k-1)
    out = [QScalar.one()]
    for k in range(1, N + 1):
        out.append(out[-1] * QScalar.qpow(2 * k - 1) / (1 - QScalar.qpow(2 * k)))
    return out


def _series_mul(a: list[QScalar], b: list[QScalar], N: int) -> list[QScalar]:
    out = [QScalar.zero()] * (N + 1)
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j in range(0, N + 1 - i):
            if j < len(b) and not b[j].is_zero():
                out[i + j] = out[i + j] + ai * b[j]
    return out


def _explog_coefficients(N: int) -> list[QScalar]:
    L = [QScalar.zero()] + [QScalar.const(Fraction((-1) ** k, k)) / q_number(k)
                            for k in range(1, N + 1)]
    total = [QScalar.one()] + [QScalar.zero()] * N
    power = [QScalar.one()] + [QScalar.zero()] * N
    # L has no constant term, so L^m starts at t^m and the Taylor sum stops at m = N
    for m in range(1, N + 1):
        power = _series_mul(power, L, N)
        inv = QScalar.const(Fraction(1, factorial(m)))
        total = [t + p * inv for t, p in zip(total, power)]
    return total


_COEFF = {"sum": _sum_coefficients, "product": _product_coefficients,
          "explog": _explog_coefficients}


def sq_coefficients(N: int, form: str = "sum") -> list[QScalar]:
    """Coefficients ``c_0..c_N`` of ``s_q(w) = sum c_k w^k`` built in ``form``."""
    if form not in _COEFF:
        raise ValueError(f"unknown form {form!r}; expected one of {FORMS}")
    if N < 0:
        raise ValueError("N must be non-negative")
    return _COEFF[form](N)


def finite_product_coefficients(M: int, N: int) -> list[QScalar]:
    """Coefficients of ``prod_{n<M} (1 + q^(2n+1) t)`` up to ``t^N``.

    These are Laurent polynomials; they agree with the formal ``s_q``
    coefficients modulo ``q^(2M+1)`` (as power series in ``q``).
    """
    coeffs = [QScalar.one()] + [QScalar.zero()] * N
    for n in range(M):
        a = QScalar.qpow(2 * n + 1)
        coeffs = [coeffs[0]] + [coeffs[k] + a * coeffs[k - 1] for k in range(1, N + 1)]
    return coeffs


# ---------------------------------------------------------------------------
# series in a Weyl algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TruncSeries:
    body: WeylElement
    bound: int
    grading: tuple

    def __post_init__(self):
        lat = self.body.lattice
        if any(lat.degree(m, self.grading) > self.bound for m in self.body.terms):
            raise ValueError("series body exceeds its truncation bound")

    def truncate(self, M: int) -> "TruncSeries":
        if M > self.bound:
            raise ValueError("cannot raise the truncation bound")
        return TruncSeries(truncate(self.body, M, self.grading), M, self.grading)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        if other.grading != self.grading:
            raise ValueError("gradings differ")
        N = min(self.bound, other.bound)
        body = normal_product(self.body, other.body, grading=self.grading, max_degree=N)
        return TruncSeries(body, N, self.grading)

    def __sub__(self, other: "TruncSeries") -> WeylElement:
        N = min(self.bound, other.bound)
        return truncate(self.body, N, self.grading) - truncate(other.body, N, self.grading)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.bound == other.bound and self.grading == other.grading
                and self.body == other.body)


def sq(arg: WeylElement, N: int, form: str = "sum", grading: Sequence[int] | None = None
       ) -> TruncSeries:
    """``s_q(arg)`` truncated at graded degree ``N``.

    ``grading`` defaults to total degree. Every monomial of ``arg`` must
    have graded degree at least 1, so only ``arg^k`` with ``k <= N`` matter.
    """
    lat = arg.lattice
    grading = tuple(grading) if grading is not None else (1,) * lat.n
    if any(lat.degree(m, grading) < 1 for m in arg.terms):
        raise NonNilpotentArgument("argument of s_q has a term of graded degree < 1")
    coeffs = sq_coefficients(N, form)
    body = WeylElement.one(lat)
    power = WeylElement.one(lat)
    x = truncate(arg, N, grading)
    for k in range(1, N + 1):
        power = normal_product(power, x, grading=grading, max_degree=N)
        if power.is_zero():
            break
        body = body + power.scale(coeffs[k])
    return TruncSeries(body, N, grading)


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------

def check_forms(N: int = 8) -> SuiteReport:
    """Pairwise agreement of the three coefficient constructions up to ``w^N``."""
    rep = SuiteReport("forms")
    lat = Lattice([[0]], ["w"])
    w = WeylElement.gen(lat, 0)
    series = {f: sq(w, N, f) for f in FORMS}
    for a, b in (("product", "sum"), ("product", "explog"), ("sum", "explog")):
        rep.add(exact_record(f"sq-forms:{a}={b}", "product, sum and explog forms of s_q agree",
                             series[a] - series[b], degree=N, grading=(1,)))
    return rep


def _pair(power: int = 1):
    lat = Lattice.weyl_pair(power)
    u, v = WeylElement.gens(lat)
    return lat, u, v, (1, 1)


def check_schutzenberger(N: int = 6, *, controls: bool = True) -> SuiteReport:
    """``s_q(u) s_q(v) = s_q(u + v)`` for ``u v = q^2 v u``, truncated at ``N``.

    The negative control repeats the computation with ``u v = q^4 v u``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    rep = SuiteReport("schutzenberger")
    cases = [(1, "zero")] + ([(2, "nonzero")] if controls else [])
    for power, expect in cases:
        lat, u, v, g = _pair(power)
        res = (sq(u, N, grading=g) * sq(v, N, grading=g)) - sq(u + v, N, grading=g)
        rep.add(exact_record(
            "schutzenberger" if power == 1 else "schutzenberger:control-q4",
            "s_q(u) s_q(v) = s_q(u+v), uv = q^2 vu" if power == 1 else "same with uv = q^4 vu",
            res, degree=N, grading=g, expect=expect,
            first_nonzero_degree=res.min_degree(g)))
    return rep


def check_pentagon(N: int = 6, *, controls: bool = True) -> SuiteReport:
    """``s_q(v) s_q(u) = s_q(u + v + q^-1 uv) = s_q(u) s_q(q^-1 uv) s_q(v)``.

    ``u`` and ``v`` have degree 1, so the middle argument has degree 2.
    The negative control drops the ``q^-1`` in the middle argument.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    rep = SuiteReport("pentagon")
    lat, u, v, g = _pair(1)
    uv = u * v
    m = uv.scale(QScalar.qpow(-1))
    lhs = sq(v, N, grading=g) * sq(u, N, grading=g)
    rhs1 = sq(u + v + m, N, grading=g)
    rhs2 = sq(u, N, grading=g) * sq(m, N, grading=g) * sq(v, N, grading=g)
    rep.add(exact_record("pentagon:sum", "s_q(v) s_q(u) = s_q(u + v + q^-1 uv)",
                         lhs - rhs1, degree=N, grading=g))
    rep.add(exact_record("pentagon:product", "s_q(v) s_q(u) = s_q(u) s_q(q^-1 uv) s_q(v)",
                         lhs - rhs2, degree=N, grading=g))
    if controls:
        bad = sq(u, N, grading=g) * sq(uv, N, grading=g) * sq(v, N, grading=g)
        res = lhs - bad
        rep.add(exact_record("pentagon:control-no-qinv", "s_q(v) s_q(u) = s_q(u) s_q(uv) s_q(v)",
                             res, degree=N, grading=g, expect="nonzero",
                             first_nonzero_degree=res.min_degree(g)))
    return rep
