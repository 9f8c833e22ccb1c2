"""Exact coefficient arithmetic.

Three number types live here:

* :class:`GaussRational` -- ``a + b*i`` with ``a, b`` rational.
* :class:`QScalar` -- rational functions of one formal variable ``q`` with
  Gaussian-rational coefficients, kept in a canonical reduced form so that
  equality (and in particular ``== 0``) is decidable.
* :class:`PhaseExp` -- Laurent polynomials ``c(tau)`` standing for the phase
  ``exp(i*pi*c(tau))``; the constant part is reduced modulo 2.

plus a small generic :class:`Laurent` polynomial (used for coefficients in
the formal variable ``b``) and helpers for finite double-precision complex
values.
"""
from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from numbers import Rational

import flint

__all__ = [
    "GaussRational",
    "QScalar",
    "PhaseExp",
    "Laurent",
    "PoleError",
    "as_complex",
    "parse_complex",
    "format_complex",
    "q_number",
]


class PoleError(ArithmeticError):
    """Raised when a rational function is evaluated at a zero of its denominator."""


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def coerce(cls, x) -> "GaussRational":
        if isinstance(x, GaussRational):
            return x
        if isinstance(x, complex):
            if x.real != int(x.real) or x.imag != int(x.imag):
                raise TypeError("only integral complex literals coerce exactly")
            return cls(int(x.real), int(x.imag))
        return cls(x)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def __add__(self, other):
        o = GaussRational.coerce(other)
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussRational.coerce(other))

    def __rsub__(self, other):
        return GaussRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussRational.coerce(other)
        return GaussRational(self.re * o.re - self.im * o.im,
                             self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussRational.coerce(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussRational(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        return GaussRational.coerce(other) / self

    def __eq__(self, other):
        try:
            o = GaussRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"({self.re} {sign} {_imag_str(abs(self.im))})"


def _imag_str(x: Fraction) -> str:
    if x == 1:
        return "i"
    if x == -1:
        return "-i"
    return f"{x}*i"


# ---------------------------------------------------------------------------
# Rational functions in q
# ---------------------------------------------------------------------------

_ZERO = flint.fmpq_poly([])
_ONE = flint.fmpq_poly([1])


def _valuation(p) -> int:
    """Index of the lowest nonzero coefficient (p must be nonzero)."""
    k = 0
    while p[k] == 0:
        k += 1
    return k


def _poly_str(coeffs: dict[int, GaussRational], var: str = "q") -> str:
    if not coeffs:
        return "0"
    parts = []
    for k in sorted(coeffs, reverse=True):
        c = coeffs[k]
        if k == 0:
            mono = ""
        elif k == 1:
            mono = var
        else:
            mono = f"{var}^{k}"
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    s = " + ".join(parts)
    return s.replace("+ -", "- ")


class QScalar:
    """Element of Q(i)(q) in canonical form ``q**val * (re + i*im) / den``.

    ``re``, ``im`` and ``den`` are :class:`flint.fmpq_poly` objects with

    * ``den`` monic with nonzero constant term,
    * ``re`` and ``im`` not both divisible by ``q``,
    * ``gcd(re, im, den) == 1``.

    Every element of the field has exactly one such representation (the
    denominator is real because any Gaussian denominator can be multiplied
    by its coefficient-wise conjugate), so structural equality is field
    equality. Zero is ``re = im = 0, den = 1, val = 0``.
    """

    __slots__ = ("re", "im", "den", "val")

    def __init__(self, re=_ZERO, im=_ZERO, den=_ONE, val: int = 0, *, _canonical=False):
        self.re = re
        self.im = im
        self.den = den
        self.val = val
        if not _canonical:
            self._normalize()

    # -- construction -----------------------------------------------------

    @classmethod
    def const(cls, x) -> "QScalar":
        if isinstance(x, QScalar):
            return x
        g = GaussRational.coerce(x)
        re = flint.fmpq_poly([flint.fmpq(g.re.numerator, g.re.denominator)]) if g.re else _ZERO
        im = flint.fmpq_poly([flint.fmpq(g.im.numerator, g.im.denominator)]) if g.im else _ZERO
        return cls(re, im, _ONE, 0, _canonical=True)

    @classmethod
    def zero(cls) -> "QScalar":
        return cls(_ZERO, _ZERO, _ONE, 0, _canonical=True)

    @classmethod
    def one(cls) -> "QScalar":
        return cls(_ONE, _ZERO, _ONE, 0, _canonical=True)

    @classmethod
    def qpow(cls, k: int) -> "QScalar":
        return cls(_ONE, _ZERO, _ONE, int(k), _canonical=True)

    @classmethod
    def laurent(cls, coeffs: dict) -> "QScalar":
        """Build ``sum c_k q**k`` from ``{k: c_k}`` (negative ``k`` allowed)."""
        coeffs = {int(k): GaussRational.coerce(c) for k, c in coeffs.items()}
        coeffs = {k: c for k, c in coeffs.items() if not c.is_zero()}
        if not coeffs:
            return cls.zero()
        lo = min(coeffs)
        hi = max(coeffs)
        re = [flint.fmpq(0)] * (hi - lo + 1)
        im = [flint.fmpq(0)] * (hi - lo + 1)
        for k, c in coeffs.items():
            re[k - lo] = flint.fmpq(c.re.numerator, c.re.denominator)
            im[k - lo] = flint.fmpq(c.im.numerator, c.im.denominator)
        return cls(flint.fmpq_poly(re), flint.fmpq_poly(im), _ONE, lo)

    @classmethod
    def i(cls) -> "QScalar":
        return cls.const(GaussRational(0, 1))

    # -- canonical form ---------------------------------------------------

    def _normalize(self):
        re, im, den = self.re, self.im, self.den
        if den.is_zero():
            raise ZeroDivisionError("QScalar with zero denominator")
        if re.is_zero() and im.is_zero():
            self.re, self.im, self.den, self.val = _ZERO, _ZERO, _ONE, 0
            return
        val = self.val
        m = min(_valuation(re) if not re.is_zero() else 1 << 30,
                _valuation(im) if not im.is_zero() else 1 << 30)
        if m:
            re = re.right_shift(m)
            im = im.right_shift(m)
            val += m
        d = _valuation(den)
        if d:
            den = den.right_shift(d)
            val -= d
        if den.degree() > 0:
            if re.is_zero():
                g = im.gcd(den)
            elif im.is_zero():
                g = re.gcd(den)
            else:
                g = re.gcd(im).gcd(den)
            if g.degree() > 0:
                re = re // g
                im = im // g
                den = den // g
        lc = den.leading_coefficient()
        if lc != 1:
            re = re / lc
            im = im / lc
            den = den / lc
        self.re, self.im, self.den, self.val = re, im, den, val

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def is_laurent(self) -> bool:
        return self.den.degree() == 0

    def is_constant(self) -> bool:
        return self.is_laurent() and (self.is_zero() or (
            self.val == 0 and self.re.degree() <= 0 and self.im.degree() <= 0))

    def constant_value(self) -> GaussRational:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return GaussRational(_frac(self.re[0]), _frac(self.im[0]))

    def laurent_coeffs(self) -> dict[int, GaussRational]:
        """``{k: c_k}`` for a Laurent polynomial; raises if there is a true denominator."""
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial in q")
        out = {}
        n = max(self.re.length(), self.im.length())
        for k in range(n):
            c = GaussRational(_frac(self.re[k]), _frac(self.im[k]))
            if not c.is_zero():
                out[k + self.val] = c
        return out

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QScalar):
            other = _try_const(other)
            if other is NotImplemented:
                return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        v = min(self.val, other.val)
        ar, ai = self.re, self.im
        br, bi = other.re, other.im
        if self.val > v:
            s = self.val - v
            ar, ai = ar.left_shift(s), ai.left_shift(s)
        if other.val > v:
            s = other.val - v
            br, bi = br.left_shift(s), bi.left_shift(s)
        if self.den == other.den:
            return QScalar(ar + br, ai + bi, self.den, v)
        g = self.den.gcd(other.den)
        da = self.den // g
        db = other.den // g
        return QScalar(ar * db + br * da, ai * db + bi * da, da * other.den, v)

    __radd__ = __add__

    def __neg__(self):
        return QScalar(-self.re, -self.im, self.den, self.val, _canonical=True)

    def __sub__(self, other):
        if not isinstance(other, QScalar):
            other = _try_const(other)
            if other is NotImplemented:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return QScalar.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, QScalar):
            other = _try_const(other)
            if other is NotImplemented:
                return NotImplemented
        if self.is_zero() or other.is_zero():
            return QScalar.zero()
        re = self.re * other.re - self.im * other.im
        im = self.re * other.im + self.im * other.re
        if self.den.degree() == 0 and other.den.degree() == 0:
            # both Laurent: the product of two q-free-at-0 numerators is q-free
            return QScalar(re, im, _ONE, self.val + other.val, _canonical=True)
        return QScalar(re, im, self.den * other.den, self.val + other.val)

    __rmul__ = __mul__

    def mul_qpow(self, k: int) -> "QScalar":
        """Multiply by ``q**k`` (no reduction needed)."""
        if k == 0 or self.is_zero():
            return self
        return QScalar(self.re, self.im, self.den, self.val + k, _canonical=True)

    def inverse(self) -> "QScalar":
        if self.is_zero():
            raise ZeroDivisionError("division by zero QScalar")
        # 1/(re + i im) = (re - i im) / (re^2 + im^2)
        norm = self.re * self.re + self.im * self.im
        return QScalar(self.den * self.re, -(self.den * self.im), norm, -self.val)

    def __truediv__(self, other):
        if not isinstance(other, QScalar):
            other = _try_const(other)
            if other is NotImplemented:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QScalar.const(other) / self

    def __pow__(self, n: int):
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        result = QScalar.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate_coeffs(self) -> "QScalar":
        """Complex-conjugate the coefficients, keeping ``q`` formal."""
        return QScalar(self.re, -self.im, self.den, self.val, _canonical=True)

    def substitute_qinv(self) -> "QScalar":
        """The rational function obtained by replacing ``q`` with ``1/q``."""
        n = max(self.re.length(), self.im.length(), 1) - 1
        dn = self.den.degree()
        re = flint.fmpq_poly(list(reversed(_pad(self.re, n + 1))))
        im = flint.fmpq_poly(list(reversed(_pad(self.im, n + 1))))
        den = flint.fmpq_poly(list(reversed(_pad(self.den, dn + 1))))
        # x(1/q) = q^-n * rev(x)
        return QScalar(re, im, den, -self.val - n + dn)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QScalar):
            try:
                other = QScalar.const(other)
            except TypeError:
                return NotImplemented
        return (self.val == other.val and self.re == other.re
                and self.im == other.im and self.den == other.den)

    def __hash__(self):
        return hash((self.val, tuple(self.re.coeffs()), tuple(self.im.coeffs()),
                     tuple(self.den.coeffs())))

    def __bool__(self):
        return not self.is_zero()

    # -- evaluation -------------------------------------------------------

    def evaluate(self, q0: complex, tol: float = 1e-14) -> complex:
        """Value at ``q = q0`` (Horner on numerator and denominator)."""
        q0 = as_complex(q0)
        if q0 == 0 and self.val < 0:
            raise PoleError(f"pole of {self} at q=0: factor q^{self.val}")
        d = _horner(self.den, q0)
        if abs(d) <= tol * max(1.0, _abs_sum(self.den, q0)):
            raise PoleError(f"pole of {self} at q={q0}: denominator {_poly_str(_coeff_dict(self.den))} vanishes")
        n = _horner(self.re, q0) + 1j * _horner(self.im, q0)
        return n * q0 ** self.val / d

    def evaluate_powersum(self, q0: complex, tol: float = 1e-14) -> complex:
        """Independent evaluation route: expand everything as explicit power sums."""
        q0 = as_complex(q0)
        num = 0j
        den = 0j
        for k, c in _coeff_dict(self.re, self.im).items():
            num += complex(c) * q0 ** (k + self.val)
        for k, c in _coeff_dict(self.den).items():
            den += complex(c) * q0 ** k
        if abs(den) <= tol:
            raise PoleError(f"pole of {self} at q={q0}")
        return num / den

    # -- display ----------------------------------------------------------

    def __str__(self):
        if self.is_zero():
            return "0"
        num = _coeff_dict(self.re, self.im)
        shift = self.val
        if shift >= 0:
            num = {k + shift: c for k, c in num.items()}
            den = _coeff_dict(self.den)
        else:
            den = {k - shift: c for k, c in _coeff_dict(self.den).items()}
        ns = _poly_str(num)
        if den == {0: GaussRational(1)}:
            return ns
        ds = _poly_str(den)
        if len(num) > 1:
            ns = f"({ns})"
        if len(den) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"QScalar({self})"


def _try_const(x):
    try:
        return QScalar.const(x)
    except TypeError:
        return NotImplemented


def _pad(p, n):
    c = list(p.coeffs())
    return c + [flint.fmpq(0)] * (n - len(c))


def _coeff_dict(re, im=None) -> dict[int, GaussRational]:
    out = {}
    n = re.length() if im is None else max(re.length(), im.length())
    for k in range(n):
        c = GaussRational(_frac(re[k]), _frac(im[k]) if im is not None else 0)
        if not c.is_zero():
            out[k] = c
    return out


def _horner(p, z: complex) -> complex:
    acc = 0j
    for c in reversed(p.coeffs()):
        acc = acc * z + float(c)
    return acc


def _abs_sum(p, z: complex) -> float:
    r = abs(z)
    return sum(abs(float(c)) * r ** k for k, c in enumerate(p.coeffs()))


def q_number(k: int) -> QScalar:
    """``q**k - q**-k``."""
    return QScalar.laurent({k: 1, -k: -1})


# ---------------------------------------------------------------------------
# Laurent polynomials with Gaussian-rational coefficients
# ---------------------------------------------------------------------------

class Laurent:
    """Sparse Laurent polynomial ``sum c_k x**k`` with Gaussian-rational ``c_k``."""

    __slots__ = ("terms", "var")

    def __init__(self, terms=None, var: str = "b"):
        self.var = var
        clean = {}
        for k, c in (terms or {}).items():
            c = GaussRational.coerce(c)
            if not c.is_zero():
                clean[int(k)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "b") -> "Laurent":
        return cls({k: c}, var)

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other) -> "Laurent":
        if isinstance(other, Laurent):
            return other
        return Laurent({0: other}, self.var)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out.get(k, GaussRational()) + c
        return Laurent(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({k: -c for k, c in self.terms.items()}, self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        o = self._coerce(other)
        out: dict[int, GaussRational] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                out[k1 + k2] = out.get(k1 + k2, GaussRational()) + c1 * c2
        return Laurent(out, self.var)

    __rmul__ = __mul__

    def substitute_power(self, s) -> "Laurent":
        """``x -> x**s`` for rational ``s`` (exponents must stay integral)."""
        s = Fraction(s)
        out = {}
        for k, c in self.terms.items():
            e = k * s
            if e.denominator != 1:
                raise ValueError(f"x^{k} -> x^{e} is not a Laurent monomial")
            out[int(e)] = c
        return Laurent(out, self.var)

    def __eq__(self, other):
        if isinstance(other, Laurent):
            return self.terms == other.terms
        try:
            return self.terms == self._coerce(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __str__(self):
        return _poly_str(self.terms, self.var)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Phases exp(i*pi*c(tau))
# ---------------------------------------------------------------------------

class PhaseExp:
    """Phase ``exp(i*pi*c(tau))`` stored as the Laurent polynomial ``c(tau)``.

    Only the ``tau**0`` coefficient is reduced (modulo 2); ``tau``-dependent
    parts are kept verbatim so that ``q**k = exp(i*pi*k*tau)`` stays distinct
    for every integer ``k``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for k, c in (coeffs or {}).items():
            if isinstance(c, GaussRational):
                if c.im != 0:
                    raise ValueError("phase exponents must have rational coefficients")
                c = c.re
            c = _frac(c)
            if c != 0:
                clean[int(k)] = c
        self.coeffs = clean

    @classmethod
    def from_laurent(cls, poly: Laurent) -> "PhaseExp":
        """Interpret a polynomial in ``b`` with even exponents as one in ``tau = b**2``."""
        out = {}
        for k, c in poly.terms.items():
            if k % 2:
                raise ValueError(f"b^{k} is not a power of tau = b^2")
            out[k // 2] = c
        return cls(out)

    def canonical(self) -> "PhaseExp":
        out = dict(self.coeffs)
        if 0 in out:
            out[0] = out[0] % 2
        return PhaseExp(out)

    def is_trivial(self) -> bool:
        return not self.canonical().coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return PhaseExp(out)

    def __neg__(self):
        return PhaseExp({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "PhaseExp":
        s = _frac(s)
        return PhaseExp({k: c * s for k, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, PhaseExp):
            return NotImplemented
        return self.canonical().coeffs == other.canonical().coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.canonical().coeffs.items())))

    def evaluate(self, tau: complex) -> complex:
        tau = as_complex(tau)
        s = sum(float(c) * tau ** k for k, c in self.coeffs.items())
        return cmath.exp(1j * math.pi * s)

    def __str__(self):
        return _poly_str({k: GaussRational(c) for k, c in self.coeffs.items()}, "tau")

    def __repr__(self):
        return f"PhaseExp({self})"


# ---------------------------------------------------------------------------
# Complex double helpers
# ---------------------------------------------------------------------------

def as_complex(x) -> complex:
    z = complex(x)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite complex value {z!r}")
    return z


_COMPLEX_RE = re.compile(
    r"""^\s*
    (?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?
    \s*
    (?:(?P<sign>[+-])\s*(?P<im>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij])?
    \s*$""",
    re.VERBOSE,
)


def parse_complex(s: str) -> complex:
    """Parse ``a``, ``a+bi``, ``a-bi``, ``bi`` or ``i`` into a finite complex."""
    text = s.strip().replace(" ", "")
    if not text:
        raise ValueError("empty complex literal")
    # pure imaginary forms: "2i", "-i", "+0.5i"
    m = re.fullmatch(r"([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[ij]", text)
    if m:
        mag = float(m.group(2)) if m.group(2) else 1.0
        return as_complex(complex(0.0, -mag if m.group(1) == "-" else mag))
    m = _COMPLEX_RE.match(text)
    if not m or m.group("re") is None:
        raise ValueError(f"malformed complex literal {s!r}")
    re_part = float(m.group("re"))
    im_part = 0.0
    if m.group("sign"):
        mag = float(m.group("im")) if m.group("im") else 1.0
        im_part = -mag if m.group("sign") == "-" else mag
    return as_complex(complex(re_part, im_part))


def format_complex(z: complex) -> str:
    """17-significant-digit rendering used in reports."""
    z = complex(z)
    sign = "-" if (z.imag < 0 or (z.imag == 0 and math.copysign(1, z.imag) < 0)) else "+"
    return f"{z.real:.17g}{sign}{abs(z.imag):.17g}i"
