"""Quantum-torus algebras: normal ordering on a lattice with an integer skew form.

A :class:`Lattice` fixes ``n`` invertible generators ``g_1..g_n`` with

    g_i g_j = q^(2 S[i][j]) g_j g_i ,     S antisymmetric, integer.

A :class:`WeylElement` is a finite sum of normal-ordered monomials
``g_1^x_1 ... g_n^x_n`` (Laurent exponents) with :class:`QScalar`
coefficients. Tensor products of lattices are block-diagonal skew forms, so
``C_q``, ``C_q (x) C_q`` and ``C_q^(x)3`` are all the same kind of object.

Cyclic lattice convention: with ``[p_n, p_(n+1)] = -2 pi i`` and
``w_n = exp(b p_n)``, ``q = exp(i pi b^2)`` one gets
``w_n w_(n+1) = q^-2 w_(n+1) w_n``, i.e. ``S[n][n+1] = -1`` (indices mod 4).
"""
from __future__ import annotations

from itertools import product as _iproduct
from typing import Iterable, Sequence

from . import kernels
from .scalar import QScalar

__all__ = [
    "Lattice",
    "WeylElement",
    "LatticeMismatch",
    "normal_product",
    "trace",
    "tensor_embed",
    "tensor",
    "permute_slots",
    "cartan_twist",
    "truncate",
    "commutator",
    "phi",
]


class LatticeMismatch(ValueError):
    pass


class Lattice:
    """Generator names plus the integer skew matrix of their commutation phases."""

    __slots__ = ("skew", "names", "n", "_key")

    def __init__(self, skew: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        n = len(skew)
        sk = tuple(tuple(int(v) for v in row) for row in skew)
        for i in range(n):
            if len(sk[i]) != n:
                raise ValueError("skew matrix must be square")
            for j in range(n):
                if sk[i][j] != -sk[j][i]:
                    raise ValueError(f"skew matrix not antisymmetric at ({i}, {j})")
        self.skew = sk
        self.n = n
        self.names = tuple(names) if names is not None else tuple(f"g{i + 1}" for i in range(n))
        if len(self.names) != n:
            raise ValueError("one name per generator required")
        self._key = (sk, self.names)

    @classmethod
    def cyclic(cls, sign: int = -1, names=("w1", "w2", "w3", "w4")) -> "Lattice":
        """Four generators, nearest neighbours (mod 4) skew-commuting.

        ``sign=-1`` is the adopted convention ``w_n w_(n+1) = q^-2 w_(n+1) w_n``;
        ``sign=+1`` gives the opposite orientation.
        """
        S = [[0] * 4 for _ in range(4)]
        for k in range(4):
            S[k][(k + 1) % 4] = sign
            S[(k + 1) % 4][k] = -sign
        return cls(S, names)

    @classmethod
    def weyl_pair(cls, power: int = 1, names=("u", "v")) -> "Lattice":
        """``u v = q^(2*power) v u``."""
        return cls([[0, power], [-power, 0]], names)

    def tensor(self, other: "Lattice") -> "Lattice":
        n, m = self.n, other.n
        S = [[0] * (n + m) for _ in range(n + m)]
        for i in range(n):
            S[i][:n] = self.skew[i]
        for i in range(m):
            S[n + i][n:] = other.skew[i]
        return Lattice(S, self.names + other.names)

    def power(self, arity: int) -> "Lattice":
        """``arity``-fold tensor power; generator names get a slot suffix."""
        n = self.n
        S = [[0] * (n * arity) for _ in range(n * arity)]
        names = []
        for s in range(arity):
            for i in range(n):
                S[s * n + i][s * n:(s + 1) * n] = self.skew[i]
            names.extend(f"{nm}_{s + 1}" for nm in self.names)
        return Lattice(S, names)

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        """``x . S . y``."""
        sk = self.skew
        return sum(x[i] * sk[i][j] * y[j] for i in range(self.n) if x[i]
                   for j in range(self.n) if y[j])

    def degree(self, x: Sequence[int], grading: Sequence[int]) -> int:
        return sum(w * e for w, e in zip(grading, x))

    def __eq__(self, other):
        return isinstance(other, Lattice) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Lattice(n={self.n}, names={self.names})"


def phi(lattice: Lattice, x: Sequence[int]) -> int:
    """q-exponent relating the ordered monomial to the symmetric exponential.

    ``g_1^x_1 ... g_n^x_n = q^phi(x) exp(b sum x_i p_i)`` with
    ``phi(x) = sum_{i<j} S[i][j] x_i x_j``.
    """
    sk = lattice.skew
    n = lattice.n
    return sum(sk[i][j] * x[i] * x[j] for i in range(n) if x[i] for j in range(i + 1, n))


def _coerce_scalar(c) -> QScalar:
    return c if isinstance(c, QScalar) else QScalar.const(c)


class WeylElement:
    """Finite linear combination of normal-ordered monomials on a lattice."""

    __slots__ = ("lattice", "terms")

    def __init__(self, lattice: Lattice, terms: dict | None = None):
        self.lattice = lattice
        clean = {}
        if terms:
            n = lattice.n
            for mono, c in terms.items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != n:
                    raise ValueError(f"monomial {mono} does not match lattice of rank {n}")
                c = _coerce_scalar(c)
                if not c.is_zero():
                    clean[mono] = c
        self.terms = clean

    @classmethod
    def _raw(cls, lattice: Lattice, terms: dict) -> "WeylElement":
        obj = cls.__new__(cls)
        obj.lattice = lattice
        obj.terms = terms
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, lattice: Lattice) -> "WeylElement":
        return cls._raw(lattice, {})

    @classmethod
    def scalar(cls, lattice: Lattice, c=1) -> "WeylElement":
        return cls(lattice, {(0,) * lattice.n: c})

    @classmethod
    def one(cls, lattice: Lattice) -> "WeylElement":
        return cls.scalar(lattice, 1)

    @classmethod
    def monomial(cls, lattice: Lattice, exps: Sequence[int], coeff=1) -> "WeylElement":
        return cls(lattice, {tuple(exps): coeff})

    @classmethod
    def gen(cls, lattice: Lattice, index: int | str, power: int = 1) -> "WeylElement":
        """Generator ``index`` (0-based position or name) raised to ``power``."""
        if isinstance(index, str):
            index = lattice.names.index(index)
        exps = [0] * lattice.n
        exps[index] = power
        return cls._raw(lattice, {tuple(exps): QScalar.one()})

    @classmethod
    def gens(cls, lattice: Lattice) -> list["WeylElement"]:
        return [cls.gen(lattice, i) for i in range(lattice.n)]

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __len__(self):
        return len(self.terms)

    def coefficient(self, exps: Sequence[int]) -> QScalar:
        return self.terms.get(tuple(exps), QScalar.zero())

    def support(self) -> list[tuple]:
        return sorted(self.terms)

    def degrees(self, grading: Sequence[int]) -> list[int]:
        return sorted({self.lattice.degree(m, grading) for m in self.terms})

    def min_degree(self, grading: Sequence[int]) -> int | None:
        d = self.degrees(grading)
        return d[0] if d else None

    def homogeneous_part(self, degree: int, grading: Sequence[int]) -> "WeylElement":
        lat = self.lattice
        return WeylElement._raw(lat, {m: c for m, c in self.terms.items()
                                      if lat.degree(m, grading) == degree})

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "WeylElement"):
        if self.lattice != other.lattice:
            raise LatticeMismatch(f"{self.lattice!r} vs {other.lattice!r}")

    def __add__(self, other):
        if not isinstance(other, WeylElement):
            other = WeylElement.scalar(self.lattice, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            prev = out.get(m)
            if prev is None:
                out[m] = c
            else:
                s = prev + c
                if s.is_zero():
                    del out[m]
                else:
                    out[m] = s
        return WeylElement._raw(self.lattice, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement._raw(self.lattice, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, WeylElement):
            other = WeylElement.scalar(self.lattice, other)
        return self + (-other)

    def __rsub__(self, other):
        return WeylElement.scalar(self.lattice, other) - self

    def scale(self, c) -> "WeylElement":
        c = _coerce_scalar(c)
        if c.is_zero():
            return WeylElement.zero(self.lattice)
        return WeylElement._raw(self.lattice, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return normal_product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if isinstance(other, WeylElement):
            return self * other.inverse()
        return self.scale(_coerce_scalar(other).inverse())

    def inverse(self) -> "WeylElement":
        """Inverse of a single monomial ``c * g^x`` (general elements are not invertible here)."""
        if len(self.terms) != 1:
            raise ValueError("only monomials are invertible")
        (x, c), = self.terms.items()
        neg = tuple(-e for e in x)
        # (g^x)(g^-x) = q^(2 sum_{j>i} S_ji x_j (-x_i)) g^0
        ph = kernels.monomial_phase(x, neg, self.lattice.skew)
        return WeylElement._raw(self.lattice, {neg: c.inverse().mul_qpow(-ph)})

    def __pow__(self, n: int):
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        result = WeylElement.one(self.lattice)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def map_coefficients(self, fn) -> "WeylElement":
        return WeylElement(self.lattice, {m: fn(c) for m, c in self.terms.items()})

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return self.lattice == other.lattice and self.terms == other.terms
        if isinstance(other, (int, QScalar)):
            return self == WeylElement.scalar(self.lattice, other)
        return NotImplemented

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda e: (sum(abs(v) for v in e), e)):
            c = self.terms[m]
            mono = "*".join(
                nm if e == 1 else f"{nm}^{e}" for nm, e in zip(self.lattice.names, m) if e)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                if " " in cs and not (cs.startswith("(") and cs.endswith(")")):
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"WeylElement({self})"


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

def _den_classes(coeffs: list[QScalar]):
    ids = []
    seen: dict = {}
    dens = []
    for c in coeffs:
        key = tuple(c.den.coeffs())
        k = seen.get(key)
        if k is None:
            k = seen[key] = len(dens)
            dens.append(c.den)
        ids.append(k)
    return ids, dens


def _accumulate(contribs, ca, cb, ida, idb, dens_a, dens_b) -> QScalar:
    """Sum ``ca[ia] * cb[ib] * q^k`` exactly, grouping equal denominators."""
    if len(contribs) == 1:
        ia, ib, k = contribs[0]
        return (ca[ia] * cb[ib]).mul_qpow(k)
    groups: dict = {}
    for ia, ib, k in contribs:
        a = ca[ia]
        b = cb[ib]
        if a.im.is_zero() and b.im.is_zero():
            re = a.re * b.re
            im = None
        elif a.im.is_zero():
            re = a.re * b.re
            im = a.re * b.im
        elif b.im.is_zero():
            re = a.re * b.re
            im = a.im * b.re
        else:
            re = a.re * b.re - a.im * b.im
            im = a.re * b.im + a.im * b.re
        v = a.val + b.val + k
        key = (ida[ia], idb[ib])
        g = groups.get(key)
        if g is None:
            groups[key] = [re, im, v]
            continue
        gre, gim, gv = g
        if v < gv:
            s = gv - v
            gre = gre.left_shift(s)
            gim = gim.left_shift(s) if gim is not None else None
            gv = v
        elif v > gv:
            s = v - gv
            re = re.left_shift(s)
            im = im.left_shift(s) if im is not None else None
        gre = gre + re
        if im is not None:
            gim = im if gim is None else gim + im
        g[0], g[1], g[2] = gre, gim, gv
    total = QScalar.zero()
    for (da, db), (re, im, v) in groups.items():
        den = dens_a[da] * dens_b[db]
        if im is None:
            im = re * 0
        total = total + QScalar(re, im, den, v)
    return total


def normal_product(a: WeylElement, b: WeylElement, *, grading: Sequence[int] | None = None,
                   max_degree: int | None = None) -> WeylElement:
    """Product ``a * b`` in normal order.

    With ``grading`` and ``max_degree`` the product is truncated on the fly:
    monomial pairs whose graded degree exceeds ``max_degree`` are never formed.
    """
    if a.lattice != b.lattice:
        raise LatticeMismatch(f"{a.lattice!r} vs {b.lattice!r}")
    if not a.terms or not b.terms:
        return WeylElement.zero(a.lattice)
    lat = a.lattice
    ma = list(a.terms)
    mb = list(b.terms)
    ca = [a.terms[m] for m in ma]
    cb = [b.terms[m] for m in mb]
    weights = None
    if grading is not None and max_degree is not None:
        weights = tuple(int(w) for w in grading)
    grouped = kernels.pair_product(ma, mb, lat.skew, weights, int(max_degree or 0))
    ida, dens_a = _den_classes(ca)
    idb, dens_b = _den_classes(cb)
    out = {}
    for key, contribs in grouped.items():
        c = _accumulate(contribs, ca, cb, ida, idb, dens_a, dens_b)
        if not c.is_zero():
            out[key] = c
    return WeylElement._raw(lat, out)


def commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    return a * b - b * a


def product_chain(factors: Iterable[WeylElement], *, grading=None, max_degree=None) -> WeylElement:
    it = iter(factors)
    acc = next(it)
    for f in it:
        acc = normal_product(acc, f, grading=grading, max_degree=max_degree)
    return acc


# ---------------------------------------------------------------------------
# trace, truncation, tensor structure
# ---------------------------------------------------------------------------

def trace(a: WeylElement) -> QScalar:
    """Coefficient of the unit monomial."""
    return a.terms.get((0,) * a.lattice.n, QScalar.zero())


def truncate(a: WeylElement, N: int, grading: Sequence[int]) -> WeylElement:
    """Drop monomials of graded degree above ``N``."""
    if N < 0:
        raise ValueError("truncation degree must be non-negative")
    lat = a.lattice
    return WeylElement._raw(lat, {m: c for m, c in a.terms.items() if lat.degree(m, grading) <= N})


def tensor_embed(a: WeylElement, slot: int, arity: int) -> WeylElement:
    """``1 (x) .. (x) a (x) .. (x) 1`` with ``a`` in position ``slot`` (0-based)."""
    if not 0 <= slot < arity:
        raise ValueError(f"slot {slot} out of range for arity {arity}")
    base = a.lattice
    lat = base.power(arity)
    n = base.n
    pad_l = (0,) * (n * slot)
    pad_r = (0,) * (n * (arity - slot - 1))
    return WeylElement._raw(lat, {pad_l + m + pad_r: c for m, c in a.terms.items()})


def tensor(*factors: WeylElement) -> WeylElement:
    """``a_1 (x) a_2 (x) ...`` for elements on one common base lattice."""
    base = factors[0].lattice
    for f in factors:
        if f.lattice != base:
            raise LatticeMismatch("tensor factors must share a base lattice")
    lat = base.power(len(factors))
    out = {}
    for combo in _iproduct(*(f.terms.items() for f in factors)):
        mono = sum((m for m, _ in combo), ())
        c = combo[0][1]
        for _, ci in combo[1:]:
            c = c * ci
        out[mono] = c
    return WeylElement(lat, out)


def permute_slots(a: WeylElement, perm: Sequence[int], block: int) -> WeylElement:
    """Move tensor slot ``s`` to position ``perm[s]``; slots have ``block`` generators.

    Different slots commute, so this is a relabelling without phases. The
    lattice must be a tensor power (all slots with identical skew blocks).
    """
    arity = len(perm)
    if a.lattice.n != block * arity:
        raise ValueError("lattice rank is not block * arity")
    out = {}
    for m, c in a.terms.items():
        new = [0] * len(m)
        for s in range(arity):
            t = perm[s]
            new[t * block:(t + 1) * block] = m[s * block:(s + 1) * block]
        out[tuple(new)] = c
    return WeylElement._raw(a.lattice, out)


# ---------------------------------------------------------------------------
# Cartan twist
# ---------------------------------------------------------------------------

K_VECTOR = (0, 1, 1, 0)        # K  ~ exp(b (p2 + p3)) ~ q w2 w3
KPRIME_VECTOR = (1, 0, 0, 1)   # K' ~ exp(b (p1 + p4)) ~ q w4 w1


def slot_vector(vec: Sequence[int], slot: int, arity: int) -> tuple:
    n = len(vec)
    out = [0] * (n * arity)
    out[slot * n:(slot + 1) * n] = vec
    return tuple(out)


def cartan_twist(a: WeylElement, k: int, h1: Sequence[int] | None = None,
                 h2: Sequence[int] | None = None) -> WeylElement:
    """Conjugation by the formal element ``exp(k/(2 pi i) * H1 H2)``.

    ``H1 = h1 . p`` and ``H2 = h2 . p`` are commuting linear forms given as
    exponent vectors on the (tensor) lattice; the defaults are ``p2 + p3`` in
    slot 1 and ``p1 + p4`` in slot 2 of ``C_q (x) C_q``. On symmetric
    exponentials the twist is linear:

        exp(b x.p)  ->  exp(b (x + k n2 h1 + k n1 h2).p),   n_i = h_i . S . x

    and the ordered monomials pick up ``q^(phi(x) - phi(x'))``.
    """
    lat = a.lattice
    if h1 is None:
        h1 = slot_vector(K_VECTOR, 0, lat.n // 4)
    if h2 is None:
        h2 = slot_vector(KPRIME_VECTOR, 1, lat.n // 4)
    if len(h1) != lat.n or len(h2) != lat.n:
        raise ValueError("Cartan vectors must match the lattice rank")
    if lat.pairing(h1, h2) != 0:
        raise ValueError("Cartan linear forms do not commute")
    if k == 0:
        return a
    n = lat.n
    sk = lat.skew
    h1S = [sum(h1[i] * sk[i][j] for i in range(n)) for j in range(n)]
    h2S = [sum(h2[i] * sk[i][j] for i in range(n)) for j in range(n)]
    out = {}
    for x, c in a.terms.items():
        n1 = sum(h1S[j] * x[j] for j in range(n))
        n2 = sum(h2S[j] * x[j] for j in range(n))
        if n1 == 0 and n2 == 0:
            y = x
            c2 = c
        else:
            y = tuple(x[j] + k * n2 * h1[j] + k * n1 * h2[j] for j in range(n))
            c2 = c.mul_qpow(phi(lat, x) - phi(lat, y))
        prev = out.get(y)
        out[y] = c2 if prev is None else prev + c2
    return WeylElement(lat, out)
