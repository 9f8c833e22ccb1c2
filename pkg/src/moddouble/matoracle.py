"""Finite-dimensional clock-and-shift model of the cyclic Weyl algebra.

At ``q = exp(i pi m / N)`` the matrices ``U`` (cyclic shift) and ``V``
(clock, ``diag(omega^j)`` with ``omega = q^2``) satisfy ``U V = omega^-1 V U``,
which is the adopted orientation ``w1 w2 = q^-2 w2 w1``. The cyclic skew
form has rank 2, so

    W1 = U,  W2 = V,  W3 = z1 U^-1,  W4 = z2 V^-1

realises all four nearest-neighbour relations with ``W1 W3 = z1``,
``W2 W4 = z2`` central. Symbolic elements are evaluated monomial by
monomial, giving a numerical homomorphism check of the normal-ordering
engine.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .scalar import PoleError, as_complex
from .weyl import Lattice, WeylElement

__all__ = ["MatrixRep", "clock_shift", "realize_w", "evaluate", "relation_residuals",
           "random_element"]


def clock_shift(N: int, q0: complex | None = None) -> tuple[np.ndarray, np.ndarray]:
    """``(U, V)`` with ``V = diag(1, omega, .., omega^(N-1))`` and ``U V = omega^-1 V U``.

    ``omega = q0^2``; the default ``q0 = exp(i pi / N)`` gives ``omega = exp(2 pi i / N)``.
    """
    if N < 2:
        raise ValueError("dimension must be >= 2")
    if q0 is None:
        q0 = cmath.exp(1j * math.pi / N)
    omega = q0 * q0
    V = np.diag(omega ** np.arange(N)).astype(complex)
    # U e_j = e_(j+1):  (U V)(e_j) = omega^j e_(j+1),  (V U)(e_j) = omega^(j+1) e_(j+1)
    U = np.roll(np.eye(N, dtype=complex), 1, axis=0)
    return U, V


@dataclass
class MatrixRep:
    N: int
    m: int
    q0: complex
    z1: complex
    z2: complex
    W: list
    lattice: Lattice
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def omega(self) -> complex:
        return self.q0 * self.q0

    def power(self, i: int, e: int) -> np.ndarray:
        key = (i, e)
        if key not in self._cache:
            base = self.W[i] if e >= 0 else np.linalg.inv(self.W[i])
            self._cache[key] = np.linalg.matrix_power(base, abs(e))
        return self._cache[key]

    def monomial(self, exps) -> np.ndarray:
        out = np.eye(self.N, dtype=complex)
        for i, e in enumerate(exps):
            if e:
                out = out @ self.power(i, e)
        return out


def realize_w(N: int, z1=1.0, z2=1.0, m: int | None = None) -> MatrixRep:
    """Clock-and-shift realisation of ``C_q`` at ``q = exp(i pi m / N)``.

    ``m`` defaults to 1 and must be coprime to ``N`` so that ``q^2`` is a
    primitive ``N``-th root of unity.
    """
    z1, z2 = as_complex(z1), as_complex(z2)
    if z1 == 0 or z2 == 0:
        raise ValueError("central parameters must be nonzero")
    m = 1 if m is None else int(m)
    if math.gcd(m, N) != 1:
        raise ValueError(f"q = exp(i pi {m}/{N}) does not make q^2 a primitive {N}-th root")
    q0 = cmath.exp(1j * math.pi * m / N)
    U, V = clock_shift(N, q0)
    W = [U, V, z1 * np.linalg.inv(U), z2 * np.linalg.inv(V)]
    return MatrixRep(N=N, m=m, q0=q0, z1=z1, z2=z2, W=W, lattice=Lattice.cyclic())


def evaluate(a: WeylElement, rep: MatrixRep) -> np.ndarray:
    """``sum coeff(q0) W^x`` with monomials in normal (index) order."""
    if a.lattice != rep.lattice:
        raise ValueError("element does not live on the realised lattice")
    out = np.zeros((rep.N, rep.N), dtype=complex)
    for x in sorted(a.terms):
        c = a.terms[x]
        try:
            val = c.evaluate(rep.q0)
        except PoleError as exc:
            name = "*".join(f"{n}^{e}" for n, e in zip(a.lattice.names, x) if e) or "1"
            raise PoleError(f"coefficient of {name} has a pole at q = {rep.q0}: {exc}") from None
        out += val * rep.monomial(x)
    return out


def relation_residuals(rep: MatrixRep) -> dict[str, float]:
    """Spectral norms of the cyclic relations and of the central-element identities."""
    W = rep.W
    S = rep.lattice.skew
    res = {}
    for n in range(4):
        k = (n + 1) % 4
        lhs = W[n] @ W[k]
        rhs = rep.q0 ** (2 * S[n][k]) * (W[k] @ W[n])
        res[f"w{n + 1}w{k + 1}"] = float(np.linalg.norm(lhs - rhs, 2))
    eye = np.eye(rep.N)
    res["Z1"] = float(np.linalg.norm(W[0] @ W[2] - rep.z1 * eye, 2))
    res["Z2"] = float(np.linalg.norm(W[1] @ W[3] - rep.z2 * eye, 2))
    return res


def random_element(rng: np.random.Generator, lattice: Lattice, max_degree: int = 4,
                   terms: int = 4) -> WeylElement:
    """Random element with small integer exponents and Gaussian-integer-over-q coefficients."""
    from .scalar import QScalar
    out = WeylElement.zero(lattice)
    for _ in range(terms):
        while True:
            x = tuple(int(v) for v in rng.integers(-2, 3, size=lattice.n))
            if sum(abs(v) for v in x) <= max_degree:
                break
        c = QScalar.laurent({int(rng.integers(-2, 3)): complex(int(rng.integers(-3, 4)),
                                                                int(rng.integers(-3, 4)))})
        out = out + WeylElement.monomial(lattice, x, c)
    return out
