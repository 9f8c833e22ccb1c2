"""Quantum-group generators inside the cyclic Weyl algebra ``C_q``.

    e  = i (w1 + w2) / (q - 1/q)        f  = i (w3 + w4) / (q - 1/q)
    K  = q w2 w3                        K' = q w4 w1

With the lattice orientation ``w_n w_(n+1) = q^-2 w_(n+1) w_n`` these satisfy
the defining relations of ``U_q`` exactly; the central elements are
``Z1 = w1 w3`` and ``Z2 = w2 w4``.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

from .report import IdentityRecord, exact_record
from .scalar import QScalar, as_complex, q_number
from .weyl import Lattice, WeylElement, commutator

__all__ = [
    "GeneratorSet",
    "CentralSet",
    "StarCase",
    "CentralityError",
    "embed",
    "stated_embedding",
    "relations",
    "verify_uq",
    "casimirs",
    "stated_casimir",
    "solve_in_span",
    "central_charge",
    "star_classify",
]

q = QScalar.qpow(1)
qinv = QScalar.qpow(-1)
I = QScalar.i()


class CentralityError(RuntimeError):
    pass


@dataclass(frozen=True)
class GeneratorSet:
    e: WeylElement
    f: WeylElement
    K: WeylElement
    Kp: WeylElement
    Kinv: WeylElement
    Kpinv: WeylElement

    @property
    def lattice(self) -> Lattice:
        return self.e.lattice

    def as_dict(self) -> dict[str, WeylElement]:
        return {"e": self.e, "f": self.f, "K": self.K, "K'": self.Kp,
                "K^-1": self.Kinv, "K'^-1": self.Kpinv}


@dataclass(frozen=True)
class CentralSet:
    J: WeylElement
    C: WeylElement
    Z1: WeylElement
    Z2: WeylElement
    chevalley_form: dict[str, QScalar]   # C = a*ef + b*K + c*K'
    records: tuple[IdentityRecord, ...]


@dataclass(frozen=True)
class StarCase:
    label: str
    b: complex
    tau: complex
    central_charge: complex


def _generators(lattice: Lattice, prefactor: QScalar) -> GeneratorSet:
    w1, w2, w3, w4 = WeylElement.gens(lattice)
    c = I / q_number(1)
    K = prefactor * (w2 * w3)
    Kp = prefactor * (w4 * w1)
    return GeneratorSet(e=c * (w1 + w2), f=c * (w3 + w4), K=K, Kp=Kp,
                        Kinv=K.inverse(), Kpinv=Kp.inverse())


def embed(lattice: Lattice | None = None) -> GeneratorSet:
    """Adopted embedding: prefactor ``q`` on ``K`` and ``K'``."""
    return _generators(lattice or Lattice.cyclic(), q)


def stated_embedding(lattice: Lattice | None = None) -> GeneratorSet:
    """The same formulas with prefactor ``1/q`` on ``K``, ``K'`` (kept for comparison)."""
    return _generators(lattice or Lattice.cyclic(), qinv)


def relations(g: GeneratorSet) -> list[tuple[str, str, WeylElement]]:
    """``(name, formula, residual)`` for the seven defining relations."""
    e, f, K, Kp = g.e, g.f, g.K, g.Kp
    q2 = QScalar.qpow(2)
    qm2 = QScalar.qpow(-2)
    return [
        ("Ke", "Ke = q^2 eK", K * e - q2 * (e * K)),
        ("K'e", "K'e = q^-2 eK'", Kp * e - qm2 * (e * Kp)),
        ("Kf", "Kf = q^-2 fK", K * f - qm2 * (f * K)),
        ("K'f", "K'f = q^2 fK'", Kp * f - q2 * (f * Kp)),
        ("ef-fe", "ef - fe = (K - K')/(q - q^-1)", e * f - f * e - (K - Kp) / q_number(1)),
        ("KK'", "KK' = K'K", K * Kp - Kp * K),
        ("KK^-1", "K K^-1 = 1 = K' K'^-1", _invertibility(g)),
    ]


def _invertibility(g: GeneratorSet) -> WeylElement:
    # one relation for both Cartan generators: report the first failure
    r = g.K * g.Kinv - 1
    return r if not r.is_zero() else g.Kp * g.Kpinv - 1


def verify_uq(g: GeneratorSet, grading=None) -> list[IdentityRecord]:
    """Exact residuals of the seven relations."""
    return [exact_record(f"uq:{name}", formula, r, grading=grading)
            for name, formula, r in relations(g)]


def solve_in_span(target: WeylElement, basis: list[WeylElement]) -> list[QScalar] | None:
    """Exact coefficients ``c`` with ``target = sum c_i basis_i``, or ``None``.

    Gaussian elimination over ``QScalar`` with one equation per monomial.
    """
    monos = sorted(set(target.terms).union(*(b.terms for b in basis)))
    nb = len(basis)
    rows = [[b.coefficient(m) for b in basis] + [target.coefficient(m)] for m in monos]
    pivots = []
    r = 0
    for col in range(nb):
        piv = next((i for i in range(r, len(rows)) if not rows[i][col].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                fac = rows[i][col]
                rows[i] = [a - fac * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(rows)):
        if not rows[i][nb].is_zero():
            return None
    sol = [QScalar.zero()] * nb
    for i, col in enumerate(pivots):
        sol[col] = rows[i][nb]
    return sol


def _centrality(x: WeylElement, name: str) -> list[IdentityRecord]:
    lat = x.lattice
    out = []
    for i, w in enumerate(WeylElement.gens(lat)):
        out.append(exact_record(f"central:[{name},{lat.names[i]}]", f"[{name}, {lat.names[i]}] = 0",
                                commutator(x, w)))
    return out


def casimirs(g: GeneratorSet) -> CentralSet:
    """Central elements, their relations, and ``C`` re-expressed through ``e, f, K, K'``.

    Raises :class:`CentralityError` if ``J``, ``C``, ``Z1`` or ``Z2`` fails to
    commute with a generator of the lattice.
    """
    lat = g.lattice
    w1, w2, w3, w4 = WeylElement.gens(lat)
    Z1 = w1 * w3
    Z2 = w2 * w4
    J = g.K * g.Kp
    coeffs = solve_in_span(Z1 + Z2, [g.e * g.f, g.K, g.Kp])
    if coeffs is None:
        raise CentralityError("Z1 + Z2 is not a combination of ef, K, K'")
    C = coeffs[0] * (g.e * g.f) + coeffs[1] * g.K + coeffs[2] * g.Kp
    records = [
        exact_record("casimir:J", "J = KK' = Z1 Z2", J - Z1 * Z2),
        exact_record("casimir:C", "C = Z1 + Z2", C - (Z1 + Z2)),
    ]
    for name, x in (("J", J), ("C", C), ("Z1", Z1), ("Z2", Z2)):
        recs = _centrality(x, name)
        bad = [r for r in recs if not r.passed]
        if bad:
            raise CentralityError(f"{name} is not central: {bad[0].residual}")
        records.extend(recs)
    form = {"ef": coeffs[0], "K": coeffs[1], "K'": coeffs[2]}
    return CentralSet(J=J, C=C, Z1=Z1, Z2=Z2, chevalley_form=form, records=tuple(records))


def stated_casimir(g: GeneratorSet) -> tuple[WeylElement, list[IdentityRecord]]:
    """``(K - K')/(q - 1/q) + (q - 1/q)^2 (ef - fe)`` and its centrality checks.

    By the ``ef - fe`` relation this is a multiple of ``K - K'``, which does
    not commute with ``e`` or ``f``; the records are negative controls.
    """
    d = q_number(1)
    C = (g.K - g.Kp) / d + (d * d) * (g.e * g.f - g.f * g.e)
    recs = []
    for r in _centrality(C, "C_stated"):
        r.expect = "nonzero"
        recs.append(r)
    return C, recs


def central_charge(b) -> complex:
    """``1 + 6 (b + 1/b)^2``."""
    b = as_complex(b)
    if b == 0:
        raise ValueError("b must be nonzero")
    s = b + 1 / b
    return 1 + 6 * s * s


def star_classify(b, tol: float = 1e-12) -> StarCase:
    """Which *-structure the deformation parameter ``b`` admits.

    ``tau = b^2`` real positive: ``SLq2R``; real negative: ``SUq2``;
    on the unit circle off the real axis: ``factor-interchange``;
    anything else: ``generic``.
    """
    b = as_complex(b)
    if b == 0:
        raise ValueError("b must be nonzero")
    tau = b * b
    if abs(tau.imag) <= tol * max(1.0, abs(tau)):
        label = "SLq2R" if tau.real > 0 else "SUq2"
    elif abs(abs(tau) - 1) <= tol:
        label = "factor-interchange"
    else:
        label = "generic"
    C = central_charge(b)
    if label != "generic" and abs(C.imag) <= 1e-9 * max(1.0, abs(C)):
        C = complex(C.real, 0.0)
    return StarCase(label=label, b=b, tau=tau, central_charge=C)


def unit_circle_b(theta: float) -> complex:
    """``b = exp(i theta/2)`` so that ``tau = exp(i theta)``."""
    return cmath.exp(0.5j * theta)

