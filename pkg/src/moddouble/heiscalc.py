"""Exponentials of linear forms in Heisenberg generators ``p_1..p_4``.

The generators satisfy ``[p_a, p_b] = 2 pi i S_ab`` with ``S`` the cyclic
skew form of the Weyl lattice, so ``[p_n, p_(n+1)] = -2 pi i``. An element
``exp(i pi c) exp(x . p)`` is stored as a :class:`PExp`: the phase exponent
``c`` is a :class:`PhaseExp` (a Laurent polynomial in ``tau = b^2``) and the
coefficient vector ``x`` has entries that are Laurent polynomials in ``b``.

Because the commutator is central, ``e^X e^Y = e^{[X,Y]/2} e^{X+Y}`` holds
exactly, which is all :func:`pmul` needs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .report import IdentityRecord, SuiteReport
from .scalar import Laurent, PhaseExp
from .weyl import Lattice

__all__ = [
    "PExp", "PiNumber", "CartanMismatch", "pairing", "pmul", "commutation_phase",
    "w", "w_dual", "check_modular_commutation", "realize_cartan", "check_cartan",
    "cartan_exponent_compare", "cartan_exponent_report", "Q", "QDUAL",
]

Q = PhaseExp({1: 1})        # q      = exp(i pi tau)
QDUAL = PhaseExp({-1: -1})  # q dual = exp(-i pi / tau)


class CartanMismatch(RuntimeError):
    pass


def _skew(n: int):
    if n % 4:
        raise ValueError("p-space dimension must be a multiple of 4")
    return Lattice.cyclic().power(n // 4).skew if n > 4 else Lattice.cyclic().skew


def pairing(x: Sequence[Laurent], y: Sequence[Laurent]) -> Laurent:
    """``x . S . y``: the commutator ``[x.p, y.p]`` divided by ``2 pi i``."""
    S = _skew(len(x))
    total = Laurent()
    for i, xi in enumerate(x):
        if xi.is_zero():
            continue
        for j, yj in enumerate(y):
            if S[i][j] and not yj.is_zero():
                total = total + xi * yj * S[i][j]
    return total


@dataclass(frozen=True)
class PExp:
    phase: PhaseExp
    coeffs: tuple

    @classmethod
    def linear(cls, coeffs: Sequence, phase: PhaseExp | None = None) -> "PExp":
        vec = tuple(c if isinstance(c, Laurent) else Laurent({0: c}) for c in coeffs)
        return cls(phase or PhaseExp(), vec)

    @classmethod
    def identity(cls, n: int = 4) -> "PExp":
        return cls.linear([0] * n)

    @classmethod
    def scalar(cls, phase: PhaseExp, n: int = 4) -> "PExp":
        return cls.linear([0] * n, phase)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def inverse(self) -> "PExp":
        return PExp(-self.phase, tuple(-c for c in self.coeffs))

    def scale_coeffs(self, s: Laurent) -> "PExp":
        """Linear part multiplied by ``s`` (phase dropped): ``e^{x.p} -> e^{s x.p}``."""
        return PExp.linear([c * s for c in self.coeffs])

    def __mul__(self, other: "PExp") -> "PExp":
        return pmul(self, other)

    def __eq__(self, other):
        if not isinstance(other, PExp):
            return NotImplemented
        return self.phase == other.phase and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.phase, self.coeffs))

    def __str__(self):
        lin = " + ".join(f"({c})*p{i + 1}" for i, c in enumerate(self.coeffs) if not c.is_zero())
        return f"exp(i*pi*({self.phase.canonical()})) * exp({lin or '0'})"


def pmul(a: PExp, b: PExp) -> PExp:
    """``e^X e^Y = e^{[X,Y]/2} e^{X+Y}``; ``[X,Y]/2 = i pi (x.S.y)``."""
    if a.dim != b.dim:
        raise ValueError("PExp dimensions differ")
    phase = a.phase + b.phase + PhaseExp.from_laurent(pairing(a.coeffs, b.coeffs))
    return PExp(phase, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def commutation_phase(a: PExp, b: PExp) -> PhaseExp:
    """``c`` with ``a b = exp(i pi c) b a``, canonicalized."""
    return PhaseExp.from_laurent(pairing(a.coeffs, b.coeffs) * 2).canonical()


def _unit(n: int, k: int, c: Laurent) -> PExp:
    vec = [Laurent()] * n
    vec[k] = c
    return PExp.linear(vec)


def w(index: int, n: int = 4) -> PExp:
    """``w_index = exp(b p_index)`` (1-based)."""
    return _unit(n, index - 1, Laurent({1: 1}))


def w_dual(index: int, n: int = 4) -> PExp:
    """``w~_index = exp(p_index / b) = w_index^(1/tau)``."""
    return _unit(n, index - 1, Laurent({-1: 1}))


def _rec(identity, anchor, ok, residual, expect="zero", **details) -> IdentityRecord:
    return IdentityRecord(identity=identity, anchor=anchor, passed=bool(ok),
                          residual=residual, expect=expect, details=details)


def check_modular_commutation() -> SuiteReport:
    """The two Weyl systems commute; each satisfies its own Weyl relations."""
    rep = SuiteReport("modular-commutation")
    for n in range(1, 5):
        for m in range(1, 5):
            ph = commutation_phase(w(n), w_dual(m))
            rep.add(_rec(f"commute:w{n},w~{m}", "w_n w~_m = w~_m w_n", ph.is_trivial(),
                         "0" if ph.is_trivial() else f"phase exp(i pi ({ph}))"))
    lat = Lattice.cyclic()
    for n in range(1, 5):
        m = n % 4 + 1
        got = commutation_phase(w(n), w(m))
        want = PhaseExp({1: 2 * lat.skew[n - 1][m - 1]})
        rep.add(_rec(f"weyl:w{n},w{m}", "w_n w_(n+1) = q^-2 w_(n+1) w_n", got == want,
                     "0" if got == want else f"got {got}, expected {want}"))
        got = commutation_phase(w_dual(n), w_dual(m))
        want = QDUAL.scale(-2 * lat.skew[n - 1][m - 1])
        rep.add(_rec(f"weyl:w~{n},w~{m}", "w~_n w~_(n+1) = q~^2 w~_(n+1) w~_n", got == want,
                     "0" if got == want else f"got {got}, expected {want}",
                     phase=str(got)))
    return rep


_CARTAN = {
    "K": ((2, 3), 1),
    "K'": ((4, 1), 1),
    "K~": ((2, 3), -1),
    "K~'": ((4, 1), -1),
}


def realize_cartan(symbol: str) -> PExp:
    """``K = e^{b(p2+p3)}``, ``K' = e^{b(p1+p4)}`` and their duals with ``1/b``."""
    if symbol not in _CARTAN:
        raise ValueError(f"unknown Cartan symbol {symbol!r}")
    (i, j), power = _CARTAN[symbol]
    vec = [Laurent()] * 4
    vec[i - 1] = vec[j - 1] = Laurent({power: 1})
    return PExp.linear(vec)


def check_cartan() -> SuiteReport:
    """Cartan elements from ordered monomials.

    ``K = q w2 w3`` and ``K' = q w4 w1`` reproduce the symmetric exponentials;
    on the dual side the prefactor is ``q~^-1`` because the dual lattice
    relations run the other way.
    """
    rep = SuiteReport("cartan")
    cases = [
        ("K", Q, w(2), w(3), "q w2 w3 = e^{b(p2+p3)}"),
        ("K'", Q, w(4), w(1), "q w4 w1 = e^{b(p1+p4)}"),
        ("K~", -QDUAL, w_dual(2), w_dual(3), "q~^-1 w~2 w~3 = e^{(p2+p3)/b}"),
        ("K~'", -QDUAL, w_dual(4), w_dual(1), "q~^-1 w~4 w~1 = e^{(p1+p4)/b}"),
    ]
    for sym, pref, a, b, anchor in cases:
        got = pmul(PExp.scalar(pref), pmul(a, b))
        want = realize_cartan(sym)
        if got != want:
            raise CartanMismatch(f"{sym}: {got} != {want}")
        rep.add(_rec(f"cartan:{sym}", anchor, True, "0"))
    inv_tau = Laurent({-2: 1})
    for sym in ("K", "K'"):
        got = realize_cartan(sym).scale_coeffs(inv_tau)
        ok = got == realize_cartan(sym.replace("K", "K~", 1))
        rep.add(_rec(f"cartan:{sym}^(1/tau)", f"{sym}~ = {sym}^(1/tau)", ok, "0" if ok else str(got)))
    for a in ("K", "K'"):
        for b in ("K~", "K~'"):
            ph = commutation_phase(realize_cartan(a), realize_cartan(b))
            rep.add(_rec(f"cartan:[{a},{b}]", f"{a} {b} = {b} {a}", ph.is_trivial(),
                         "0" if ph.is_trivial() else str(ph)))
    h = realize_cartan("K").coeffs
    hp = realize_cartan("K'").coeffs
    pz = pairing(h, hp)
    rep.add(_rec("cartan:[p2+p3,p1+p4]", "[p2+p3, p1+p4] = 0", pz.is_zero(),
                 "0" if pz.is_zero() else str(pz)))
    return rep


# ---------------------------------------------------------------------------
# exact numbers sum c (i pi)^a b^k
# ---------------------------------------------------------------------------

class PiNumber:
    """Finite sum ``sum c_(a,k) (i pi)^a b^k`` with rational ``c``.

    Enough to tell ``i/(2 pi)`` from ``pi/(2i)`` exactly.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {(int(a), int(k)): Fraction(c) for (a, k), c in (terms or {}).items()
                      if Fraction(c) != 0}

    def __mul__(self, other):
        if not isinstance(other, PiNumber):
            other = PiNumber({(0, 0): other})
        out: dict = {}
        for (a1, k1), c1 in self.terms.items():
            for (a2, k2), c2 in other.terms.items():
                key = (a1 + a2, k1 + k2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return PiNumber(out)

    __rmul__ = __mul__

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return PiNumber(out)

    def __neg__(self):
        return PiNumber({k: -c for k, c in self.terms.items()})

    def inverse(self) -> "PiNumber":
        if len(self.terms) != 1:
            raise ValueError("only monomials are invertible")
        ((a, k), c), = self.terms.items()
        return PiNumber({(-a, -k): 1 / c})

    def __eq__(self, other):
        if isinstance(other, PiNumber):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def integer_value(self) -> int | None:
        """The value if this is a rational integer, else ``None``."""
        if not self.terms:
            return 0
        if set(self.terms) == {(0, 0)} and self.terms[(0, 0)].denominator == 1:
            return int(self.terms[(0, 0)])
        return None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, k), c in sorted(self.terms.items()):
            # (i pi)^a = i^a pi^a
            unit = [1, 1j, -1, -1j][a % 4]
            re, im = int(unit.real), int(unit.imag)
            coef = c * (re or im)
            head = f"{coef}" + ("*i" if im else "")
            pi = "" if a == 0 else (f"*pi^{a}" if a != 1 else "*pi")
            bb = "" if k == 0 else (f"*b^{k}" if k != 1 else "*b")
            parts.append(head + pi + bb)
        return " + ".join(parts)


IPI = PiNumber({(1, 0): 1})


def _gamma(log_q: PiNumber, h_coeff: PiNumber) -> PiNumber:
    # q^{-H (x) H'/2} with H = h (p2+p3), H' = h (p1+p4):  gamma = -(ln q / 2) h^2
    return PiNumber({(0, 0): Fraction(-1, 2)}) * log_q * h_coeff * h_coeff


def cartan_exponent_compare() -> dict:
    """Exact coefficients of ``(p2+p3) (x) (p1+p4)`` in the Cartan factor.

    ``K = q^H = e^{b(p2+p3)}`` gives ``H = b (p2+p3)/ln q`` with
    ``ln q = i pi b^2``; the dual side uses ``ln q~ = -i pi / b^2`` and
    ``K~ = e^{(p2+p3)/b}``. The twist integer of the Weyl-side automorphism
    is ``k = 2 pi i gamma``.
    """
    b = PiNumber({(0, 1): 1})
    binv = PiNumber({(0, -1): 1})
    log_q = IPI * b * b
    log_qd = -(IPI * binv * binv)
    gamma_q = _gamma(log_q, b * log_q.inverse())
    gamma_qd = _gamma(log_qd, binv * log_qd.inverse())
    printed = PiNumber({(1, 0): Fraction(-1, 2)})      # pi/(2i) = -(i pi)/2
    two_pi_i = PiNumber({(1, 0): 2})
    out = {}
    for name, g in (("gamma_q", gamma_q), ("gamma_qdual", gamma_qd), ("printed", printed)):
        k = two_pi_i * g
        out[name] = {"value": str(g), "twist_k": k.integer_value(), "k_exact": str(k)}
    out["q_equals_qdual"] = gamma_q == gamma_qd
    out["printed_matches_q"] = printed == gamma_q
    out["printed_matches_qdual"] = printed == gamma_qd
    out["gamma_q"]["exact"] = gamma_q
    out["gamma_qdual"]["exact"] = gamma_qd
    out["printed"]["exact"] = printed
    return out


def cartan_exponent_report() -> SuiteReport:
    cmp = cartan_exponent_compare()
    rep = SuiteReport("cartan-exponent")
    want_q = PiNumber({(-1, 0): Fraction(-1, 2)})      # i/(2 pi) = -(1/2)(i pi)^-1
    rep.add(_rec("gamma:q", "gamma_q = i/(2 pi)", cmp["gamma_q"]["exact"] == want_q,
                 "0" if cmp["gamma_q"]["exact"] == want_q else cmp["gamma_q"]["value"],
                 twist_k=cmp["gamma_q"]["twist_k"]))
    rep.add(_rec("gamma:qdual", "gamma_q~ = -i/(2 pi)", cmp["gamma_qdual"]["exact"] == -want_q,
                 "0" if cmp["gamma_qdual"]["exact"] == -want_q else cmp["gamma_qdual"]["value"],
                 twist_k=cmp["gamma_qdual"]["twist_k"]))
    rep.add(_rec("gamma:stated-vs-q", "pi/(2i) equals gamma_q", cmp["printed_matches_q"],
                 f"pi/(2i) - gamma_q = {cmp['printed']['exact'] + -cmp['gamma_q']['exact']}",
                 expect="nonzero"))
    rep.add(_rec("gamma:stated-vs-qdual", "pi/(2i) equals gamma_q~", cmp["printed_matches_qdual"],
                 f"pi/(2i) - gamma_q~ = {cmp['printed']['exact'] + -cmp['gamma_qdual']['exact']}",
                 expect="nonzero"))
    rep.info = {k: {kk: vv for kk, vv in v.items() if kk != "exact"} if isinstance(v, dict) else v
                for k, v in cmp.items()}
    return rep
