"""Truncated universal R-matrix on ``C_q (x) C_q`` and its defining properties.

``R = T_k * S`` where ``T_k`` is the Cartan twist of :func:`weyl.cartan_twist`
(kept formal, acting by conjugation) and ``S`` is the ordered product of
four q-exponents in the arguments ``w_i (x) w_j``, ``i in {1,2}``,
``j in {3,4}``. ``S`` is graded by the number of slot-1 generators
``w1, w2`` minus ``w3, w4``, so ``w_i (x) w_j`` has degree 1 and every
Cartan element has degree 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .chevalley import GeneratorSet, embed, verify_uq
from .qseries import sq
from .report import IdentityRecord, SuiteReport, exact_record
from .scalar import QScalar
from .weyl import (KPRIME_VECTOR, K_VECTOR, Lattice, WeylElement, cartan_twist,
                   normal_product, permute_slots, product_chain, slot_vector, tensor,
                   truncate)

__all__ = [
    "BASE", "SLOT_WEIGHTS", "grading", "CONVENTIONS", "STATED_CONVENTIONS", "CoproductTable",
    "CoproductError", "IntertwiningError", "coproduct", "check_coproducts", "TwistedSeries", "ADOPTED_ORDER",
    "STATED_ORDER", "four_factor", "build_R", "split_precheck", "check_factorization",
    "check_intertwining", "check_yang_baxter", "embed_pair", "flip",
]

BASE = Lattice.cyclic()
SLOT_WEIGHTS = (1, 1, -1, -1)

# s_q factor arguments w_i (x) w_j, as (i, j) with 1-based generator indices
ADOPTED_ORDER = ((2, 4), (2, 3), (1, 4), (1, 3))
STATED_ORDER = ((1, 3), (1, 4), (2, 3), (2, 4))

# Delta(e) = e (x) a + b (x) e,  Delta(f) = f (x) c + d (x) f  with a, b, c, d in {1, K, K'}.
# A-D are the commonly quoted choices; E-H are the same list with K and K'
# exchanged. Intertwining decides among all eight.
_GROUPLIKE = {
    "A": ("1", "K", "K'", "1"),
    "B": ("K'", "1", "1", "K"),
    "C": ("1", "K", "1", "K"),
    "D": ("K'", "1", "K'", "1"),
    "E": ("K", "1", "1", "K'"),
    "F": ("1", "K'", "K", "1"),
    "G": ("K", "1", "K", "1"),
    "H": ("1", "K'", "1", "K'"),
}
STATED_CONVENTIONS = ("A", "B", "C", "D")


def _describe(conv: str) -> tuple[str, str]:
    a, b, c, d = _GROUPLIKE[conv]
    return f"e(x){a} + {b}(x)e", f"f(x){c} + {d}(x)f"


CONVENTIONS: dict[str, tuple[str, str]] = {c: _describe(c) for c in _GROUPLIKE}


class CoproductError(ValueError):
    pass


class IntertwiningError(RuntimeError):
    pass


def grading(slot_factors: Sequence[int]) -> tuple:
    """Grading on ``C_q^(x)n``: slot ``s`` weighs ``slot_factors[s] * SLOT_WEIGHTS``."""
    return tuple(f * w for f in slot_factors for w in SLOT_WEIGHTS)


G2 = grading((1, 0))
G3 = grading((2, 1, 0))


def flip(a: WeylElement) -> WeylElement:
    """``sigma``: exchange the two tensor slots."""
    return permute_slots(a, (1, 0), BASE.n)


# ---------------------------------------------------------------------------
# coproduct candidates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoproductTable:
    convention: str
    images: GeneratorSet
    records: tuple[IdentityRecord, ...]

    @property
    def homomorphism(self) -> bool:
        return all(r.passed for r in self.records)

    def __call__(self, name: str) -> WeylElement:
        return self.images.as_dict()[name]


def _images(convention: str, g: GeneratorSet) -> GeneratorSet:
    group = {"1": WeylElement.one(BASE), "K": g.K, "K'": g.Kp}
    a, b, c, d = (group[x] for x in _GROUPLIKE[convention])
    de = tensor(g.e, a) + tensor(b, g.e)
    df = tensor(g.f, c) + tensor(d, g.f)
    return GeneratorSet(e=de, f=df, K=tensor(g.K, g.K), Kp=tensor(g.Kp, g.Kp),
                        Kinv=tensor(g.Kinv, g.Kinv), Kpinv=tensor(g.Kpinv, g.Kpinv))


def coproduct(convention: str, *, strict: bool = True) -> CoproductTable:
    """Images of the generators under candidate ``convention``.

    The seven defining relations are re-checked on the images in the tensor
    algebra; with ``strict`` a failure raises :class:`CoproductError`.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown coproduct convention {convention!r}")
    imgs = _images(convention, embed())
    recs = verify_uq(imgs, grading=G2)
    for r in recs:
        r.identity = f"coproduct[{convention}]:{r.identity}"
    table = CoproductTable(convention, imgs, tuple(recs))
    if strict and not table.homomorphism:
        bad = next(r for r in recs if not r.passed)
        raise CoproductError(f"convention {convention} is not a homomorphism: {bad.identity}")
    return table


# candidates whose images satisfy the relations (mixed K/K' choices break ef - fe)
_HOMOMORPHIC = ("A", "B", "E", "F")


def check_coproducts() -> SuiteReport:
    rep = SuiteReport("coproduct")
    for conv, (de, df) in CONVENTIONS.items():
        t = coproduct(conv, strict=False)
        rep.add(IdentityRecord(
            identity=f"coproduct[{conv}]:homomorphism",
            anchor=f"De = {de}; Df = {df}; DK = K(x)K; DK' = K'(x)K' respect the relations",
            passed=t.homomorphism,
            residual="0" if t.homomorphism else next(r.residual for r in t.records if not r.passed),
            expect="zero" if conv in _HOMOMORPHIC else "nonzero",
            details={"failing": [r.identity for r in t.records if not r.passed]}))
    return rep


# ---------------------------------------------------------------------------
# twisted series
# ---------------------------------------------------------------------------

def _cartan_vectors(i: int, j: int, arity: int):
    return slot_vector(K_VECTOR, i, arity), slot_vector(KPRIME_VECTOR, j, arity)


@dataclass(frozen=True)
class TwistedSeries:
    """``prod_{(i,j)} T_(i,j)^k * series`` with formal Cartan twists.

    ``T_(i,j)`` pairs ``K`` in slot ``i`` with ``K'`` in slot ``j``. All
    twists commute, so they are stored as a mapping ``(i, j) -> k``.
    Products are truncated at ``bound`` in ``grading`` when both are set.
    """

    twists: Mapping[tuple[int, int], int]
    series: WeylElement
    bound: int | None = None
    grading: tuple | None = None
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        clean = tuple(sorted((tuple(p), int(k)) for p, k in dict(self.twists).items() if k))
        object.__setattr__(self, "_key", clean)
        object.__setattr__(self, "twists", dict(clean))

    @property
    def arity(self) -> int:
        return self.series.lattice.n // BASE.n

    def untwist(self, a: WeylElement) -> WeylElement:
        """``T^-1 a T`` for this element's twist part."""
        for (i, j), k in self._key:
            h1, h2 = _cartan_vectors(i, j, self.arity)
            a = cartan_twist(a, -k, h1, h2)
        return a

    def __mul__(self, other: "TwistedSeries") -> "TwistedSeries":
        # T1 S1 T2 S2 = T1 T2 (T2^-1 S1 T2) S2
        bound, grad = _combine(self, other)
        body = normal_product(other.untwist(self.series), other.series,
                              grading=grad, max_degree=bound)
        tw = dict(self.twists)
        for p, k in other.twists.items():
            tw[p] = tw.get(p, 0) + k
        return TwistedSeries(tw, body, bound, grad)

    def residual(self, other: "TwistedSeries", N: int | None = None) -> tuple[bool, WeylElement]:
        """``(twists equal, series difference truncated at N)``."""
        diff = self.series - other.series
        if N is not None:
            diff = truncate(diff, N, self.grading or other.grading)
        return self._key == other._key, diff

    def truncate(self, M: int) -> "TwistedSeries":
        return TwistedSeries(self.twists, truncate(self.series, M, self.grading), M, self.grading)

    def __eq__(self, other):
        if not isinstance(other, TwistedSeries):
            return NotImplemented
        return self._key == other._key and self.series == other.series

    __hash__ = None


def _combine(a: TwistedSeries, b: TwistedSeries):
    bounds = [x for x in (a.bound, b.bound) if x is not None]
    grad = a.grading or b.grading
    if a.grading and b.grading and a.grading != b.grading:
        raise ValueError("gradings differ")
    return (min(bounds) if bounds else None), (grad if bounds else None)


def plain(a: WeylElement, bound=None, grading_=None) -> TwistedSeries:
    return TwistedSeries({}, a, bound, grading_)


# ---------------------------------------------------------------------------
# R-matrix
# ---------------------------------------------------------------------------

def _arg(i: int, j: int) -> WeylElement:
    return tensor(WeylElement.gen(BASE, i - 1), WeylElement.gen(BASE, j - 1))


def four_factor(N: int, order: Sequence[tuple[int, int]] = ADOPTED_ORDER) -> WeylElement:
    """``prod s_q(w_i (x) w_j)`` in ``order``, truncated at degree ``N``."""
    factors = [sq(_arg(i, j), N, grading=G2).body for i, j in order]
    return product_chain(factors, grading=G2, max_degree=N)


def build_R(N: int, k: int, order: Sequence[tuple[int, int]] = ADOPTED_ORDER) -> TwistedSeries:
    if N < 0:
        raise ValueError("N must be non-negative")
    return TwistedSeries({(0, 1): k}, four_factor(N, order), N, G2)


def split_precheck(order: Sequence[tuple[int, int]]) -> list[tuple[str, WeylElement]]:
    """Weyl-pair conditions behind ``s(m1+m2+m3+m4) = s(m1) s(m2) s(m3) s(m4)``.

    Schutzenberger applies to ``(m1+m2, m3+m4)``, then to ``(m1, m2)`` and
    ``(m3, m4)``; each needs ``x y = q^2 y x``.
    """
    m = [_arg(i, j) for i, j in order]
    q2 = QScalar.qpow(2)
    out = []
    for name, x, y in (("(m1+m2, m3+m4)", m[0] + m[1], m[2] + m[3]),
                       ("(m1, m2)", m[0], m[1]), ("(m3, m4)", m[2], m[3])):
        out.append((name, x * y - (y * x).scale(q2)))
    return out


def _order_str(order) -> str:
    return " ".join(f"s(w{i}(x)w{j})" for i, j in order)


def check_factorization(N: int = 6, *, controls: bool = True) -> SuiteReport:
    rep = SuiteReport("factorization")
    X = (_arg(1, 3) + _arg(1, 4) + _arg(2, 3) + _arg(2, 4))
    whole = sq(X, N, grading=G2).body
    cases = [(ADOPTED_ORDER, "zero")] + ([(STATED_ORDER, "nonzero")] if controls else [])
    for order, expect in cases:
        tag = "adopted" if order == ADOPTED_ORDER else "stated-order"
        for name, r in split_precheck(order):
            rec = exact_record(f"factorization:{tag}:weyl-pair{name}", f"xy = q^2 yx for {name}",
                               r, expect=expect if name == "(m1, m2)" else "zero")
            if tag == "adopted" or name == "(m1, m2)":
                rep.add(rec)
        res = four_factor(N, order) - whole
        rep.add(exact_record(
            f"factorization:{tag}",
            f"{_order_str(order)} = s((w1+w2)(x)(w3+w4))",
            res, degree=N, grading=G2, expect=expect, first_nonzero_degree=res.min_degree(G2)))
    return rep


def _intertwine_residual(S: TwistedSeries, D: WeylElement, N: int) -> tuple[bool, WeylElement]:
    lhs = S * plain(D)
    rhs = plain(flip(D)) * S
    same, diff = lhs.residual(rhs, N)
    return same, truncate(diff, N, G2)


def check_intertwining(N: int = 5, *, controls: bool = True) -> SuiteReport:
    """``R Delta(x) = (sigma Delta)(x) R`` for ``x in {K, K', e, f}``.

    Every ``(k, convention)`` with ``k in {-1, +1}`` and each of the eight
    coproduct candidates is tried; exactly one pair must pass. ``Delta(f)`` lowers the degree by one, so ``S`` is built to
    ``N + 1`` and residuals are compared up to degree ``N``.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    rep = SuiteReport("intertwining")
    body = four_factor(N + 1)
    tables = {c: coproduct(c, strict=False) for c in CONVENTIONS}
    passing = []
    names = ("K", "K'", "e", "f")
    for k in (-1, 1):
        R = TwistedSeries({(0, 1): k}, body, N + 1, G2)
        for conv, table in tables.items():
            results = {}
            for x in names:
                same, diff = _intertwine_residual(R, table(x), N)
                results[x] = (same and diff.is_zero(), diff)
            ok = all(v[0] for v in results.values())
            if ok:
                passing.append((k, conv))
            first_bad = next((x for x in names if not results[x][0]), None)
            rep.info.setdefault("table", []).append({
                "k": k, "convention": conv, "homomorphism": table.homomorphism,
                "passes": ok, "first_failing": first_bad})
    rep.info["passing"] = [{"k": k, "convention": c} for k, c in passing]
    if not passing:
        raise IntertwiningError("no (k, coproduct) pair intertwines")
    unique = len(passing) == 1 and tables[passing[0][1]].homomorphism
    rep.add(IdentityRecord(
        identity="intertwining:unique-pair",
        anchor="exactly one (k, Delta) satisfies sigma Delta = R Delta R^-1",
        passed=unique,
        residual="0" if unique else f"passing pairs: {passing}",
        degree=N))
    k_sel, conv_sel = passing[0]
    rep.info["selected"] = {"k": k_sel, "convention": conv_sel,
                            "De": CONVENTIONS[conv_sel][0], "Df": CONVENTIONS[conv_sel][1]}
    R = TwistedSeries({(0, 1): k_sel}, body, N + 1, G2)
    for x in names:
        same, diff = _intertwine_residual(R, tables[conv_sel](x), N)
        rec = exact_record(f"intertwining:{x}", f"R Delta({x}) = sigma Delta({x}) R",
                           diff, degree=N, grading=G2, k=k_sel, convention=conv_sel)
        rec.passed = rec.passed and same
        rep.add(rec)
    if controls:
        R0 = TwistedSeries({}, body, N + 1, G2)
        diffs = {x: _intertwine_residual(R0, tables[conv_sel](x), N)[1] for x in names}
        bad = next((x for x in names if not diffs[x].is_zero()), "e")
        rep.add(exact_record(
            "intertwining:control-k0", f"R Delta({bad}) = sigma Delta({bad}) R without Cartan factor",
            diffs[bad], degree=N, grading=G2, expect="nonzero",
            first_nonzero_degree=diffs[bad].min_degree(G2),
            nonzero_for=[x for x in names if not diffs[x].is_zero()]))
    return rep


def embed_pair(a: WeylElement, i: int, j: int, arity: int = 3) -> WeylElement:
    """Place a two-slot element into slots ``i < j`` or ``i > j`` of an ``arity``-fold tensor."""
    n = BASE.n
    lat = BASE.power(arity)
    out = {}
    for m, c in a.terms.items():
        new = [0] * (n * arity)
        new[i * n:(i + 1) * n] = m[:n]
        new[j * n:(j + 1) * n] = m[n:]
        out[tuple(new)] = c
    return WeylElement._raw(lat, out)


def _r3(S2: WeylElement, i: int, j: int, k: int, N: int) -> TwistedSeries:
    return TwistedSeries({(i, j): k}, truncate(embed_pair(S2, i, j), N, G3), N, G3)


def check_yang_baxter(N: int = 4, k: int = -1, *, controls: bool = True) -> SuiteReport:
    """``R12 R13 R23 = R23 R13 R12`` on ``C_q^(x)3``, truncated at ``N``.

    The triple tensor is graded with slot weights ``2, 1, 0`` so every
    factor ``R_ij`` has only non-negative degrees; the negative control
    swaps the last two factors on the left-hand side.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    rep = SuiteReport("yang-baxter")
    S2 = four_factor(N)
    R12, R13, R23 = (_r3(S2, 0, 1, k, N), _r3(S2, 0, 2, k, N), _r3(S2, 1, 2, k, N))
    rhs = R23 * R13 * R12
    lhs = R12 * R13 * R23
    same, diff = lhs.residual(rhs, N)
    rec = exact_record("yang-baxter", "R12 R13 R23 = R23 R13 R12", diff, degree=N, grading=G3, k=k)
    rec.passed = rec.passed and same
    rep.add(rec)
    if controls:
        bad = R12 * R23 * R13
        same_b, diff_b = bad.residual(rhs, N)
        rec = exact_record("yang-baxter:control-scrambled", "R12 R23 R13 = R23 R13 R12",
                           diff_b, degree=N, grading=G3, expect="nonzero", k=k,
                           first_nonzero_degree=diff_b.min_degree(G3))
        rec.passed = rec.passed and same_b
        rep.add(rec)
    return rep
