import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from moddouble import heiscalc
from moddouble.heiscalc import PExp, QDUAL, commutation_phase, pmul, w, w_dual
from moddouble.scalar import Laurent, PhaseExp
from moddouble.weyl import Lattice, phi

# linear forms are built from b p and p / b, so coefficients carry odd powers of b
laurents = st.dictionaries(st.sampled_from([-3, -1, 1, 3]), st.integers(-3, 3), max_size=2).map(Laurent)
pexps = st.builds(lambda cs, k: PExp.linear(cs, PhaseExp({k: 1})),
                  st.lists(laurents, min_size=4, max_size=4), st.integers(-2, 2))


@given(pexps, pexps, pexps)
def test_pmul_associative(a, b, c):
    assert pmul(pmul(a, b), c) == pmul(a, pmul(b, c))


@given(pexps)
def test_inverse(a):
    assert pmul(a, a.inverse()) == PExp.identity()
    assert pmul(a.inverse(), a) == PExp.identity()


@given(pexps, pexps)
def test_commutation_phase_antisymmetric(a, b):
    assert commutation_phase(a, b) + commutation_phase(b, a) == PhaseExp()


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_ordered_monomial_matches_weyl_engine(x):
    # w1^x1 w2^x2 w3^x3 w4^x4 = q^phi(x) exp(b x.p), with phi from the Weyl module
    acc = PExp.identity()
    for i, e in enumerate(x):
        acc = pmul(acc, w(i + 1).scale_coeffs(Laurent({0: e})))
    want = PExp.linear([Laurent({1: e}) for e in x], PhaseExp({1: phi(Lattice.cyclic(), x)}))
    assert acc == want


def test_weyl_relation_numerically():
    tau = 0.31 + 0.12j
    ph = commutation_phase(w(1), w(2)).evaluate(tau)
    q = cmath.exp(1j * cmath.pi * tau)
    assert abs(ph - q ** -2) < 1e-13


def test_dual_relation_numerically():
    tau = 0.31 + 0.12j
    ph = commutation_phase(w_dual(1), w_dual(2)).evaluate(tau)
    qd = QDUAL.evaluate(tau)
    assert abs(qd - cmath.exp(-1j * cmath.pi / tau)) < 1e-13
    assert abs(ph - qd ** 2) < 1e-12


def test_modular_commutation():
    rep = heiscalc.check_modular_commutation()
    commute = [r for r in rep.records if r.identity.startswith("commute:")]
    assert len(commute) == 16 and all(r.passed for r in commute)
    assert rep.ok


def test_cartan_realization():
    rep = heiscalc.check_cartan()
    assert rep.ok
    assert {"cartan:K", "cartan:K'", "cartan:K~", "cartan:K~'"} <= {r.identity for r in rep.records}


def test_cartan_dual_prefactor_is_inverse():
    # with q~ (not q~^-1) the dual Cartan element is not reproduced
    got = pmul(PExp.scalar(QDUAL), pmul(w_dual(2), w_dual(3)))
    assert got != heiscalc.realize_cartan("K~")


def test_unknown_cartan_symbol():
    with pytest.raises(ValueError):
        heiscalc.realize_cartan("H")


def test_cartan_exponents():
    cmp = heiscalc.cartan_exponent_compare()
    assert cmp["gamma_q"]["twist_k"] == -1
    assert cmp["gamma_qdual"]["twist_k"] == 1
    assert cmp["printed"]["twist_k"] is None     # 2 pi i * pi/(2i) = pi^2 is not an integer
    assert not cmp["printed_matches_q"] and not cmp["printed_matches_qdual"]
    # i / (2 pi) = -(1/2) (i pi)^-1
    assert cmp["gamma_q"]["exact"] == heiscalc.PiNumber({(-1, 0): Fraction(-1, 2)})
    assert cmp["gamma_qdual"]["exact"] == heiscalc.PiNumber({(-1, 0): Fraction(1, 2)})


def test_pinumber_arithmetic():
    ipi = heiscalc.IPI
    assert (ipi * ipi.inverse()).integer_value() == 1
    assert (ipi + ipi + -ipi) == ipi
    assert ipi.integer_value() is None
