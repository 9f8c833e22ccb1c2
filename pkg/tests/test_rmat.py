import pytest
from hypothesis import given
from hypothesis import strategies as st

from moddouble import chevalley, rmat
from moddouble.rmat import G2, TwistedSeries, build_R, flip, four_factor, plain
from moddouble.scalar import QScalar, q_number
from moddouble.weyl import WeylElement, tensor, truncate

from conftest import weyl_elements

LAT2 = rmat.BASE.power(2)


def theta(N):
    """Textbook expansion sum_n q^(n(n-1)/2) (q - 1/q)^n / [n]! e^n (x) f^n."""
    g = chevalley.embed()
    d = q_number(1)
    out = WeylElement.zero(LAT2)
    en = fn = WeylElement.one(rmat.BASE)
    fact = QScalar.one()
    for n in range(N + 1):
        if n:
            en, fn = en * g.e, fn * g.f
            fact = fact * q_number(n) / d
        out = out + tensor(en, fn).scale(QScalar.qpow(n * (n - 1) // 2) * d ** n / fact)
    return truncate(out, N, G2)


@pytest.mark.parametrize("N", [1, 3, 5])
def test_four_factor_matches_theta_expansion(N):
    assert four_factor(N) == theta(N)


def test_build_R_truncation_consistency():
    big = build_R(6, -1)
    for M in range(0, 6):
        assert big.truncate(M) == build_R(M, -1)


twist_maps = st.dictionaries(st.sampled_from([(0, 1), (1, 0)]), st.integers(-1, 1), max_size=2)


@given(twist_maps, weyl_elements(LAT2, max_terms=2, max_exp=1),
       twist_maps, weyl_elements(LAT2, max_terms=2, max_exp=1),
       twist_maps, weyl_elements(LAT2, max_terms=2, max_exp=1))
def test_twisted_series_associative(t1, a, t2, b, t3, c):
    x, y, z = TwistedSeries(t1, a), TwistedSeries(t2, b), TwistedSeries(t3, c)
    assert (x * y) * z == x * (y * z)


def test_twist_conjugation_law():
    # T S = (T S T^-1) T: multiplying by a pure twist on the left or right
    g = chevalley.embed()
    T = TwistedSeries({(0, 1): -1}, WeylElement.one(LAT2))
    a = tensor(g.e, g.K) + tensor(g.K, g.e)
    left = T * plain(a)
    right = plain(a) * T
    assert left.twists == right.twists
    assert left.series == a
    assert right.series == T.untwist(a)


def test_flip_is_involution():
    g = chevalley.embed()
    a = tensor(g.e, g.f) + tensor(g.K, g.Kp)
    assert flip(flip(a)) == a
    assert flip(tensor(g.e, g.f)) == tensor(g.f, g.e)


@pytest.mark.parametrize("conv", list(rmat.CONVENTIONS))
def test_coproduct_homomorphism(conv):
    table = rmat.coproduct(conv, strict=False)
    assert table.homomorphism == (conv in ("A", "B", "E", "F"))


def test_strict_coproduct_rejects_non_homomorphism():
    with pytest.raises(rmat.CoproductError):
        rmat.coproduct("C")


def test_factorization_orders():
    rep = rmat.check_factorization(4)
    assert rep.ok
    by_id = {r.identity: r for r in rep.records}
    assert by_id["factorization:adopted"].passed
    assert not by_id["factorization:stated-order"].passed


def test_stated_order_fails_first_weyl_pair():
    checks = dict(rmat.split_precheck(rmat.STATED_ORDER))
    assert not checks["(m1, m2)"].is_zero()
    assert all(r.is_zero() for _, r in rmat.split_precheck(rmat.ADOPTED_ORDER))


@pytest.mark.parametrize("N", [2, 3, 4])
def test_intertwining_selection_is_stable(N):
    rep = rmat.check_intertwining(N)
    assert rep.ok
    assert rep.info["selected"]["k"] == -1
    assert rep.info["selected"]["convention"] == "E"
    assert rep.info["passing"] == [{"k": -1, "convention": "E"}]
    listed = [row for row in rep.info["table"] if row["convention"] in rmat.STATED_CONVENTIONS]
    assert not any(row["passes"] for row in listed)


def test_yang_baxter():
    rep = rmat.check_yang_baxter(3)
    assert rep.ok
    main, control = rep.records
    assert main.passed and not control.passed


@pytest.mark.parametrize("k", [0, 1])
def test_yang_baxter_fixes_the_twist(k):
    main = rmat.check_yang_baxter(3, k, controls=False).records[0]
    assert not main.passed


def test_bad_degrees():
    with pytest.raises(ValueError):
        build_R(-1, -1)
    with pytest.raises(ValueError):
        rmat.check_intertwining(1)
    with pytest.raises(ValueError):
        rmat.check_yang_baxter(1)


def test_low_degree_parts_of_R():
    S = build_R(3, -1).series
    assert S.homogeneous_part(0, G2) == WeylElement.one(LAT2)
    X = sum((rmat._arg(i, j) for i in (1, 2) for j in (3, 4)), WeylElement.zero(LAT2))
    c1 = -q_number(1).inverse()
    assert S.homogeneous_part(1, G2) == X.scale(c1)
    g = chevalley.embed()
    assert S.homogeneous_part(1, G2) == tensor(g.e, g.f).scale(q_number(1))
