import pytest
from hypothesis import given
from hypothesis import strategies as st

from moddouble.scalar import QScalar
from moddouble.weyl import (Lattice, LatticeMismatch, WeylElement, cartan_twist, commutator,
                            normal_product, permute_slots, tensor, tensor_embed, trace, truncate)

from conftest import weyl_elements

CYC = Lattice.cyclic()
CYC2 = CYC.power(2)


def bubble_order(lattice, word):
    """Normal-order a word of ``(generator, power)`` factors by adjacent swaps.

    Independent of the engine: only uses ``g_j^a g_i^b = q^(2 S[j][i] a b) g_i^b g_j^a``.
    Returns ``(q_exponent, exponent_vector)``.
    """
    word = [list(f) for f in word if f[1]]
    qexp = 0
    changed = True
    while changed:
        changed = False
        for t in range(len(word) - 1):
            (j, a), (i, b) = word[t], word[t + 1]
            if j > i:
                qexp += 2 * lattice.skew[j][i] * a * b
                word[t], word[t + 1] = word[t + 1], word[t]
                changed = True
    x = [0] * lattice.n
    for g, e in word:
        x[g] += e
    return qexp, tuple(x)


exps = st.lists(st.integers(-3, 3), min_size=4, max_size=4).map(tuple)


@given(exps, exps)
def test_monomial_product_matches_bubble_sort(x, y):
    word = [(i, e) for i, e in enumerate(x)] + [(i, e) for i, e in enumerate(y)]
    qexp, z = bubble_order(CYC, word)
    prod = WeylElement.monomial(CYC, x) * WeylElement.monomial(CYC, y)
    assert prod == WeylElement.monomial(CYC, z, QScalar.qpow(qexp))


@given(st.lists(st.tuples(st.integers(0, 7), st.integers(-2, 2)), max_size=6))
def test_words_on_tensor_square(word):
    qexp, z = bubble_order(CYC2, word)
    acc = WeylElement.one(CYC2)
    for g, e in word:
        acc = acc * WeylElement.gen(CYC2, g, e)
    assert acc == WeylElement.monomial(CYC2, z, QScalar.qpow(qexp))


def test_nearest_neighbour_relations():
    w = WeylElement.gens(CYC)
    q2 = QScalar.qpow(-2)
    for n in range(4):
        m = (n + 1) % 4
        assert w[n] * w[m] == (w[m] * w[n]).scale(q2)
    assert commutator(w[0], w[2]).is_zero()
    assert commutator(w[1], w[3]).is_zero()


@given(weyl_elements(CYC), weyl_elements(CYC), weyl_elements(CYC))
def test_associativity_and_distributivity(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(exps)
def test_monomial_inverse(x):
    m = WeylElement.monomial(CYC, x, QScalar.qpow(3) + QScalar.one())
    assert m * m.inverse() == WeylElement.one(CYC)
    assert m.inverse() * m == WeylElement.one(CYC)


def test_inverse_of_sum_is_refused():
    w = WeylElement.gens(CYC)
    with pytest.raises(ValueError):
        (w[0] + w[1]).inverse()


@given(weyl_elements(CYC), weyl_elements(CYC))
def test_trace_is_cyclic(a, b):
    assert trace(a * b - b * a).is_zero()


def test_truncated_product_matches_truncation():
    g = (1, 1, 1, 1)
    w = WeylElement.gens(CYC)
    a = (w[0] + w[1] + WeylElement.one(CYC))
    b = a * a
    for N in range(0, 5):
        assert normal_product(b, a, grading=g, max_degree=N) == truncate(b * a, N, g)


@pytest.mark.parametrize("k", [-2, -1, 1, 3])
def test_cartan_twist_is_an_automorphism(k):
    gens = WeylElement.gens(CYC2)
    els = [gens[0] + gens[5], gens[2] * gens[7] + gens[4], gens[1].inverse() + gens[6]]
    for a in els:
        assert cartan_twist(cartan_twist(a, k), -k) == a
        for b in els:
            assert cartan_twist(a * b, k) == cartan_twist(a, k) * cartan_twist(b, k)


def test_cartan_twist_fixes_cartan_elements():
    # p2+p3 in slot 1 and p1+p4 in slot 2 commute with the twisting form
    K1 = tensor_embed(WeylElement.monomial(CYC, (0, 1, 1, 0)), 0, 2)
    Kp2 = tensor_embed(WeylElement.monomial(CYC, (1, 0, 0, 1)), 1, 2)
    assert cartan_twist(K1, 1) == K1
    assert cartan_twist(Kp2, -1) == Kp2


def test_tensor_slots_commute():
    w = WeylElement.gens(CYC)
    a = tensor(w[0], WeylElement.one(CYC))
    b = tensor(WeylElement.one(CYC), w[1])
    assert commutator(a, b).is_zero()
    assert tensor(w[0], w[1]) == a * b
    assert permute_slots(tensor(w[0], w[1]), (1, 0), 4) == tensor(w[1], w[0])


def test_lattice_mismatch():
    with pytest.raises(LatticeMismatch):
        WeylElement.gen(CYC, 0) * WeylElement.gen(CYC2, 0)


def test_twist_of_w1_w3():
    from moddouble.chevalley import embed
    g = embed()
    w = WeylElement.gens(CYC)
    x = tensor(w[0], w[2])
    want = (x * tensor(g.Kinv, g.Kpinv)).scale(QScalar.qpow(-2))
    assert cartan_twist(x, -1) == want
