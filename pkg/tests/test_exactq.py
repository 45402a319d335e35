from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from symsub.exactq import LaurentPoly, RatFunc, laurent_gcd, q_pow, qbinom, qfact, qint, unit_inverse

q = LaurentPoly.q()


def inversion_oracle(n, d, eps=1):
    """q^{-d(n-d)} sum over 0/1 words with d ones of q^{2 inv}, in q^eps."""
    acc = {}
    for ones in combinations(range(n), d):
        inv = sum(1 for a in ones for b in range(a + 1, n) if b not in ones)
        e = eps * (2 * inv - d * (n - d))
        acc[e] = acc.get(e, 0) + 1
    return LaurentPoly(acc)


def test_frozen_values():
    assert qint(3) == LaurentPoly({2: 1, 0: 1, -2: 1})
    assert qint(-2) == LaurentPoly({1: -1, -1: -1})
    assert qint(2, 2) == LaurentPoly({2: 1, -2: 1})
    assert qbinom(4, 2) == LaurentPoly({4: 1, 2: 1, 0: 2, -2: 1, -4: 1})
    assert qfact(3) == LaurentPoly({3: 1, 1: 2, -1: 2, -3: 1})
    assert str(qint(2)) in ("q + q^-1", "q^-1 + q")


@pytest.mark.parametrize("eps", [1, 2, 3])
def test_qbinom_matches_inversion_count(eps):
    for n in range(0, 11):
        for d in range(0, n + 1):
            assert qbinom(n, d, eps) == inversion_oracle(n, d, eps), (n, d, eps)


def test_qbinom_negative_top():
    # [-1 choose d] = (-1)^d by the product formula
    for d in range(5):
        assert qbinom(-1, d) == LaurentPoly((-1) ** d)


def test_exact_division_raises_on_remainder():
    with pytest.raises(ArithmeticError):
        (q + 1).exact_div(q * q + 3)
    assert (q + 1).try_div(q * q + 3) is None


laurent = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)


@given(laurent, laurent, laurent)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == LaurentPoly()
    assert (a * b).bar() == a.bar() * b.bar()


@given(laurent, laurent)
def test_product_then_divide(a, b):
    if b.is_zero():
        return
    assert (a * b).exact_div(b) == a


@given(laurent, laurent.filter(lambda x: not x.is_zero()))
def test_ratfunc_roundtrip(a, b):
    r = RatFunc(a, b)
    assert r * RatFunc(b) == RatFunc(a)
    assert (r + r) == RatFunc(a * 2, b)
    if not a.is_zero():
        assert r * (1 / r) == RatFunc(LaurentPoly(1))


@given(laurent, laurent, laurent)
def test_gcd_divides(a, b, c):
    if c.is_zero():
        return
    g = laurent_gcd(a * c, b * c)
    assert g.try_div(c) is not None or (a.is_zero() and b.is_zero())
    if not g.is_zero():
        assert (a * c).try_div(g) is not None
        assert (b * c).try_div(g) is not None


@given(st.integers(0, 20), st.integers(1, 3))
def test_qint_at_one_and_bar(n, eps):
    assert qint(n, eps).eval_at_one() == n
    assert qint(n, eps).bar() == qint(n, eps)


@given(st.integers(0, 30), st.data())
def test_qbinom_symmetry_and_specialisation(n, data):
    d = data.draw(st.integers(0, n))
    eps = data.draw(st.integers(1, 3))
    b = qbinom(n, d, eps)
    assert b == qbinom(n, n - d, eps)
    assert b.eval_at_one() == comb(n, d)


def test_units():
    assert unit_inverse(q_pow(3)) == q_pow(-3)
    assert unit_inverse(-1) == -1
    with pytest.raises(ArithmeticError):
        unit_inverse(2)
    with pytest.raises(ArithmeticError):
        unit_inverse(q + 1)


def test_evaluation():
    p = qint(3)
    assert p.evaluate(2) == 4 + 1 + __import__("fractions").Fraction(1, 4)
    assert p.evaluate_mod(2, 7) == (4 + 1 + pow(4, -1, 7)) % 7
