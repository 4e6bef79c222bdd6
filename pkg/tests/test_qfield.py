from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from qmacdonald.qfield import (
    ONE,
    Q,
    ZERO,
    QRat,
    pochhammer,
    q_binomial,
    qrat_arith,
    qrat_eval,
    qsum,
)

from conftest import q, same, to_sympy

small_int = st.integers(min_value=-4, max_value=4)
poly_coeffs = st.lists(small_int, min_size=1, max_size=4)


@st.composite
def qrats(draw):
    num = draw(poly_coeffs)
    den = draw(poly_coeffs.filter(lambda c: any(c)))
    return QRat.from_polys(num, den)


def test_factor_cancellation():
    a = QRat.from_polys([1, -1], [1, 0, -1])
    assert qrat_arith(a, ONE + Q, "mul") == ONE


def test_additive_identity():
    assert qrat_arith(Q, ZERO, "add") == Q


def test_inverse_round_trip():
    inv = qrat_arith(ONE, ONE - Q, "div")
    assert qrat_arith(inv, ONE - Q, "mul") == ONE


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        qrat_arith(Q, ZERO, "div")


def test_unknown_op():
    with pytest.raises(ValueError):
        qrat_arith(Q, Q, "pow")


def test_pochhammer_examples():
    assert pochhammer(Q, 2) == (ONE - Q) * (ONE - Q**2)
    assert pochhammer(QRat.from_polys([3, 1, 7], [2, 5]), 0) == ONE
    assert pochhammer(QRat.q(-1), 2) == ZERO


def test_eval_examples():
    assert qrat_eval((ONE - Q**2) / (ONE - Q), Fraction(1, 2)) == Fraction(3, 2)
    assert qrat_eval(Q**3, 2) == 8
    with pytest.raises(ZeroDivisionError):
        qrat_eval(ONE / (ONE - Q), 1)


def test_negative_powers():
    x = QRat.q(-3) * (ONE - Q)
    assert x * QRat.q(3) == ONE - Q
    assert same(x, (1 - q) / q**3)


def test_canonical_denominator_form():
    # 1/2 * (1+q)/(3+3q^2): denominator content 1, positive lowest coefficient
    x = QRat(Fraction(1, 2)) * (ONE + Q) / (3 + 3 * Q**2)
    assert x.den == (1, 0, 1)
    assert x.num == (Fraction(1, 6), Fraction(1, 6))
    assert (-x).den == (1, 0, 1)
    neg_den = QRat.from_polys([1], [-1, 2])
    assert neg_den.den == (1, -2)
    assert neg_den.num == (-1,)


def test_json_round_trip():
    x = (ONE - Q**5) / (ONE - Q**3) + 2 * Q / (ONE - Q**2)
    data = x.to_json()
    assert data["den"][0] == [1, 1]
    assert QRat.from_json(data) == x


def test_q_binomial_matches_sympy():
    for n in range(6):
        for r in range(n + 1):
            expected = sp.Mul(*[(1 - q**(n - i)) / (1 - q**(i + 1)) for i in range(r)])
            assert same(q_binomial(n, r), expected)


def test_str():
    assert str((ONE - Q**3) / (ONE - Q)) == "1 + q + q^2"
    assert str(ONE / (ONE + Q)) == "1/(1 + q)"


@settings(max_examples=60, deadline=None)
@given(qrats(), qrats(), qrats())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a - a == ZERO
    if b:
        assert (a / b) * b == a


@settings(max_examples=40, deadline=None)
@given(qrats(), qrats())
def test_arith_agrees_with_sympy(a, b):
    assert same(a + b, to_sympy(a) + to_sympy(b))
    assert same(a * b, to_sympy(a) * to_sympy(b))


@settings(max_examples=40, deadline=None)
@given(poly_coeffs, poly_coeffs.filter(lambda c: any(c)), st.integers(2, 5))
def test_canonical_form_unique(num, den, scale):
    a = QRat.from_polys(num, den)
    b = QRat.from_polys([scale * c for c in num], [scale * c for c in den])
    c = QRat.from_polys([-c for c in num], [-c for c in den])
    assert a == b == c
    assert hash(a) == hash(b)
    assert (a.int_num, a.int_den) == (b.int_num, b.int_den)


@pytest.mark.parametrize("m", range(7))
@pytest.mark.parametrize("n", range(7))
def test_pochhammer_splitting(m, n):
    for a in (Q, QRat.q(-2), QRat.from_polys([1, 2], [3]), QRat(Fraction(5, 7)) * Q**2):
        assert pochhammer(a, m + n) == pochhammer(a, m) * pochhammer(a * Q**m, n)


def test_qsum_matches_repeated_addition():
    vals = [ONE / (ONE - Q), Q / (ONE - Q), QRat.q(-1), ONE / (ONE + Q), ZERO]
    total = ZERO
    for v in vals:
        total = total + v
    assert qsum(vals) == total
