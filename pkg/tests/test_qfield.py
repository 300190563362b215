import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qserre.qfield import ONE, Q, QPoly, QRat, S, ZERO, q_power, qrat_arith, qrat_eval, s_power


def test_normalization_cancels_common_factor():
    # (1 - s^4) / (1 - s^2)  ->  1 + s^2, i.e. 1 + q
    r = QRat((1, 0, 0, 0, -1), (1, 0, -1))
    assert r == ONE + Q
    assert str(r) == "1+q"


def test_inverse_cancellation():
    r = (ONE + Q) / Q
    assert r * Q == ONE + Q


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        qrat_arith(ONE, ZERO, "div")
    with pytest.raises(ZeroDivisionError):
        QRat(1, 0)


def test_eval_simple_points():
    # (1+q)/q at s=2 has q=4
    r = (ONE + Q) / Q
    assert qrat_eval(r, 2) == Fraction(5, 4)
    assert qrat_eval(Q ** 3, 2) == 64


def test_eval_denominator_vanishes():
    r = ONE / (ONE - Q)
    with pytest.raises(ZeroDivisionError) as err:
        r(1)
    assert "s=1" in str(err.value)


def test_denominator_positive_leading_coeff():
    r = ONE / (ONE - Q)
    assert r.den.coeffs[-1] > 0
    assert r.num.coeffs == (-1,)
    assert ONE / (Q - ONE) == -r


def test_common_content_removed():
    assert QRat(2, 4) == QRat(Fraction(1, 2))
    assert QRat(2, 4).den.coeffs == (2,)
    assert QRat((2, 2), (4,)) == QRat((1, 1), (2,))


def test_pow_negative():
    assert Q ** -2 == ONE / Q ** 2
    assert q_power(-1) * Q == ONE
    assert s_power(2) == Q
    assert s_power(-1) * S == ONE


def test_str_forms():
    assert str(ONE - Q) == "1-q"
    assert str((ONE + Q) / Q) == "(1+q)/q"
    assert str(ONE / (ONE - Q)) == "1/(1-q)"
    assert str(S) == "s"
    assert str(S ** 3) == "s^3"
    assert str(2 * Q ** 3 - 1) == "-1+2*q^3"
    assert str(ZERO) == "0"


def test_qpoly_terms_invariant():
    p = QPoly((0, 1, 0, -2))
    assert p.terms == ((1, 1), (3, -2))
    assert QPoly(()).terms == ()
    assert QPoly(()).degree is None
    assert p.degree == 3


small = st.integers(min_value=-6, max_value=6)
polys = st.lists(small, min_size=0, max_size=5)


def qrats():
    return st.builds(
        lambda n, d: QRat(tuple(n), tuple(d)),
        polys,
        polys.filter(lambda cs: any(cs)),
    )


@given(qrats(), qrats(), qrats())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == ZERO
    if a:
        assert a * (ONE / a) == ONE


@given(qrats())
def test_normalization_idempotent(a):
    again = QRat(a.num, a.den)
    assert again.num == a.num and again.den == a.den


@given(qrats(), qrats())
def test_equality_matches_cross_multiplication(a, b):
    cross_zero = (a.num * b.den - b.num * a.den) == QPoly(())
    assert (a == b) == cross_zero


def test_eval_is_field_homomorphism():
    rng = random.Random(7)
    pts = [Fraction(2, 3), Fraction(5, 2), Fraction(-3, 7)]
    for _ in range(50):
        a = QRat(tuple(rng.randint(-4, 4) for _ in range(4)),
                 (rng.randint(1, 3), rng.randint(1, 3)))
        b = QRat(tuple(rng.randint(-4, 4) for _ in range(4)),
                 (rng.randint(1, 4),))
        for x in pts:
            try:
                va, vb = a(x), b(x)
            except ZeroDivisionError:
                continue
            assert (a * b)(x) == va * vb
            assert (a + b)(x) == va + vb


def test_arith_dispatch():
    assert qrat_arith(Q, Q, "add") == 2 * Q
    assert qrat_arith(Q, ONE, "sub") == Q - 1
    assert qrat_arith(Q, Q, "mul") == Q ** 2
    assert qrat_arith(ONE, Q, "div") == ONE / Q
    with pytest.raises(ValueError):
        qrat_arith(Q, Q, "pow")
