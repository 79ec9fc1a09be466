import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from nws_hpm.scalar import (
    IncompatibleExtensionError,
    Scalar,
    scalar_add,
    scalar_mul,
    scalar_pow,
    scalar_to_float,
)

from conftest import fractions

A = Scalar.sqrt(F(3, 4))


def q3(rat, surd):
    return Scalar(rat, surd, 3)


def test_add_examples():
    assert scalar_add(Scalar(F(1, 2)), Scalar(F(1, 3))) == Scalar(F(5, 6))
    assert scalar_add(q3(1, 2), q3(-1, -2)) == Scalar(0)
    assert scalar_add(A, A) == Scalar(0, 2, F(3, 4))


def test_mul_examples():
    assert scalar_mul(q3(1, 2), q3(1, -2)) == Scalar(-11)
    assert A * A == Scalar(F(3, 4))
    assert A**3 == Scalar(0, F(3, 4), F(3, 4))


def test_pow_examples():
    assert scalar_pow(Scalar(F(1, 10)), 3) == Scalar(F(1, 1000))
    assert scalar_pow(A, 0) == Scalar(1)
    assert scalar_pow(q3(1, 1), 2) == q3(4, 2)


def test_to_float_examples():
    assert scalar_to_float(Scalar(F(1, 2))) == 0.5
    assert scalar_to_float(A) == pytest.approx(math.sqrt(0.75), rel=0, abs=1e-16)
    assert round(scalar_to_float(A), 10) == 0.8660254038
    assert scalar_to_float(Scalar(F(17, 100))) == 0.17


def test_to_float_survives_cancellation():
    # 19601 - 13860*sqrt(2) = 1/(19601 + 13860*sqrt(2)) ~ 2.55e-5
    x = Scalar(19601, -13860, 2)
    assert scalar_to_float(x) == pytest.approx(1 / (19601 + 13860 * math.sqrt(2)), rel=1e-15)


def test_mismatched_extension():
    with pytest.raises(IncompatibleExtensionError, match="incompatible extension"):
        Scalar(1, 1, 2) + Scalar(1, 1, 3)
    with pytest.raises(IncompatibleExtensionError):
        Scalar(1, 1, 2) * Scalar(0, 1, 3)


def test_rationals_mix_with_any_extension():
    assert Scalar(2) + A == Scalar(2, 1, F(3, 4))
    assert (Scalar(2) * A).s == F(3, 4)


def test_perfect_square_radicand_folds():
    x = Scalar(1, 2, F(9, 4))
    assert x.surd == 0 and x == Scalar(4)
    assert Scalar(0, 5, 0) == Scalar(0)


def test_canonical_rationals():
    x = Scalar(F(6, -4))
    assert x.rat.denominator == 2 and x.rat.numerator == -3
    assert Scalar(0).rat == F(0, 1)


def test_inverse_and_immutability():
    x = q3(1, 2)
    assert x * x.inverse() == Scalar(1)
    with pytest.raises(ZeroDivisionError):
        Scalar(0).inverse()
    with pytest.raises(AttributeError):
        x._rat = F(5)


def test_str():
    assert str(Scalar(0, F(9, 2), F(3, 4))) == "9/2*sqrt(3/4)"
    assert str(Scalar(1, -2, 3)) == "1 - 2*sqrt(3)"
    assert str(Scalar(F(-5, 3))) == "-5/3"


surd3 = st.builds(lambda a, b: Scalar(a, b, 3), fractions, fractions)


@settings(max_examples=1000, deadline=None)
@given(surd3, surd3, surd3)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(surd3)
def test_conjugate_product_is_rational(a):
    assert (a * a.conjugate()).surd == 0


magnitudes = st.floats(min_value=1e-6, max_value=1e6)


@given(magnitudes, magnitudes, st.booleans(), st.booleans())
def test_float_is_multiplicative(x, y, sx, sy):
    a = Scalar(F(x).limit_denominator(10**9), F(y).limit_denominator(10**9) if sx else 0, 5)
    b = Scalar(F(y).limit_denominator(10**9), F(x).limit_denominator(10**9) if sy else 0, 5)
    fa, fb = scalar_to_float(a), scalar_to_float(b)
    if not (1e-6 <= abs(fa) <= 1e6 and 1e-6 <= abs(fb) <= 1e6):
        return
    assert scalar_to_float(a * b) == pytest.approx(fa * fb, rel=1e-13)
