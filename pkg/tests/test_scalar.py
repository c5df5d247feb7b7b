from fractions import Fraction as Fr

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hnlie.scalar import IncompatibleExtensionError, Scalar, format_scalar, sign, square_free_split

mpmath.mp.prec = 200


def to_mp(x: Scalar):
    return mpmath.mpf(x.a.numerator) / x.a.denominator + (
        mpmath.mpf(x.b.numerator) / x.b.denominator
    ) * mpmath.sqrt(x.d)


rationals = st.fractions(
    min_value=-50, max_value=50, max_denominator=12
)


def scalars(d):
    if d == 0:
        return st.builds(lambda a: Scalar(a), rationals)
    return st.builds(lambda a, b: Scalar(a, b, d), rationals, rationals)


any_scalar = st.one_of(scalars(0), scalars(2), scalars(3), scalars(15))


def test_rational_addition():
    assert Scalar(Fr(1, 2)) + Scalar(Fr(1, 3)) == Scalar(Fr(5, 6))


def test_conjugate_product():
    x = Scalar(1, 1, 2) * Scalar(1, -1, 2)
    assert x == Scalar(-1)


def test_sqrt3_sixth_squared():
    # (sqrt(3)/6)^2 * 12 == 1, cross-checked in high precision
    q = Scalar(0, Fr(1, 6), 3)
    value = q * q * Scalar(12)
    assert value == Scalar(1)
    assert abs(to_mp(q) ** 2 * 12 - 1) < mpmath.mpf(2) ** -150


def test_sign_examples():
    assert sign(Scalar(0)) == 0
    x = Scalar(-3, 2, 2)
    assert sign(x) == -1
    assert mpmath.sign(to_mp(x)) == -1
    half_sqrt2 = Scalar(0, Fr(1, 2), 2)
    assert sign(Scalar(1) - Scalar(2) * half_sqrt2 * half_sqrt2) == 0


def test_sqrt_int_normalization():
    assert Scalar.sqrt_int(0) == Scalar(0)
    assert Scalar.sqrt_int(1) == Scalar(1)
    assert Scalar.sqrt_int(4) == Scalar(2)
    assert Scalar.sqrt_int(8) == Scalar(0, 2, 2)
    assert Scalar.sqrt_int(12) == Scalar(0, 2, 3)


def test_square_free_split():
    assert square_free_split(360) == (6, 10)
    assert square_free_split(1) == (1, 1)


def test_d_one_folds_into_rational():
    assert Scalar(2, 3, 1) == Scalar(5)


def test_incompatible_extensions_rejected():
    with pytest.raises(IncompatibleExtensionError):
        Scalar(0, 1, 2) + Scalar(0, 1, 3)
    # but they are comparable for equality (always unequal)
    assert Scalar(0, 1, 2) != Scalar(0, 1, 3)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Scalar(1) / Scalar(0)


@settings(max_examples=60)
@given(st.sampled_from([0, 2, 3, 15]), st.data())
def test_field_axioms(d, data):
    x = data.draw(scalars(d))
    y = data.draw(scalars(d))
    z = data.draw(scalars(d))
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if not x.is_zero():
        assert x * x.inverse() == Scalar(1)


@settings(max_examples=60)
@given(st.sampled_from([0, 2, 3, 15]), st.data())
def test_sign_multiplicative_and_oracle(d, data):
    x = data.draw(scalars(d))
    y = data.draw(scalars(d))
    assert sign(x * y) == sign(x) * sign(y)
    assert (sign(x) == 0) == x.is_zero()
    mx = to_mp(x)
    if abs(mx) > mpmath.mpf(2) ** -120:
        assert sign(x) == int(mpmath.sign(mx))


@settings(max_examples=60)
@given(any_scalar)
def test_format_round_trip(x):
    from hnlie.exprparse import parse_scalar

    assert parse_scalar(format_scalar(x)) == x


def test_format_examples():
    assert format_scalar(Scalar(Fr(-1, 2), Fr(1, 3), 2)) == "(-3+2*sqrt(2))/6"
    assert format_scalar(Scalar(0, 1, 2)) == "sqrt(2)"
    assert format_scalar(Scalar(0, Fr(1, 6), 3)) == "sqrt(3)/6"
    assert format_scalar(Scalar(Fr(5, 6))) == "5/6"
    assert format_scalar(Scalar(-3)) == "-3"


def test_ordering_is_exact():
    # 2*sqrt(2) < 3 although the parts suggest otherwise
    assert Scalar(0, 2, 2) < Scalar(3)
    assert Scalar(0, 1, 3) > Scalar(Fr(17, 10))
    assert not Scalar(0, 1, 3) > Scalar(Fr(174, 100))
