from fractions import Fraction as Fr

import pytest

from hnlie.exprparse import (
    ExprError,
    UndeclaredParameterError,
    Vec4,
    evaluate_condition,
    parse_scalar,
    parse_vector,
)
from hnlie.scalar import Scalar


def test_scalar_literals():
    assert parse_scalar("5/6") == Scalar(Fr(5, 6))
    assert parse_scalar("(-3+2*sqrt(2))/6") == Scalar(Fr(-1, 2), Fr(1, 3), 2)
    assert parse_scalar("sqrt(3)/6") == Scalar(0, Fr(1, 6), 3)
    assert parse_scalar("(sqrt(2)-3)/2") == Scalar(Fr(-3, 2), Fr(1, 2), 2)
    assert parse_scalar("-2") == Scalar(-2)
    assert parse_scalar("sqrt(8)") == Scalar(0, 2, 2)
    assert parse_scalar("1 - 2*(1/2)") == Scalar(0)


def test_parameters_and_errors():
    env = {"a1": Scalar(Fr(1, 2))}
    assert parse_scalar("2*a1 + 1", env) == Scalar(2)
    with pytest.raises(UndeclaredParameterError):
        parse_scalar("2*b1", env)
    with pytest.raises(ExprError):
        parse_scalar("1 +", env)
    with pytest.raises(ExprError):
        parse_scalar("sqrt(1/2)")
    with pytest.raises(ExprError):
        parse_scalar("(1")
    with pytest.raises(ExprError):
        parse_scalar("1/0")


def test_vector_expressions():
    v = parse_vector("a1*e2 - e3", {"a1": Scalar(3)})
    assert v == Vec4([Scalar(0), Scalar(3), Scalar(-1), Scalar(0)])
    assert parse_vector("(e1-e3)/2") == Vec4(
        [Scalar(Fr(1, 2)), Scalar(0), Scalar(Fr(-1, 2)), Scalar(0)]
    )
    with pytest.raises(ExprError):
        parse_vector("e1*e2")
    with pytest.raises(ExprError):
        parse_vector("e1 + 1")
    with pytest.raises(ExprError):
        parse_scalar("e1 + e2")  # basis symbols need vector context


def test_conditions():
    env = {"b2": Scalar(Fr(3, 4))}
    assert evaluate_condition("b2 > sqrt(2)/2", env)
    assert not evaluate_condition("b2 > 3/4", env)
    assert evaluate_condition("b2 >= 3/4", env)
    assert evaluate_condition("b2 != 0", env)
    assert evaluate_condition("b2*4 == 3", env)
    with pytest.raises(ExprError):
        evaluate_condition("b2", env)
