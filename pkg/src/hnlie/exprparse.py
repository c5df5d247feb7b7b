"""Parser for exact scalar expressions and basis-vector expressions.

Grammar (shared by scalar literals, algebra-file coefficients, parameter
values on the command line and condition strings in data files)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | atom
    atom    := INT | NAME | 'sqrt' '(' expr ')' | 'e1'..'e4' | '(' expr ')'

NAME is a declared parameter symbol looked up in the environment.
``sqrt`` takes a non-negative integer value.  Basis symbols e1..e4 are
only legal where a vector is expected; scalar and vector quantities may
be combined by +, -, scalar multiplication and division by scalars.
"""

from __future__ import annotations

import re
from typing import Mapping

from .scalar import Scalar

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/]))")


class ExprError(ValueError):
    """Syntax or semantic error in an expression; carries a position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at character {pos + 1})")
        self.pos = pos


class UndeclaredParameterError(ExprError):
    def __init__(self, name: str, pos: int):
        ExprError.__init__(self, f"undeclared parameter '{name}'", pos)
        self.name = name


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    text = text.replace("−", "-")  # tolerate the typographic minus
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            if text[pos:].strip() == "":
                break
            raise ExprError(f"unexpected character {text[pos]!r}", pos)
        if m.group(1):
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    return tokens


class Vec4:
    """A length-4 coefficient vector; the carrier for bracket right sides."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", tuple(Scalar.of(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Vec4 is immutable")

    @staticmethod
    def basis(k: int) -> "Vec4":
        return Vec4([Scalar(1 if i == k else 0) for i in range(1, 5)])

    def __add__(self, other):
        return Vec4([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return Vec4([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Vec4([-a for a in self.coeffs])

    def scale(self, c: Scalar) -> "Vec4":
        return Vec4([c * a for a in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, Vec4) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)


_BASIS = {"e1": 1, "e2": 2, "e3": 3, "e4": 4}


class _Parser:
    def __init__(self, text: str, env: Mapping[str, Scalar], allow_basis: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.env = env
        self.allow_basis = allow_basis

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ExprError("unexpected end of expression", len(self.text))
        self.i += 1
        return tok

    def expect_op(self, op: str):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise ExprError(f"expected '{op}'", tok[2])

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ExprError(f"unexpected token {tok[1]!r}", tok[2])
        return value

    def expr(self):
        value = self.term()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                value = self._add(value, rhs, tok) if tok[1] == "+" else self._sub(value, rhs, tok)
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "*/":
                self.take()
                rhs = self.unary()
                value = self._mul(value, rhs, tok) if tok[1] == "*" else self._div(value, rhs, tok)
            else:
                return value

    def unary(self):
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "-":
            self.take()
            return -self.unary()
        return self.atom()

    def atom(self):
        tok = self.take()
        kind, text, pos = tok
        if kind == "op" and text == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "int":
            return Scalar(int(text))
        if kind == "name":
            if text == "sqrt":
                self.expect_op("(")
                inner = self.expr()
                self.expect_op(")")
                if isinstance(inner, Vec4):
                    raise ExprError("sqrt of a vector", pos)
                if inner.b != 0 or inner.a.denominator != 1 or inner.a < 0:
                    raise ExprError("sqrt argument must be a non-negative integer", pos)
                return Scalar.sqrt_int(inner.a.numerator)
            if text in _BASIS:
                if not self.allow_basis:
                    raise ExprError("basis symbol not allowed here", pos)
                return Vec4.basis(_BASIS[text])
            if text in self.env:
                return Scalar.of(self.env[text])
            raise UndeclaredParameterError(text, pos)
        raise ExprError(f"unexpected token {text!r}", pos)

    @staticmethod
    def _add(a, b, tok):
        if isinstance(a, Vec4) != isinstance(b, Vec4):
            raise ExprError("cannot add a scalar and a vector", tok[2])
        return a + b

    @staticmethod
    def _sub(a, b, tok):
        if isinstance(a, Vec4) != isinstance(b, Vec4):
            raise ExprError("cannot subtract a scalar and a vector", tok[2])
        return a - b

    @staticmethod
    def _mul(a, b, tok):
        if isinstance(a, Vec4) and isinstance(b, Vec4):
            raise ExprError("cannot multiply two vectors", tok[2])
        if isinstance(a, Vec4):
            return a.scale(b)
        if isinstance(b, Vec4):
            return b.scale(a)
        return a * b

    @staticmethod
    def _div(a, b, tok):
        if isinstance(b, Vec4):
            raise ExprError("cannot divide by a vector", tok[2])
        if b.is_zero():
            raise ExprError("division by zero", tok[2])
        if isinstance(a, Vec4):
            return a.scale(b.inverse())
        return a / b


_EMPTY: Mapping[str, Scalar] = {}


def parse_scalar(text: str, env: Mapping[str, Scalar] = _EMPTY) -> Scalar:
    value = _Parser(text, env, allow_basis=False).parse()
    return value


def parse_vector(text: str, env: Mapping[str, Scalar] = _EMPTY) -> Vec4:
    """Parse a basis-vector expression like ``a1*e2 - e3``."""
    value = _Parser(text, env, allow_basis=True).parse()
    if isinstance(value, Vec4):
        return value
    if value.is_zero():
        return Vec4.basis(1).scale(Scalar(0))
    raise ExprError("expected a vector expression", 0)


_COMPARISONS = ("<=", ">=", "!=", "==", "<", ">", "=")


def evaluate_condition(cond: str, env: Mapping[str, Scalar]) -> bool:
    """Evaluate an exact comparison like ``b2 > sqrt(2)/2`` or ``a1 != 0``."""
    from .scalar import compare

    for op in _COMPARISONS:
        idx = cond.find(op)
        if idx >= 0:
            lhs = parse_scalar(cond[:idx], env)
            rhs = parse_scalar(cond[idx + len(op):], env)
            s = compare(lhs, rhs)
            if op == "<":
                return s < 0
            if op == "<=":
                return s <= 0
            if op == ">":
                return s > 0
            if op == ">=":
                return s >= 0
            if op == "!=":
                return s != 0
            return s == 0
    raise ExprError(f"no comparison operator in condition {cond!r}", 0)
