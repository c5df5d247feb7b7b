"""Exact arithmetic over Q and real quadratic extensions Q(sqrt(d)).

A :class:`Scalar` is a number ``a + b*sqrt(d)`` with rational ``a``, ``b``
and a square-free integer ``d >= 0``.  ``d == 0`` encodes a plain rational
(then ``b == 0``).  A single computation may use at most one extension:
mixing, say, sqrt(2) and sqrt(3) raises :class:`IncompatibleExtensionError`.

All operations are exact; there is no floating point anywhere in this
module.  In particular :meth:`Scalar.sign` decides the sign of
``a + b*sqrt(d)`` purely algebraically.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction]


class IncompatibleExtensionError(ValueError):
    """Two scalars live in distinct quadratic extensions."""


def square_free_split(n: int) -> tuple[int, int]:
    """Split ``n >= 0`` as ``s*s * f`` with f square-free; return ``(s, f)``."""
    if n < 0:
        raise ValueError("square_free_split expects a non-negative integer")
    if n in (0, 1):
        return (1, n)
    s, f, k = 1, 1, n
    p = 2
    while p * p <= k:
        if k % p == 0:
            e = 0
            while k % p == 0:
                k //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                f *= p
        p += 1 if p == 2 else 2
    f *= k
    return (s, f)


class Scalar:
    """An exact element ``a + b*sqrt(d)`` of Q or Q(sqrt(d))."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0, d: int = 0):
        if type(a) is not Fraction:
            a = Fraction(a)
        if type(b) is not Fraction:
            b = Fraction(b)
        if d < 0:
            raise ValueError("d must be non-negative")
        if b == 0:
            d = 0
        elif d == 0:
            raise ValueError("b != 0 requires d > 0")
        else:
            s, f = square_free_split(d)
            if f <= 1:
                # sqrt(d) is an integer: fold into the rational part.
                a, b, d = a + b * s * f, Fraction(0), 0
            elif s != 1:
                b, d = b * s, f
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _make(cls, a: Fraction, b: Fraction, d: int) -> "Scalar":
        # Internal fast path: a, b are Fractions and (b == 0) == (d == 0)
        # is already guaranteed by the caller's arithmetic.
        self = object.__new__(cls)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)
        return self

    @staticmethod
    def sqrt_int(n: int) -> "Scalar":
        """Exact square root of a non-negative integer."""
        s, f = square_free_split(n)
        if f <= 1:
            return Scalar(s * f)
        return Scalar(0, s, f)

    @staticmethod
    def of(value: "Scalar | RationalLike") -> "Scalar":
        if isinstance(value, Scalar):
            return value
        return Scalar(value)

    # -- ring structure -------------------------------------------------

    def _join_d(self, other: "Scalar") -> int:
        if self.d == 0:
            return other.d
        if other.d == 0 or other.d == self.d:
            return self.d
        raise IncompatibleExtensionError(
            f"cannot mix sqrt({self.d}) and sqrt({other.d}) in one computation"
        )

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.d == other.d:
            b = self.b + other.b
            return Scalar._make(self.a + other.a, b, self.d if b else 0)
        d = self._join_d(other)
        b = self.b + other.b
        return Scalar._make(self.a + other.a, b, d if b else 0)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._make(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.d == 0 and other.d == 0:
            return Scalar._make(self.a * other.a, _FR_ZERO, 0)
        d = self._join_d(other)
        a = self.a * other.a + d * self.b * other.b
        b = self.a * other.b + self.b * other.a
        return Scalar._make(a, b, d if b else 0)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        if self.d == 0:
            return Scalar._make(1 / self.a, _FR_ZERO, 0)
        # 1/(a+b*sqrt(d)) = (a-b*sqrt(d))/(a^2-d*b^2); the norm cannot
        # vanish for square-free d>1 unless a=b=0.
        norm = self.a * self.a - self.d * self.b * self.b
        return Scalar(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = Scalar(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparisons ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d), computed without floating point."""
        sa = (self.a > 0) - (self.a < 0)
        if self.b == 0:
            return sa
        sb = (self.b > 0) - (self.b < 0)
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # Opposite signs: compare a^2 against d*b^2.
        diff = self.a * self.a - self.d * self.b * self.b
        cmp = (diff > 0) - (diff < 0)
        return sa * cmp if cmp else 0

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        try:
            d = self._join_d(other)
        except IncompatibleExtensionError:
            # Distinct extensions only meet at rationals; with b != 0 on
            # either side the values are necessarily different.
            return False
        del d
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return compare(self, other) < 0

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return compare(self, other) <= 0

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return compare(self, other) > 0

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return compare(self, other) >= 0

    # -- formatting -----------------------------------------------------

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)!r})"


def _coerce(value) -> "Scalar":
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    return NotImplemented


_FR_ZERO = Fraction(0)
ZERO = Scalar(0)
ONE = Scalar(1)


def sign(x: Scalar) -> int:
    return x.sign()


def _bounds(x: Scalar, n: int) -> tuple[Fraction, Fraction]:
    if x.d == 0:
        return x.a, x.a
    from math import isqrt

    r = isqrt(x.d * n * n)
    lo, hi = Fraction(r, n), Fraction(r + 1, n)
    if x.b >= 0:
        return x.a + x.b * lo, x.a + x.b * hi
    return x.a + x.b * hi, x.a + x.b * lo


def compare(x: Scalar, y: Scalar) -> int:
    """Exact order of x and y, legal even across distinct extensions.

    Values in distinct real quadratic extensions (with irrational parts on
    both sides) are never equal, so interval refinement always separates
    them; compatible values reduce to an exact sign.
    """
    if x.d == 0 or y.d == 0 or x.d == y.d:
        return (x - y).sign()
    n = 10 ** 8
    for _ in range(8):
        xlo, xhi = _bounds(x, n)
        ylo, yhi = _bounds(y, n)
        if xhi < ylo:
            return -1
        if xlo > yhi:
            return 1
        n *= 10 ** 8
    raise ArithmeticError("comparison failed to separate; values may be equal")


def format_scalar(x: Scalar) -> str:
    """Canonical exact string, e.g. ``5/6``, ``sqrt(2)``, ``(-3+2*sqrt(2))/6``.

    The output parses back to the same value with
    :func:`hnlie.exprparse.parse_scalar`.
    """
    if x.b == 0:
        return str(x.a)
    # Common denominator r: (p + q*sqrt(d))/r with gcd(p, q, r) = 1.
    r = _lcm(x.a.denominator, x.b.denominator)
    p = x.a.numerator * (r // x.a.denominator)
    q = x.b.numerator * (r // x.b.denominator)
    root = f"sqrt({x.d})"
    if q == 1:
        q_part = root
    elif q == -1:
        q_part = f"-{root}"
    else:
        q_part = f"{q}*{root}"
    if p == 0:
        body = q_part
        plain = True
    else:
        body = f"{p}+{q_part}" if not q_part.startswith("-") else f"{p}{q_part}"
        plain = False
    if r == 1:
        return body
    if plain:
        return f"{body}/{r}"
    return f"({body})/{r}"


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)
