"""Four-dimensional Lie algebras given by structure constants.

A :class:`LieAlgebraSpec` is symbolic: brackets ``[e_i, e_j]`` carry
coefficient expressions over declared parameters.  Instantiating a spec
with exact parameter bindings yields a :class:`LieAlgebra` whose
structure tensor ``c[k, i, j]`` satisfies antisymmetry by construction;
the Jacobi identity is checked, never assumed.

The twelve builtin families g4_1 .. g4_12 ship with their parameter
domains and the alternate names used by other classification schemes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .exprparse import ExprError, Vec4, evaluate_condition, parse_scalar, parse_vector
from .linalg import Tensor
from .scalar import Scalar

DIM = 4


class AlgebraFileError(ValueError):
    """Problem in an algebra description file; carries a line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DomainViolationError(ValueError):
    pass


class UnboundParameterError(ValueError):
    pass


@dataclass(frozen=True)
class BracketRule:
    """[e_i, e_j] = coefficient expression, with i < j."""

    i: int
    j: int
    expr: str


@dataclass(frozen=True)
class LieAlgebraSpec:
    name: str
    params: tuple[str, ...] = ()
    domain: tuple[str, ...] = ()  # exact conditions on the parameters
    brackets: tuple[BracketRule, ...] = ()
    alt_names: Mapping[str, str] = field(default_factory=dict)
    default_bindings: Mapping[str, Scalar] = field(default_factory=dict)

    def instantiate(self, bindings: Mapping[str, Scalar] | None = None) -> "LieAlgebra":
        env = dict(bindings or {})
        for symbol in self.params:
            if symbol not in env:
                raise UnboundParameterError(
                    f"{self.name}: parameter '{symbol}' is not bound"
                )
        for extra in set(env) - set(self.params):
            raise UnboundParameterError(
                f"{self.name}: unknown parameter '{extra}'"
            )
        for cond in self.domain:
            if not evaluate_condition(cond, env):
                raise DomainViolationError(
                    f"{self.name}: binding violates domain constraint '{cond}'"
                )
        table: dict[tuple[int, int], Vec4] = {}
        for rule in self.brackets:
            table[(rule.i, rule.j)] = parse_vector(rule.expr, env)

        def component(k: int, i: int, j: int) -> Scalar:
            if i == j:
                return Scalar(0)
            vec = table.get((i, j) if i < j else (j, i))
            if vec is None:
                return Scalar(0)
            value = vec.coeffs[k - 1]
            return value if i < j else -value

        c = Tensor.build((DIM, DIM, DIM), component)
        return LieAlgebra(c=c, source=self, bindings=env)


@dataclass(frozen=True)
class LieAlgebra:
    """Instantiated algebra: c[k, i, j] with [e_i, e_j] = sum_k c^k_ij e_k."""

    c: Tensor
    source: LieAlgebraSpec
    bindings: Mapping[str, Scalar]

    def bracket_basis(self, i: int, j: int) -> tuple[Scalar, ...]:
        return tuple(self.c[k, i, j] for k in range(1, DIM + 1))

    def bracket(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> tuple[Scalar, ...]:
        """[x, y] for coefficient vectors x, y of length 4."""
        if len(x) != DIM or len(y) != DIM:
            raise ValueError("bracket expects length-4 vectors")
        out = [Scalar(0)] * DIM
        for i in range(1, DIM + 1):
            if x[i - 1].is_zero():
                continue
            for j in range(1, DIM + 1):
                if y[j - 1].is_zero():
                    continue
                f = x[i - 1] * y[j - 1]
                for k in range(1, DIM + 1):
                    out[k - 1] = out[k - 1] + f * self.c[k, i, j]
        return tuple(out)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_jacobi(algebra: LieAlgebra) -> ValidationReport:
    """List every basis triple (i,j,k) with a non-zero Jacobi cycle."""
    bad = []
    basis = [
        tuple(Scalar(1 if m == n else 0) for m in range(1, DIM + 1))
        for n in range(1, DIM + 1)
    ]
    for i in range(1, DIM + 1):
        for j in range(i + 1, DIM + 1):
            for k in range(j + 1, DIM + 1):
                x, y, z = basis[i - 1], basis[j - 1], basis[k - 1]
                total = [Scalar(0)] * DIM
                for a, b, c_ in ((x, y, z), (y, z, x), (z, x, y)):
                    term = algebra.bracket(algebra.bracket(a, b), c_)
                    total = [t + s for t, s in zip(total, term)]
                if any(not t.is_zero() for t in total):
                    bad.append(f"jacobi fails on (e{i}, e{j}, e{k})")
    return ValidationReport(tuple(bad))


# -- algebra description files ------------------------------------------

_QUOTED = r'"([^"]*)"'


def parse_algebra(text: str) -> LieAlgebraSpec:
    """Parse the line-oriented algebra file grammar.

    Lines: ``name = "..."``, ``param <symbol> = <scalar expr>``,
    ``bracket [ei,ej] = <vector expr>``; ``#`` starts a comment.
    Parameter values become the spec's default bindings.
    """
    import re

    name = "anonymous"
    params: list[str] = []
    bindings: dict[str, Scalar] = {}
    brackets: dict[tuple[int, int], BracketRule] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(rf"name\s*=\s*{_QUOTED}", line)
        if m:
            name = m.group(1)
            continue
        m = re.fullmatch(r"param\s+([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(.+)", line)
        if m:
            symbol, value = m.group(1), m.group(2)
            if symbol in params:
                raise AlgebraFileError(f"duplicate parameter '{symbol}'", lineno)
            try:
                bindings[symbol] = parse_scalar(value, bindings)
            except ExprError as exc:
                raise AlgebraFileError(f"bad parameter value: {exc}", lineno) from exc
            params.append(symbol)
            continue
        m = re.fullmatch(r"bracket\s*\[\s*e(\d+)\s*,\s*e(\d+)\s*\]\s*=\s*(.+)", line)
        if m:
            i, j, expr = int(m.group(1)), int(m.group(2)), m.group(3)
            if not (1 <= i <= DIM and 1 <= j <= DIM):
                raise AlgebraFileError(f"basis index out of range in [e{i},e{j}]", lineno)
            if i == j:
                raise AlgebraFileError(f"bracket [e{i},e{j}] of a vector with itself", lineno)
            key, sgn = ((i, j), False) if i < j else ((j, i), True)
            if key in brackets:
                raise AlgebraFileError(f"duplicate bracket for [e{key[0]},e{key[1]}]", lineno)
            try:
                parse_vector(expr, bindings)
            except ExprError as exc:
                raise AlgebraFileError(f"bad bracket expression: {exc}", lineno) from exc
            brackets[key] = BracketRule(key[0], key[1], f"-({expr})" if sgn else expr)
            continue
        raise AlgebraFileError(f"unrecognized line {line!r}", lineno)
    return LieAlgebraSpec(
        name=name,
        params=tuple(params),
        domain=(),
        brackets=tuple(brackets[key] for key in sorted(brackets)),
        alt_names={},
        default_bindings=bindings,
    )


def serialize_algebra(spec: LieAlgebraSpec) -> str:
    lines = [f'name = "{spec.name}"']
    for symbol in spec.params:
        value = spec.default_bindings.get(symbol)
        if value is None:
            raise UnboundParameterError(
                f"cannot serialize '{spec.name}': parameter '{symbol}' has no value"
            )
        lines.append(f"param {symbol} = {value}")
    for rule in spec.brackets:
        lines.append(f"bracket [e{rule.i},e{rule.j}] = {rule.expr}")
    return "\n".join(lines) + "\n"


def load_algebra(text: str) -> LieAlgebra:
    spec = parse_algebra(text)
    return spec.instantiate(spec.default_bindings)


# -- builtin families ----------------------------------------------------

def _spec(name, params, domain, brackets, alt):
    return LieAlgebraSpec(
        name=name,
        params=tuple(params),
        domain=tuple(domain),
        brackets=tuple(BracketRule(i, j, expr) for (i, j, expr) in brackets),
        alt_names=alt,
    )


BUILTIN: dict[str, LieAlgebraSpec] = {
    "g4_1": _spec(
        "g4_1", (), (),
        [(2, 4, "e1"), (3, 4, "e2")],
        {"andrada": "n_4", "mubarakzyanov": "g_{4,1}", "patera": "A_{4,1}"},
    ),
    "g4_2": _spec(
        "g4_2", ("m",), ("m != 0",),
        [(1, 4, "m*e1"), (2, 4, "e2"), (3, 4, "e2+e3")],
        {"andrada": "r_{4,a}", "mubarakzyanov": "g_{4,2}", "patera": "A_{4,2}^a"},
    ),
    "g4_3": _spec(
        "g4_3", (), (),
        [(1, 4, "e1"), (3, 4, "e2")],
        {"andrada": "r_{4,0}", "mubarakzyanov": "g_{4,3}", "patera": "A_{4,3}"},
    ),
    "g4_4": _spec(
        "g4_4", (), (),
        [(1, 4, "e1"), (2, 4, "e1+e2"), (3, 4, "e2+e3")],
        {"andrada": "r_4", "mubarakzyanov": "g_{4,4}", "patera": "A_{4,4}"},
    ),
    "g4_5": _spec(
        "g4_5", ("a1", "a2"), ("a1 != 0", "a2 != 0"),
        [(1, 4, "e1"), (2, 4, "a1*e2"), (3, 4, "a2*e3")],
        {"andrada": "r_{4,a,b}", "mubarakzyanov": "g_{4,5}", "patera": "A_{4,5}^{a,b}"},
    ),
    "g4_6": _spec(
        "g4_6", ("b1", "b2"), ("b1 != 0", "b2 >= 0"),
        [(1, 4, "b1*e1"), (2, 4, "b2*e2-e3"), (3, 4, "e2+b2*e3")],
        {"andrada": "r'_{4,a,b}", "mubarakzyanov": "g_{4,6}", "patera": "A_{4,6}^{a,b}"},
    ),
    "g4_7": _spec(
        "g4_7", (), (),
        [(1, 4, "2*e1"), (2, 3, "e1"), (2, 4, "e2"), (3, 4, "e2+e3")],
        {"andrada": "h_4", "mubarakzyanov": "g_{4,7}", "patera": "A_{4,7}"},
    ),
    "g4_8": _spec(
        "g4_8", (), (),
        [(2, 3, "e1"), (2, 4, "e2"), (3, 4, "-e3")],
        {"andrada": "d_4", "mubarakzyanov": "g_{4,8(-1)}", "patera": "A_{4,8}"},
    ),
    "g4_9": _spec(
        "g4_9", ("p",), ("p > -1", "p <= 1"),
        [(1, 4, "(p+1)*e1"), (2, 3, "e1"), (2, 4, "e2"), (3, 4, "p*e3")],
        {"andrada": "d_{4,1/1+b}", "mubarakzyanov": "g_{4,8}", "patera": "A_{4,9}^b"},
    ),
    "g4_10": _spec(
        "g4_10", (), (),
        [(2, 3, "e1"), (2, 4, "-e3"), (3, 4, "e2")],
        {"andrada": "d'_{4,0}", "mubarakzyanov": "g_{4,9(0)}", "patera": "A_{4,10}"},
    ),
    "g4_11": _spec(
        "g4_11", ("q",), ("q > 0",),
        [(1, 4, "2*q*e1"), (2, 3, "e1"), (2, 4, "q*e2-e3"), (3, 4, "e2+q*e3")],
        {"andrada": "d'_{4,a}", "mubarakzyanov": "g_{4,9}", "patera": "A_{4,11}^a"},
    ),
    "g4_12": _spec(
        "g4_12", (), (),
        [(1, 3, "e1"), (1, 4, "-e2"), (2, 3, "e2"), (2, 4, "e1")],
        {"andrada": "aff(C)", "mubarakzyanov": "g_{4,10}", "patera": "A_{4,12}"},
    ),
}

FAMILY_NAMES = tuple(BUILTIN)

ABELIAN = LieAlgebraSpec(name="abelian", brackets=())


def builtin(family: str, bindings: Mapping[str, Scalar] | None = None) -> LieAlgebra:
    """Instantiate a builtin family; bindings must satisfy its domain."""
    try:
        spec = BUILTIN[family]
    except KeyError:
        raise KeyError(f"unknown builtin family '{family}' (g4_1 .. g4_12)") from None
    return spec.instantiate(bindings)
