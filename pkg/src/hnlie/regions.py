"""Deterministic rational sampling of parameter regions.

Regions are described by per-parameter rules (interval bounds as exact
expression strings, exclusions, or a derivation from already-drawn
parameters) plus exact side conditions.  Candidates violating a
condition are rejected and redrawn, so every emitted point satisfies
the region exactly; the draw sequence is a pure function of the seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Mapping, Sequence

from .exprparse import ExprError, evaluate_condition, parse_scalar
from .scalar import Scalar


class SamplingError(RuntimeError):
    """Rejection sampling failed to find a point satisfying the region."""


@dataclass(frozen=True)
class ParamRule:
    name: str
    lo: str | None = None
    hi: str | None = None
    lo_open: bool = True
    hi_open: bool = True
    exclude: tuple[str, ...] = ()
    derive: str | None = None
    aux: bool = False

    @staticmethod
    def from_dict(raw: Mapping) -> "ParamRule":
        return ParamRule(
            name=raw["name"],
            lo=raw.get("lo"),
            hi=raw.get("hi"),
            lo_open=raw.get("lo_open", True),
            hi_open=raw.get("hi_open", True),
            exclude=tuple(raw.get("exclude", ())),
            derive=raw.get("derive"),
            aux=raw.get("aux", False),
        )


# Free parameters of each builtin family with their domain intervals.
DEFAULT_RULES: dict[str, tuple[ParamRule, ...]] = {
    "g4_1": (),
    "g4_2": (ParamRule("m", exclude=("0",)),),
    "g4_3": (),
    "g4_4": (),
    "g4_5": (ParamRule("a1", exclude=("0",)), ParamRule("a2", exclude=("0",))),
    "g4_6": (ParamRule("b1", exclude=("0",)), ParamRule("b2", lo="0", lo_open=False)),
    "g4_7": (),
    "g4_8": (),
    "g4_9": (ParamRule("p", lo="-1", hi="1", lo_open=True, hi_open=False),),
    "g4_10": (),
    "g4_11": (ParamRule("q", lo="0", lo_open=True),),
    "g4_12": (),
}


def merge_rules(family: str, overrides: Sequence[ParamRule]) -> tuple[ParamRule, ...]:
    """Region rules override the family defaults parameter by parameter."""
    merged: dict[str, ParamRule] = {}
    for rule in overrides:
        merged[rule.name] = rule
    out = list(overrides)
    for rule in DEFAULT_RULES[family]:
        if rule.name not in merged:
            out.append(rule)
    return tuple(out)


def _rational_bound(s: Scalar, below: bool) -> Fraction:
    """A rational below (or above) ``s``, tight to about 1e-6."""
    if s.d == 0:
        return s.a
    n = 10 ** 6
    r = isqrt(s.d * n * n)
    lo, hi = Fraction(r, n), Fraction(r + 1, n)
    root = lo if (below == (s.b > 0)) else hi
    return s.a + s.b * root


def _draw_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-40, 40), rng.randint(1, 9))


def _draw_positive(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 40), rng.randint(1, 9))


def _draw_in_rule(rng: random.Random, rule: ParamRule, env: Mapping[str, Scalar]) -> Scalar:
    lo = parse_scalar(rule.lo, env) if rule.lo is not None else None
    hi = parse_scalar(rule.hi, env) if rule.hi is not None else None
    if lo is None and hi is None:
        return Scalar(_draw_fraction(rng))
    if lo is not None and hi is None:
        return Scalar(_rational_bound(lo, below=False) + _draw_positive(rng))
    if lo is None and hi is not None:
        return Scalar(_rational_bound(hi, below=True) - _draw_positive(rng))
    lo_in = _rational_bound(lo, below=False)
    hi_in = _rational_bound(hi, below=True)
    if lo_in >= hi_in:
        raise SamplingError(f"interval for '{rule.name}' is too narrow to sample")
    t = Fraction(rng.randint(1, 47), 48)
    return Scalar(lo_in + t * (hi_in - lo_in))


def _rule_ok(value: Scalar, rule: ParamRule, env: Mapping[str, Scalar]) -> bool:
    if rule.lo is not None:
        lo = parse_scalar(rule.lo, env)
        if value < lo or (rule.lo_open and value == lo):
            return False
    if rule.hi is not None:
        hi = parse_scalar(rule.hi, env)
        if value > hi or (rule.hi_open and value == hi):
            return False
    for text in rule.exclude:
        if value == parse_scalar(text, env):
            return False
    return True


def sample_point(
    rng: random.Random,
    rules: Sequence[ParamRule],
    conditions: Sequence[str] = (),
    max_tries: int = 400,
) -> dict[str, Scalar]:
    """One exact parameter point satisfying all rules and conditions."""
    for _ in range(max_tries):
        env: dict[str, Scalar] = {}
        ok = True
        for rule in rules:
            try:
                if rule.derive is not None:
                    value = parse_scalar(rule.derive, env)
                else:
                    value = _draw_in_rule(rng, rule, env)
            except (ExprError, ZeroDivisionError):
                ok = False
                break
            if not _rule_ok(value, rule, env):
                ok = False
                break
            env[rule.name] = value
        if not ok:
            continue
        try:
            if all(evaluate_condition(cond, env) for cond in conditions):
                return {
                    name: value
                    for name, value in env.items()
                    if not _rule_for(rules, name).aux
                }
        except (ExprError, ZeroDivisionError):
            continue
    raise SamplingError(
        f"no point found in {max_tries} tries for rules "
        f"{[r.name for r in rules]} with conditions {list(conditions)}"
    )


def _rule_for(rules: Sequence[ParamRule], name: str) -> ParamRule:
    for rule in rules:
        if rule.name == name:
            return rule
    raise KeyError(name)


def parse_bindings(raw: Mapping[str, str]) -> dict[str, Scalar]:
    return {name: parse_scalar(text) for name, text in raw.items()}
