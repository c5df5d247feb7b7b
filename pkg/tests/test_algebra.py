import random
from fractions import Fraction as Fr

import pytest

from hnlie.algebra import (
    ABELIAN,
    AlgebraFileError,
    BUILTIN,
    DomainViolationError,
    UnboundParameterError,
    builtin,
    check_jacobi,
    load_algebra,
    parse_algebra,
    serialize_algebra,
)
from hnlie.regions import DEFAULT_RULES, merge_rules, sample_point
from hnlie.scalar import Scalar

E = [
    tuple(Scalar(1 if i == j else 0) for i in range(1, 5)) for j in range(1, 5)
]


def sampled_bindings(family, count=2, seed=11):
    rng = random.Random(seed)
    rules = merge_rules(family, ())
    return [sample_point(rng, rules) for _ in range(count)] if rules else [{}]


def test_g4_1_structure_constants():
    L = builtin("g4_1")
    assert L.c[1, 2, 4] == Scalar(1)
    assert L.c[2, 3, 4] == Scalar(1)
    assert L.c[1, 4, 2] == Scalar(-1)
    nonzero = L.c.nonzero()
    assert set(nonzero) == {(1, 2, 4), (2, 3, 4), (1, 4, 2), (2, 4, 3)}


def test_g4_12_structure_constants():
    L = builtin("g4_12")
    assert L.c[1, 1, 3] == Scalar(1)
    assert L.c[2, 1, 4] == Scalar(-1)
    assert L.c[2, 2, 3] == Scalar(1)
    assert L.c[1, 2, 4] == Scalar(1)


def test_bracket_tables_match_family_definitions():
    expected = {
        "g4_2": {(1, 4): {1: "m"}, (2, 4): {2: "1"}, (3, 4): {2: "1", 3: "1"}},
        "g4_7": {(1, 4): {1: "2"}, (2, 3): {1: "1"}, (2, 4): {2: "1"}, (3, 4): {2: "1", 3: "1"}},
        "g4_9": {(1, 4): {1: "p+1"}, (2, 3): {1: "1"}, (2, 4): {2: "1"}, (3, 4): {3: "p"}},
        "g4_11": {(1, 4): {1: "2*q"}, (2, 3): {1: "1"}, (2, 4): {2: "q", 3: "-1"}, (3, 4): {2: "1", 3: "q"}},
    }
    bindings = {"m": Scalar(7), "p": Scalar(Fr(1, 3)), "q": Scalar(5)}
    from hnlie.exprparse import parse_scalar

    for family, table in expected.items():
        spec = BUILTIN[family]
        env = {name: bindings[name] for name in spec.params}
        L = spec.instantiate(env)
        for (i, j), comps in table.items():
            vec = L.bracket_basis(i, j)
            for k in range(1, 5):
                want = parse_scalar(comps.get(k, "0"), env)
                assert vec[k - 1] == want, (family, i, j, k)


def test_bracket_bilinear_example():
    L = builtin("g4_5", {"a1": Scalar(2), "a2": Scalar(3)})
    x = tuple(a + b for a, b in zip(E[1], E[2]))  # e2 + e3
    out = L.bracket(x, E[3])
    assert out == (Scalar(0), Scalar(2), Scalar(3), Scalar(0))


def test_bracket_antisymmetry_on_random_vectors():
    rng = random.Random(3)
    L = builtin("g4_7")
    for _ in range(5):
        x = tuple(Scalar(Fr(rng.randint(-4, 4), rng.randint(1, 3))) for _ in range(4))
        y = tuple(Scalar(Fr(rng.randint(-4, 4), rng.randint(1, 3))) for _ in range(4))
        xy = L.bracket(x, y)
        yx = L.bracket(y, x)
        assert all((a + b).is_zero() for a, b in zip(xy, yx))
        assert all(v.is_zero() for v in L.bracket(x, x))


@pytest.mark.parametrize("family", list(BUILTIN))
def test_jacobi_holds_for_all_families(family):
    for bindings in sampled_bindings(family):
        assert check_jacobi(BUILTIN[family].instantiate(bindings)).ok


def test_jacobi_reports_violations():
    text = """
name = "broken"
bracket [e1,e2] = e3
bracket [e1,e3] = e1
"""
    algebra = load_algebra(text)
    report = check_jacobi(algebra)
    assert not report.ok
    assert any("(e1, e2, e3)" in v for v in report.violations)


def test_abelian_passes_jacobi():
    assert check_jacobi(ABELIAN.instantiate({})).ok


def test_domain_violations():
    with pytest.raises(DomainViolationError):
        builtin("g4_2", {"m": Scalar(0)})
    with pytest.raises(DomainViolationError):
        builtin("g4_5", {"a1": Scalar(0), "a2": Scalar(1)})
    with pytest.raises(DomainViolationError):
        builtin("g4_11", {"q": Scalar(-1)})
    with pytest.raises(DomainViolationError):
        builtin("g4_9", {"p": Scalar(2)})
    with pytest.raises(UnboundParameterError):
        builtin("g4_2", {})
    with pytest.raises(UnboundParameterError):
        builtin("g4_1", {"m": Scalar(1)})
    # q > 0 accepts an exact irrational binding
    assert check_jacobi(builtin("g4_11", {"q": Scalar(0, Fr(1, 6), 3)})).ok


def test_parse_algebra_round_trip():
    text = """# comment
name = "g4.5"
param a1 = 1/2
param a2 = -1/3
bracket [e1,e4] = e1
bracket [e2,e4] = a1*e2
bracket [e3,e4] = a2*e3
"""
    spec = parse_algebra(text)
    assert spec.name == "g4.5"
    assert spec.params == ("a1", "a2")
    again = parse_algebra(serialize_algebra(spec))
    assert again.name == spec.name
    assert again.brackets == spec.brackets
    assert again.default_bindings == spec.default_bindings


def test_parse_algebra_normalizes_flipped_brackets():
    spec = parse_algebra('name = "x"\nbracket [e4,e2] = e1\n')
    L = spec.instantiate({})
    assert L.c[1, 2, 4] == Scalar(-1)


def test_parse_algebra_errors():
    with pytest.raises(AlgebraFileError) as err:
        parse_algebra("bracket [e1,e5] = e1")
    assert err.value.line == 1
    with pytest.raises(AlgebraFileError):
        parse_algebra("bracket [e1,e2] = e1\nbracket [e1,e2] = e2")
    with pytest.raises(AlgebraFileError):
        parse_algebra("bracket [e1,e1] = e2")
    with pytest.raises(AlgebraFileError):
        parse_algebra("bracket [e1,e2] = a9*e1")
    with pytest.raises(AlgebraFileError):
        parse_algebra("nonsense line")
    with pytest.raises(AlgebraFileError):
        parse_algebra('param a = 1\nparam a = 2')


def test_empty_bracket_list_is_abelian():
    spec = parse_algebra('name = "abelian"')
    assert spec.brackets == ()
    assert spec.instantiate({}).c.is_zero()


def test_alt_names_populated():
    L = builtin("g4_9", {"p": Scalar(1)})
    assert L.source.alt_names["patera"] == "A_{4,9}^b"
    assert L.source.alt_names["mubarakzyanov"] == "g_{4,8}"


def test_default_rules_cover_every_family():
    assert set(DEFAULT_RULES) == set(BUILTIN)
