import random
from fractions import Fraction as Fr
from itertools import product

import pytest

from hnlie.algebra import ABELIAN, BUILTIN, builtin
from hnlie.connection import koszul_connection
from hnlie.curvature import (
    PLANES,
    check_curvature_symmetries,
    check_ricci_symmetries,
    curvature_report,
    plane_types,
    riemann,
    ricci_and_scalars,
    sectional,
)
from hnlie.exprparse import parse_scalar
from hnlie.regions import merge_rules, sample_point
from hnlie.scalar import Scalar


def s(v):
    return Scalar(Fr(v))


def sel(text):
    return parse_scalar(text)


def report_for(h, family, **params):
    algebra = builtin(family, {k: parse_scalar(str(v)) if isinstance(v, str) else s(v) for k, v in params.items()})
    return curvature_report(koszul_connection(algebra, h), algebra, h)


def family_instances(count=1, seed=9):
    rng = random.Random(seed)
    out = []
    for family, spec in BUILTIN.items():
        if spec.params:
            rules = merge_rules(family, ())
            for _ in range(count):
                out.append((family, spec.instantiate(sample_point(rng, rules))))
        else:
            out.append((family, spec.instantiate({})))
    return out


def test_g4_1_riemann_components(h):
    rep = report_for(h, "g4_1")
    assert rep.R04[1, 2, 1, 2] == sel("1/4")
    assert rep.R04[2, 4, 2, 4] == s(1)
    assert rep.R04[3, 4, 3, 4] == sel("3/4")


def test_abelian_curvature_vanishes(h):
    algebra = ABELIAN.instantiate({})
    rep = curvature_report(koszul_connection(algebra, h), algebra, h)
    assert rep.R04.is_zero()
    assert rep.rho.is_zero()
    assert rep.tau.is_zero()
    assert all(v.is_zero() for v in rep.k.values())


def test_g4_12_riemann_and_scalars(h):
    rep = report_for(h, "g4_12")
    assert rep.R04[1, 2, 1, 2] == s(-1)
    assert rep.R04[1, 3, 1, 3] == s(1)
    assert rep.tau == s(6)
    assert [str(t) for t in rep.tau_star_star] == ["2", "2", "2"]
    assert rep.k[(1, 2)] == s(1) and rep.k[(1, 4)].is_zero()


def test_g4_1_ricci_and_scalars(h):
    rep = report_for(h, "g4_1")
    assert rep.rho[0, 0] == sel("-1/2")
    assert rep.rho[1, 1] == s(1)
    assert rep.tau.is_zero()
    assert [str(t) for t in rep.tau_star_star] == ["-2", "2", "0"]
    assert rep.k[(1, 2)] == sel("-1/4")
    assert rep.k[(2, 4)] == s(1)
    assert rep.k[(3, 4)] == sel("-3/4")


def test_plane_types(h):
    types = plane_types(h)
    assert types[(1, (1, 2))] == "holomorphic"
    assert types[(1, (3, 4))] == "holomorphic"
    assert types[(3, (1, 4))] == "holomorphic"
    assert types[(2, (1, 3))] == "holomorphic"
    for alpha in (1, 2, 3):
        kinds = [types[(alpha, plane)] for plane in PLANES]
        assert kinds.count("holomorphic") == 2
        assert kinds.count("totally-real") == 4


def test_curvature_symmetries_and_bianchi_all_families(h):
    for family, algebra in family_instances():
        conn = koszul_connection(algebra, h)
        r13, r04 = riemann(conn, algebra, h)
        assert check_curvature_symmetries(r04).ok, family
        rho, rho_star, tau, tau_star, tau_ss = ricci_and_scalars(r04, h)
        assert check_ricci_symmetries(rho, rho_star, h).ok, family
        # tau via double contraction agrees with the trace of traces
        direct = Scalar(0)
        for i, j in product(range(1, 5), repeat=2):
            gii = h.g[i - 1, i - 1]
            gjj = h.g[j - 1, j - 1]
            direct = direct + gii * gjj * r04[i, j, j, i]
        assert direct == tau, family
        # star-scalar flatness w.r.t. J1 and J2 holds identically
        assert tau_star[0].is_zero() and tau_star[1].is_zero(), family
        # non-flatness
        assert not r04.is_zero(), family


def test_sectional_equals_planewise_ratio(h):
    rep = report_for(h, "g4_7")
    for (i, j) in PLANES:
        denom = h.g[i - 1, i - 1] * h.g[j - 1, j - 1]
        assert rep.k[(i, j)] == rep.R04[i, j, j, i] / denom


def test_theorem_checks_examples(h):
    from hnlie.verify import theorem_checks

    checks = theorem_checks("g4_6", {"b1": sel("-1/3"), "b2": sel("2/3")})
    tau_zero = [c for c in checks if c["claim"] == "tau == 0"]
    assert tau_zero and all(c["agree"] for c in tau_zero)

    checks = theorem_checks("g4_11", {"q": sel("sqrt(33)/22")})
    assert any(c["claim"] == "tau == 0" and c["agree"] for c in checks)

    checks = theorem_checks("g4_9", {"p": sel("(-4+sqrt(13))/2")})
    assert any(c["claim"] == "tau**_3 == 0" and c["agree"] for c in checks)

    checks = theorem_checks("g4_2", {"m": s(-2)})
    assert any(c["claim"] == "tau*_3 == 0" and c["agree"] for c in checks)
    assert any(c["claim"] == "tau*_1 == 0 and tau*_2 == 0" and c["agree"] for c in checks)


def test_tau_polynomials_match_engine(h):
    # frozen interpolations backing the disputed-claim notes
    for q in (Fr(1, 3), Fr(7, 5)):
        rep = report_for(h, "g4_11", q=q)
        assert rep.tau == Scalar(22 * q * q - Fr(3, 2))
        assert rep.tau_star_star[0] == Scalar(6 * q * q + 2 * q - Fr(5, 2))
        assert rep.tau_star_star[1] == Scalar(6 * q * q + 6 * q - Fr(5, 2))
    for p in (Fr(-1, 4), Fr(3, 4)):
        rep = report_for(h, "g4_9", p=p)
        assert rep.tau_star_star[2] == Scalar(2 * p * p + 8 * p + Fr(3, 2))
