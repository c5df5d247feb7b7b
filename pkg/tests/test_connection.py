import random
from fractions import Fraction as Fr

from hnlie.algebra import ABELIAN, BUILTIN, builtin
from hnlie.connection import (
    check_connection,
    fundamental_tensors,
    fundamental_via_metric,
    koszul_connection,
    verify_f_identities,
)
from hnlie.linalg import Tensor
from hnlie.regions import merge_rules, sample_point
from hnlie.scalar import Scalar


def s(*vals):
    return tuple(Scalar(Fr(v)) for v in vals)


def family_instances(count=1, seed=5):
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


def test_g4_1_connection_components(h):
    conn = koszul_connection(builtin("g4_1"), h)
    assert conn.derivative(2, 4) == s(Fr(1, 2), 0, Fr(-1, 2), 0)
    assert conn.derivative(4, 2) == s(Fr(-1, 2), 0, Fr(-1, 2), 0)
    assert conn.derivative(1, 2) == s(0, 0, 0, Fr(1, 2))
    assert conn.derivative(4, 3) == s(0, Fr(-1, 2), 0, 0)


def test_g4_3_connection_components(h):
    conn = koszul_connection(builtin("g4_3"), h)
    assert conn.derivative(1, 1) == s(0, 0, 0, 1)
    assert conn.derivative(1, 4) == s(1, 0, 0, 0)
    assert conn.derivative(2, 3) == s(0, 0, 0, Fr(1, 2))


def test_abelian_connection_and_tensors_vanish(h):
    algebra = ABELIAN.instantiate({})
    conn = koszul_connection(algebra, h)
    assert conn.gamma.is_zero()
    ft = fundamental_tensors(conn, h)
    for alpha in (1, 2, 3):
        assert ft.f(alpha).is_zero()
        assert all(x.is_zero() for x in ft.lee(alpha))


def test_g4_1_fundamental_components(h):
    ft = fundamental_tensors(koszul_connection(builtin("g4_1"), h), h)
    assert ft.f(1)[1, 4, 1] == Scalar(Fr(1, 2))
    assert ft.f(2)[1, 2, 2] == Scalar(1)
    assert ft.f(3)[2, 1, 1] == Scalar(-1)
    assert ft.lee(1) == s(0, 1, 0, 0)
    assert ft.lee(2) == s(0, 0, 1, 0)
    assert ft.lee(3) == s(0, -1, 0, -1)


def test_torsion_and_metricity_for_all_families(h):
    for family, algebra in family_instances():
        conn = koszul_connection(algebra, h)
        report = check_connection(conn, algebra, h)
        assert report.ok, (family, report.violations[:3])


def test_f_identities_for_all_families(h):
    for family, algebra in family_instances():
        ft = fundamental_tensors(koszul_connection(algebra, h), h)
        report = verify_f_identities(ft, h)
        assert report.ok, (family, report.violations[:3])


def test_f_via_metric_route_agrees(h):
    for family, algebra in family_instances():
        conn = koszul_connection(algebra, h)
        ft = fundamental_tensors(conn, h)
        for alpha in (1, 2, 3):
            assert ft.f(alpha) == fundamental_via_metric(conn, h, alpha), (family, alpha)


def test_perturbed_tensor_fails_identities(h):
    ft = fundamental_tensors(koszul_connection(builtin("g4_1"), h), h)
    f2 = ft.f(2)
    flat = list(f2.flat)
    flat[f2._offset((1, 2, 3))] = flat[f2._offset((1, 2, 3))] + Scalar(1)
    from hnlie.connection import FundamentalTensors

    broken = FundamentalTensors(
        F=(ft.F[0], Tensor(f2.shape, flat), ft.F[2]), theta=ft.theta
    )
    assert not verify_f_identities(broken, h).ok


def test_lee_form_is_linear_in_f(h):
    from hnlie.classify import lee_form

    ft = fundamental_tensors(koszul_connection(builtin("g4_4"), h), h)
    f = ft.f(2)
    doubled = f + f
    assert lee_form(doubled, h) == tuple(x + x for x in lee_form(f, h))
