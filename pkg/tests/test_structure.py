from fractions import Fraction as Fr

import pytest

from hnlie.linalg import Matrix
from hnlie.scalar import Scalar
from hnlie.structure import (
    HNStructure,
    SingularMetricError,
    check_structure,
    metric_inverse,
    standard_structure,
)


def col(m, j):
    return tuple(m.column(j - 1))


def s(*vals):
    return tuple(Scalar(v) for v in vals)


def test_standard_j_actions(h):
    j1, j2, j3 = h.J
    assert col(j1, 1) == s(0, 1, 0, 0)      # J1 e1 = e2
    assert col(j1, 3) == s(0, 0, 0, -1)     # J1 e3 = -e4
    assert col(j2, 1) == s(0, 0, 1, 0)      # J2 e1 = e3
    assert col(j3, 1) == s(0, 0, 0, -1)     # J3 e1 = -e4
    assert col(j3, 4) == s(1, 0, 0, 0)      # J3 e4 = e1


def test_metric_and_associated(h):
    assert h.g == Matrix.diagonal(s(1, 1, -1, -1))
    g2 = h.g_assoc(2)
    assert g2[0, 2] == Scalar(-1)  # g2(e1, e3) = g(J2 e1, e3) = -1
    g1 = h.g_assoc(1)
    assert g1.transpose() == -g1
    assert h.g_assoc(3).transpose() == h.g_assoc(3)


def test_standard_structure_passes_checks(h):
    assert check_structure(h).ok


def test_flipped_j2_breaks_quaternion_relations(h):
    bad = HNStructure(J=(h.J[0], -h.J[1], h.J[2]), g=h.g)
    report = check_structure(bad)
    assert not report.ok
    assert any("J1 != J2 J3" in v for v in report.violations)
    # J2^2 = -I still holds for the flipped structure
    assert not any("J2^2" in v for v in report.violations)


def test_identity_metric_violates_compatibility(h):
    bad = HNStructure(J=h.J, g=Matrix.identity(4))
    report = check_structure(bad)
    assert any("eps_2" in v for v in report.violations)


def test_metric_inverse(h):
    assert metric_inverse(h) == h.g
    scaled = HNStructure(J=h.J, g=Matrix.diagonal(s(2, 1, -1, -1)))
    assert metric_inverse(scaled) == Matrix.diagonal(s(Fr(1, 2), 1, -1, -1))
    degenerate = HNStructure(J=h.J, g=Matrix.diagonal(s(1, 1, -1, 0)))
    with pytest.raises(SingularMetricError):
        metric_inverse(degenerate)
