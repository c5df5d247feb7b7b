"""The standard hypercomplex triple (J1, J2, J3) with Hermitian-Norden metric.

The three almost complex structures act on the fixed basis e1..e4 by

    J1: e1 -> e2,  e2 -> -e1, e3 -> -e4, e4 -> e3
    J2: e1 -> e3,  e2 -> e4,  e3 -> -e1, e4 -> -e2
    J3: e1 -> -e4, e2 -> e3,  e3 -> -e2, e4 -> e1

and the neutral metric is g = diag(1, 1, -1, -1).  J1 is a g-isometry
(eps_1 = +1) while J2, J3 are anti-isometries (eps_2 = eps_3 = -1); the
associated tensors g_alpha(x, y) = g(J_alpha x, y) give a 2-form (alpha=1)
and two further neutral metrics (alpha=2,3).
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import ValidationReport
from .linalg import Matrix, inverse
from .scalar import Scalar

EPS = {1: 1, 2: -1, 3: -1}


class SingularMetricError(ValueError):
    pass


@dataclass(frozen=True)
class HNStructure:
    J: tuple[Matrix, Matrix, Matrix]
    g: Matrix
    eps: tuple[int, int, int] = (1, -1, -1)

    def j(self, alpha: int) -> Matrix:
        return self.J[alpha - 1]

    def g_assoc(self, alpha: int) -> Matrix:
        """g_alpha = J_alpha^T g (the matrix of g(J_alpha . , .))."""
        return self.j(alpha).transpose() @ self.g


def _columns(*cols) -> Matrix:
    return Matrix([[Scalar(c[i]) for c in cols] for i in range(4)])


def standard_structure() -> HNStructure:
    j1 = _columns((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, -1), (0, 0, 1, 0))
    j2 = _columns((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0))
    j3 = _columns((0, 0, 0, -1), (0, 0, 1, 0), (0, -1, 0, 0), (1, 0, 0, 0))
    g = Matrix.diagonal([Scalar(1), Scalar(1), Scalar(-1), Scalar(-1)])
    return HNStructure(J=(j1, j2, j3), g=g)


def metric_inverse(h: HNStructure) -> Matrix:
    try:
        return inverse(h.g)
    except ValueError as exc:
        raise SingularMetricError("metric is singular") from exc


def check_structure(h: HNStructure) -> ValidationReport:
    """Verify the quaternionic identities and the metric compatibilities."""
    bad: list[str] = []
    minus_id = -Matrix.identity(4)
    for alpha in (1, 2, 3):
        if h.j(alpha) @ h.j(alpha) != minus_id:
            bad.append(f"J{alpha}^2 != -I")
    for alpha, beta, gamma in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        if h.j(beta) @ h.j(gamma) != h.j(alpha):
            bad.append(f"J{alpha} != J{beta} J{gamma}")
        if h.j(gamma) @ h.j(beta) != -h.j(alpha):
            bad.append(f"J{alpha} != -J{gamma} J{beta}")
    if h.g.transpose() != h.g:
        bad.append("metric is not symmetric")
    for alpha in (1, 2, 3):
        e = Scalar(h.eps[alpha - 1])
        twisted = (h.j(alpha).transpose() @ h.g @ h.j(alpha)).scale(e)
        if twisted != h.g:
            bad.append(f"g(J{alpha} x, J{alpha} y) != eps_{alpha} g(x, y)")
        ga = h.g_assoc(alpha)
        if alpha == 1:
            if ga.transpose() != -ga:
                bad.append("g_1 is not a 2-form")
        elif ga.transpose() != ga:
            bad.append(f"g_{alpha} is not symmetric")
    return ValidationReport(tuple(bad))
