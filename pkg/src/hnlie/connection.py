"""Levi-Civita connection, fundamental tensors and Lee forms.

For a left-invariant metric on a Lie group everything reduces to the
structure constants: the Koszul formula loses its derivative terms and
the connection coefficients come out of

    2 g(nabla_{e_i} e_j, e_k)
        = g([e_i,e_j], e_k) + g([e_k,e_i], e_j) + g([e_k,e_j], e_i).

From the connection we form, per structure J_alpha, the (0,3)-tensor

    F_alpha(x, y, z) = g((nabla_x J_alpha) y, z),
    (nabla_x J) y = nabla_x (J y) - J (nabla_x y)

and its Lee form theta_alpha = g^{ij} F_alpha(e_i, e_j, .).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra import DIM, LieAlgebra, ValidationReport
from .linalg import Matrix, Tensor
from .scalar import Scalar
from .structure import EPS, HNStructure, metric_inverse


@dataclass(frozen=True)
class Connection:
    """gamma[k, i, j]: nabla_{e_i} e_j = sum_k gamma^k_ij e_k."""

    gamma: Tensor

    def derivative(self, i: int, j: int) -> tuple[Scalar, ...]:
        return tuple(self.gamma[k, i, j] for k in range(1, DIM + 1))


@dataclass(frozen=True)
class FundamentalTensors:
    F: tuple[Tensor, Tensor, Tensor]          # (F_alpha)_{ijk}
    theta: tuple[tuple[Scalar, ...], ...]      # (theta_alpha)_i

    def f(self, alpha: int) -> Tensor:
        return self.F[alpha - 1]

    def lee(self, alpha: int) -> tuple[Scalar, ...]:
        return self.theta[alpha - 1]


def koszul_connection(algebra: LieAlgebra, h: HNStructure) -> Connection:
    g = h.g
    ginv = metric_inverse(h)
    c = algebra.c

    def lowered(i: int, j: int, k: int) -> Scalar:
        # g([e_i,e_j], e_k) + g([e_k,e_i], e_j) + g([e_k,e_j], e_i)
        acc = Scalar(0)
        for m in range(1, DIM + 1):
            for cv, gv in (
                (c[m, i, j], g[m - 1, k - 1]),
                (c[m, k, i], g[m - 1, j - 1]),
                (c[m, k, j], g[m - 1, i - 1]),
            ):
                if not (cv.is_zero() or gv.is_zero()):
                    acc = acc + cv * gv
        return acc / 2

    def gamma(k: int, i: int, j: int) -> Scalar:
        acc = Scalar(0)
        for m in range(1, DIM + 1):
            w = ginv[k - 1, m - 1]
            if not w.is_zero():
                acc = acc + w * lowered(i, j, m)
        return acc

    return Connection(gamma=Tensor.build((DIM, DIM, DIM), gamma))


def check_connection(conn: Connection, algebra: LieAlgebra, h: HNStructure) -> ValidationReport:
    """Torsion-freeness against the brackets, and metric compatibility."""
    bad = []
    gm = conn.gamma
    for i, j, k in product(range(1, DIM + 1), repeat=3):
        if gm[k, i, j] - gm[k, j, i] != algebra.c[k, i, j]:
            bad.append(f"torsion mismatch at ({i},{j},{k})")
    g = h.g
    for i, j, k in product(range(1, DIM + 1), repeat=3):
        acc = Scalar(0)
        for m in range(1, DIM + 1):
            acc = acc + gm[m, i, j] * g[m - 1, k - 1] + gm[m, i, k] * g[j - 1, m - 1]
        if not acc.is_zero():
            bad.append(f"metricity fails at ({i},{j},{k})")
    return ValidationReport(tuple(bad))


def fundamental_tensors(conn: Connection, h: HNStructure) -> FundamentalTensors:
    gm = conn.gamma
    g = h.g
    ginv = metric_inverse(h)
    tensors = []
    lee_forms = []
    for alpha in (1, 2, 3):
        J = h.j(alpha)

        def nabla_j(i: int, j: int) -> list[Scalar]:
            # components of (nabla_{e_i} J) e_j
            out = [Scalar(0)] * DIM
            for m in range(1, DIM + 1):
                jm = J[m - 1, j - 1]
                if not jm.is_zero():
                    for k in range(1, DIM + 1):
                        out[k - 1] = out[k - 1] + jm * gm[k, i, m]
                gmij = gm[m, i, j]
                if not gmij.is_zero():
                    for k in range(1, DIM + 1):
                        out[k - 1] = out[k - 1] - gmij * J[k - 1, m - 1]
            return out

        flat = []
        for i in range(1, DIM + 1):
            for j in range(1, DIM + 1):
                vec = nabla_j(i, j)
                for k in range(1, DIM + 1):
                    acc = Scalar(0)
                    for m in range(1, DIM + 1):
                        acc = acc + vec[m - 1] * g[m - 1, k - 1]
                    flat.append(acc)
        f = Tensor((DIM, DIM, DIM), flat)
        theta = tuple(
            sum(
                (ginv[i - 1, j - 1] * f[i, j, k] for i, j in
                 product(range(1, DIM + 1), repeat=2)),
                Scalar(0),
            )
            for k in range(1, DIM + 1)
        )
        tensors.append(f)
        lee_forms.append(theta)
    return FundamentalTensors(F=tuple(tensors), theta=tuple(lee_forms))


def fundamental_via_metric(conn: Connection, h: HNStructure, alpha: int) -> Tensor:
    """Second route: F_alpha(x,y,z) = (nabla_x g_alpha)(y,z), expanded by gamma.

    For left-invariant data the directional derivative term vanishes, so
    (nabla_{e_i} g_alpha)(e_j, e_k)
        = -g_alpha(nabla_{e_i} e_j, e_k) - g_alpha(e_j, nabla_{e_i} e_k).
    Used as an independent cross-check of :func:`fundamental_tensors`.
    """
    ga = h.g_assoc(alpha)
    gm = conn.gamma

    def component(i: int, j: int, k: int) -> Scalar:
        acc = Scalar(0)
        for m in range(1, DIM + 1):
            acc = acc - gm[m, i, j] * ga[m - 1, k - 1]
            acc = acc - gm[m, i, k] * ga[j - 1, m - 1]
        return acc

    return Tensor.build((DIM, DIM, DIM), component)


def _j_image(J: Matrix, j: int) -> list[tuple[int, Scalar]]:
    return [
        (m, J[m - 1, j - 1])
        for m in range(1, DIM + 1)
        if not J[m - 1, j - 1].is_zero()
    ]


def verify_f_identities(ft: FundamentalTensors, h: HNStructure) -> ValidationReport:
    """Exhaustive check of the F-symmetries and the three cross relations."""
    bad = []
    for alpha in (1, 2, 3):
        f = ft.f(alpha)
        J = h.j(alpha)
        e = Scalar(EPS[alpha])
        for i, j, k in product(range(1, DIM + 1), repeat=3):
            if f[i, j, k] != -(e * f[i, k, j]):
                bad.append(f"F{alpha}({i},{j},{k}) != -eps*F{alpha}({i},{k},{j})")
            twisted = Scalar(0)
            for m, jm in _j_image(J, j):
                for n, jn in _j_image(J, k):
                    twisted = twisted + jm * jn * f[i, m, n]
            if f[i, j, k] != -(e * twisted):
                bad.append(f"F{alpha}({i},{j},{k}) != -eps*F{alpha}(., J., J.)")
    f1, f2, f3 = ft.F
    j1, j2, j3 = h.J

    def twist(f: Tensor, J: Matrix, slot: int, i: int, j: int, k: int) -> Scalar:
        idx = [i, j, k]
        acc = Scalar(0)
        for m, jm in _j_image(J, idx[slot]):
            probe = list(idx)
            probe[slot] = m
            acc = acc + jm * f[tuple(probe)]
        return acc

    for i, j, k in product(range(1, DIM + 1), repeat=3):
        if f1[i, j, k] != twist(f2, j3, 1, i, j, k) + twist(f3, j2, 2, i, j, k):
            bad.append(f"relation F1=F2(.,J3.,.)+F3(.,.,J2.) fails at ({i},{j},{k})")
        if f2[i, j, k] != twist(f3, j1, 1, i, j, k) + twist(f1, j3, 2, i, j, k):
            bad.append(f"relation F2=F3(.,J1.,.)+F1(.,.,J3.) fails at ({i},{j},{k})")
        if f3[i, j, k] != twist(f1, j2, 1, i, j, k) - twist(f2, j1, 2, i, j, k):
            bad.append(f"relation F3=F1(.,J2.,.)-F2(.,.,J1.) fails at ({i},{j},{k})")
    return ValidationReport(tuple(bad))
