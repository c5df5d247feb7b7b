"""Curvature package: R, Ricci, scalar curvatures and basic sectional data.

Conventions:

    R(x, y) z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_{[x,y]} z
    R(x, y, z, w) = g(R(x, y) z, w)
    rho(y, z) = g^{ij} R(e_i, y, z, e_j)
    rho*_alpha(y, z) = g^{ij} R(e_i, y, z, J_alpha e_j)
    tau = g^{ij} rho(e_i, e_j)
    tau*_alpha = g^{ij} rho*_alpha(e_i, e_j)
    tau**_alpha = g^{ij} rho*_alpha(e_i, J_alpha e_j)
    k_ij = R(e_i, e_j, e_j, e_i) / (g_ii g_jj - g_ij^2)

Basic 2-planes are typed per structure: span{e_i, e_j} is holomorphic
for J_alpha when it is J_alpha-invariant, totally real when it is
g-orthogonal to its image and distinct from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra import DIM, LieAlgebra, ValidationReport
from .connection import Connection
from .linalg import Matrix, Tensor
from .scalar import Scalar
from .structure import HNStructure, metric_inverse

PLANES = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


class CurvatureSymmetryError(RuntimeError):
    """Computed curvature violates its own symmetries (internal fault)."""


class DegeneratePlaneError(ValueError):
    pass


@dataclass(frozen=True)
class CurvatureReport:
    R13: Tensor                  # R13[l, i, j, k]: R(e_i,e_j)e_k = sum_l ... e_l
    R04: Tensor                  # R04[i, j, k, l] = R(e_i,e_j,e_k,e_l)
    rho: Matrix
    rho_star: tuple[Matrix, Matrix, Matrix]
    tau: Scalar
    tau_star: tuple[Scalar, Scalar, Scalar]
    tau_star_star: tuple[Scalar, Scalar, Scalar]
    k: dict[tuple[int, int], Scalar]
    plane_type: dict[tuple[int, tuple[int, int]], str]


def riemann(conn: Connection, algebra: LieAlgebra, h: HNStructure) -> tuple[Tensor, Tensor]:
    gm = conn.gamma
    c = algebra.c
    g = h.g

    def upper(l: int, i: int, j: int, k: int) -> Scalar:
        acc = Scalar(0)
        for m in range(1, DIM + 1):
            a = gm[m, j, k]
            if not a.is_zero():
                acc = acc + a * gm[l, i, m]
            b = gm[m, i, k]
            if not b.is_zero():
                acc = acc - b * gm[l, j, m]
            cm = c[m, i, j]
            if not cm.is_zero():
                acc = acc - cm * gm[l, m, k]
        return acc

    r13 = Tensor.build((DIM, DIM, DIM, DIM), upper)

    def lower(i: int, j: int, k: int, l: int) -> Scalar:
        acc = Scalar(0)
        for m in range(1, DIM + 1):
            v = r13[m, i, j, k]
            if not v.is_zero():
                acc = acc + v * g[m - 1, l - 1]
        return acc

    r04 = Tensor.build((DIM, DIM, DIM, DIM), lower)
    report = check_curvature_symmetries(r04)
    if not report.ok:
        raise CurvatureSymmetryError("; ".join(report.violations[:5]))
    return r13, r04


def check_curvature_symmetries(r04: Tensor) -> ValidationReport:
    bad = []
    for i, j, k, l in product(range(1, DIM + 1), repeat=4):
        if r04[i, j, k, l] != -r04[j, i, k, l]:
            bad.append(f"R({i},{j},{k},{l}) != -R({j},{i},{k},{l})")
        if r04[i, j, k, l] != -r04[i, j, l, k]:
            bad.append(f"R({i},{j},{k},{l}) != -R({i},{j},{l},{k})")
        bianchi = r04[i, j, k, l] + r04[j, k, i, l] + r04[k, i, j, l]
        if not bianchi.is_zero():
            bad.append(f"first Bianchi fails at ({i},{j},{k},{l})")
    return ValidationReport(tuple(bad))


def ricci_and_scalars(
    r04: Tensor, h: HNStructure
) -> tuple[Matrix, tuple[Matrix, ...], Scalar, tuple[Scalar, ...], tuple[Scalar, ...]]:
    ginv = metric_inverse(h)

    def trace_pairs():
        for i, j in product(range(1, DIM + 1), repeat=2):
            w = ginv[i - 1, j - 1]
            if not w.is_zero():
                yield i, j, w

    rho = Matrix(
        [
            [
                sum((w * r04[i, y, z, j] for i, j, w in trace_pairs()), Scalar(0))
                for z in range(1, DIM + 1)
            ]
            for y in range(1, DIM + 1)
        ]
    )
    rho_star = []
    tau_star = []
    tau_star_star = []
    for alpha in (1, 2, 3):
        J = h.j(alpha)

        def rstar(y: int, z: int) -> Scalar:
            acc = Scalar(0)
            for i, j, w in trace_pairs():
                for m in range(1, DIM + 1):
                    jm = J[m - 1, j - 1]
                    if not jm.is_zero():
                        acc = acc + w * jm * r04[i, y, z, m]
            return acc

        rs = Matrix([[rstar(y, z) for z in range(1, DIM + 1)] for y in range(1, DIM + 1)])
        rho_star.append(rs)
        ts = sum((w * rs[i - 1, j - 1] for i, j, w in trace_pairs()), Scalar(0))
        tau_star.append(ts)
        tss = Scalar(0)
        for i, j, w in trace_pairs():
            for m in range(1, DIM + 1):
                jm = J[m - 1, j - 1]
                if not jm.is_zero():
                    tss = tss + w * jm * rs[i - 1, m - 1]
        tau_star_star.append(tss)
    tau = sum(
        (
            ginv[i - 1, j - 1] * rho[i - 1, j - 1]
            for i, j in product(range(1, DIM + 1), repeat=2)
            if not ginv[i - 1, j - 1].is_zero()
        ),
        Scalar(0),
    )
    return rho, tuple(rho_star), tau, tuple(tau_star), tuple(tau_star_star)


def check_ricci_symmetries(
    rho: Matrix, rho_star: tuple[Matrix, ...], h: HNStructure
) -> ValidationReport:
    bad = []
    if rho.transpose() != rho:
        bad.append("rho is not symmetric")
    for alpha in (1, 2, 3):
        rs = rho_star[alpha - 1]
        e = Scalar(h.eps[alpha - 1])
        if rs.transpose() != -rs.scale(e):
            kind = "antisymmetric" if h.eps[alpha - 1] == 1 else "symmetric"
            bad.append(f"rho*_{alpha} is not {kind}")
    return ValidationReport(tuple(bad))


def plane_types(h: HNStructure) -> dict[tuple[int, tuple[int, int]], str]:
    out: dict[tuple[int, tuple[int, int]], str] = {}
    for alpha in (1, 2, 3):
        J = h.j(alpha)
        for (i, j) in PLANES:
            images = [J.column(i - 1), J.column(j - 1)]
            inside = all(
                all(col[m - 1].is_zero() for m in range(1, DIM + 1) if m not in (i, j))
                for col in images
            )
            if inside:
                out[(alpha, (i, j))] = "holomorphic"
                continue
            orthogonal = all(
                sum(
                    (h.g[a - 1, m - 1] * col[m - 1] for m in range(1, DIM + 1)),
                    Scalar(0),
                ).is_zero()
                for a in (i, j)
                for col in images
            )
            out[(alpha, (i, j))] = "totally-real" if orthogonal else "generic"
    return out


def sectional(r04: Tensor, h: HNStructure) -> tuple[dict[tuple[int, int], Scalar], dict]:
    g = h.g
    k_map: dict[tuple[int, int], Scalar] = {}
    for (i, j) in PLANES:
        denom = g[i - 1, i - 1] * g[j - 1, j - 1] - g[i - 1, j - 1] * g[i - 1, j - 1]
        if denom.is_zero():
            raise DegeneratePlaneError(f"basic plane ({i},{j}) is degenerate")
        k_map[(i, j)] = r04[i, j, j, i] / denom
    return k_map, plane_types(h)


def curvature_report(conn: Connection, algebra: LieAlgebra, h: HNStructure) -> CurvatureReport:
    r13, r04 = riemann(conn, algebra, h)
    rho, rho_star, tau, tau_star, tau_star_star = ricci_and_scalars(r04, h)
    sym = check_ricci_symmetries(rho, rho_star, h)
    if not sym.ok:
        raise CurvatureSymmetryError("; ".join(sym.violations))
    k_map, types = sectional(r04, h)
    return CurvatureReport(
        R13=r13,
        R04=r04,
        rho=rho,
        rho_star=tuple(rho_star),
        tau=tau,
        tau_star=tuple(tau_star),
        tau_star_star=tuple(tau_star_star),
        k=k_map,
        plane_type=types,
    )
