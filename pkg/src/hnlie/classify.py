"""Class membership of (L, H, G) with respect to each structure J_alpha.

For the Hermitian structure (alpha = 1) the admissible tensors in
dimension 4 split into two basic classes,

    W2: cyclic_sum F(x, y, z) = 0,
    W4: F generated from a 1-form theta by the half-formula,

and for the Norden structures (alpha = 2, 3) into three,

    W1: F generated from theta by the quarter-formula,
    W2: cyclic_sum F(x, y, J z) = 0 and theta = 0,
    W3: cyclic_sum F(x, y, z) = 0.

Rather than hard-coding projection operators, the decomposition is done
by exact linear algebra: the admissible space is the kernel of the
symmetry constraints on the 64-dimensional raw tensor space, each class
subspace is a kernel or image of the defining condition, the direct-sum
property is verified by exact rank computations, and membership falls
out of one exact linear solve.  A failure of the direct sum would be an
implementation fault and raises :class:`DecompositionFailureError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Mapping, Sequence

from .algebra import DIM, LieAlgebra
from .connection import FundamentalTensors, fundamental_tensors, koszul_connection
from .linalg import Matrix, Tensor, inverse, kernel, rank
from .scalar import Scalar
from .structure import EPS, HNStructure, metric_inverse

TENSOR_SHAPE = (DIM, DIM, DIM)
TENSOR_DIM = DIM ** 3


class NotAdmissibleError(ValueError):
    """Tensor violates the F-symmetries for the requested alpha."""


class DecompositionFailureError(RuntimeError):
    """Class subspaces do not sum directly to the admissible space."""


def _unit_tensor(flat_index: int) -> Tensor:
    flat = [Scalar(0)] * TENSOR_DIM
    flat[flat_index] = Scalar(1)
    return Tensor(TENSOR_SHAPE, flat)


def _operator_matrix(op) -> Matrix:
    """64x64 matrix of a linear map on rank-3 tensors (columns = images)."""
    cols = [op(_unit_tensor(n)).flat for n in range(TENSOR_DIM)]
    return Matrix([[cols[n][m] for n in range(TENSOR_DIM)] for m in range(TENSOR_DIM)])


def _swap_last(f: Tensor) -> Tensor:
    return Tensor.build(TENSOR_SHAPE, lambda i, j, k: f[i, k, j])


def _j_twist_last_two(f: Tensor, J: Matrix) -> Tensor:
    def component(i, j, k):
        acc = Scalar(0)
        for m in range(1, DIM + 1):
            jm = J[m - 1, j - 1]
            if jm.is_zero():
                continue
            for n in range(1, DIM + 1):
                jn = J[n - 1, k - 1]
                if not jn.is_zero():
                    acc = acc + jm * jn * f[i, m, n]
        return acc

    return Tensor.build(TENSOR_SHAPE, component)


def _cyclic_sum(f: Tensor) -> Tensor:
    return Tensor.build(
        TENSOR_SHAPE, lambda i, j, k: f[i, j, k] + f[j, k, i] + f[k, i, j]
    )


def _cyclic_sum_j_last(f: Tensor, J: Matrix) -> Tensor:
    def component(i, j, k):
        acc = Scalar(0)
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for m in range(1, DIM + 1):
                jm = J[m - 1, c - 1]
                if not jm.is_zero():
                    acc = acc + jm * f[a, b, m]
        return acc

    return Tensor.build(TENSOR_SHAPE, component)


def lee_form(f: Tensor, h: HNStructure) -> tuple[Scalar, ...]:
    ginv = metric_inverse(h)
    return tuple(
        sum(
            (
                ginv[i - 1, j - 1] * f[i, j, k]
                for i, j in product(range(1, DIM + 1), repeat=2)
                if not ginv[i - 1, j - 1].is_zero()
            ),
            Scalar(0),
        )
        for k in range(1, DIM + 1)
    )


def _theta_twisted(theta: Sequence[Scalar], J: Matrix, k: int) -> Scalar:
    acc = Scalar(0)
    for m in range(1, DIM + 1):
        jm = J[m - 1, k - 1]
        if not jm.is_zero():
            acc = acc + jm * theta[m - 1]
    return acc


def theta_family_tensor(alpha: int, theta: Sequence[Scalar], h: HNStructure) -> Tensor:
    """The class tensor a 1-form generates: W4 for alpha=1, W1 for alpha=2,3."""
    g = h.g
    J = h.j(alpha)

    def w4(i, j, k):
        value = (
            g[i - 1, j - 1] * theta[k - 1]
            - _theta_like(g, J, i, j) * _theta_twisted(theta, J, k)
            - g[i - 1, k - 1] * theta[j - 1]
            + _theta_like(g, J, i, k) * _theta_twisted(theta, J, j)
        )
        return value / 2

    def w1(i, j, k):
        value = (
            g[i - 1, j - 1] * theta[k - 1]
            + _theta_like(g, J, i, j) * _theta_twisted(theta, J, k)
            + g[i - 1, k - 1] * theta[j - 1]
            + _theta_like(g, J, i, k) * _theta_twisted(theta, J, j)
        )
        return value / 4

    return Tensor.build(TENSOR_SHAPE, w4 if alpha == 1 else w1)


def _theta_like(g: Matrix, J: Matrix, i: int, j: int) -> Scalar:
    # g(e_i, J e_j)
    acc = Scalar(0)
    for m in range(1, DIM + 1):
        jm = J[m - 1, j - 1]
        if not jm.is_zero():
            acc = acc + g[i - 1, m - 1] * jm
    return acc


def symmetry_violations(f: Tensor, alpha: int, h: HNStructure) -> list[str]:
    e = Scalar(EPS[alpha])
    bad = []
    swapped = _swap_last(f)
    twisted = _j_twist_last_two(f, h.j(alpha))
    for n, (a, b, c) in enumerate(
        product(range(1, DIM + 1), repeat=3)
    ):
        if f.flat[n] != -(e * swapped.flat[n]):
            bad.append(f"F({a},{b},{c}) != -eps F({a},{c},{b})")
        if f.flat[n] != -(e * twisted.flat[n]):
            bad.append(f"F({a},{b},{c}) != -eps F(., J., J.)")
    return bad


@dataclass(frozen=True)
class AdmissibleSpace:
    alpha: int
    basis: tuple[Tensor, ...]
    class_subspaces: Mapping[str, tuple[Tensor, ...]]
    adjusted: bool
    solver: Matrix  # left inverse of the stacked class-basis matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def class_names(self) -> tuple[str, ...]:
        return tuple(self.class_subspaces)


def _span_matrix(vectors: Sequence[Tensor]) -> Matrix:
    return Matrix(
        [[v.flat[m] for v in vectors] for m in range(TENSOR_DIM)]
    )


def _independent(vectors: Sequence[Tensor]) -> bool:
    if not vectors:
        return True
    return rank(_span_matrix(vectors)) == len(vectors)


def _intersection_dim(a: Sequence[Tensor], b: Sequence[Tensor]) -> int:
    if not a or not b:
        return 0
    ra = rank(_span_matrix(a))
    rb = rank(_span_matrix(b))
    rab = rank(_span_matrix(list(a) + list(b)))
    return ra + rb - rab


@lru_cache(maxsize=None)
def admissible_space(alpha: int, h: HNStructure) -> AdmissibleSpace:
    """Admissible tensors for J_alpha and their basic-class subspaces."""
    if alpha not in (1, 2, 3):
        raise ValueError("alpha must be 1, 2 or 3")
    e = Scalar(EPS[alpha])
    J = h.j(alpha)

    sym1 = _operator_matrix(lambda f: f + _swap_last(f).scale(e))
    sym2 = _operator_matrix(lambda f: f + _j_twist_last_two(f, J).scale(e))
    constraints = Matrix(list(sym1.entries) + list(sym2.entries))
    basis = tuple(Tensor(TENSOR_SHAPE, v) for v in kernel(constraints))

    cyc = _operator_matrix(_cyclic_sum)
    unit_covectors = [
        tuple(Scalar(1 if m == n else 0) for m in range(1, DIM + 1))
        for n in range(1, DIM + 1)
    ]
    theta_tensors = tuple(
        theta_family_tensor(alpha, theta, h) for theta in unit_covectors
    )
    for t in theta_tensors:
        if symmetry_violations(t, alpha, h):
            raise DecompositionFailureError(
                f"theta-family tensor for alpha={alpha} is not admissible"
            )
    if not _independent(theta_tensors):
        raise DecompositionFailureError(
            f"theta-family map for alpha={alpha} is not injective"
        )

    adjusted = False
    if alpha == 1:
        w2 = tuple(
            Tensor(TENSOR_SHAPE, v)
            for v in kernel(Matrix(list(constraints.entries) + list(cyc.entries)))
        )
        subspaces = {"W2": w2, "W4": theta_tensors}
    else:
        cyc_j = _operator_matrix(lambda f: _cyclic_sum_j_last(f, J))
        ginv = metric_inverse(h)
        theta_rows = []
        for k in range(1, DIM + 1):
            row = [Scalar(0)] * TENSOR_DIM
            for i, j in product(range(1, DIM + 1), repeat=2):
                w = ginv[i - 1, j - 1]
                if not w.is_zero():
                    row[((i - 1) * DIM + (j - 1)) * DIM + (k - 1)] = w
            theta_rows.append(row)
        w2 = tuple(
            Tensor(TENSOR_SHAPE, v)
            for v in kernel(
                Matrix(
                    list(constraints.entries)
                    + list(cyc_j.entries)
                    + theta_rows
                )
            )
        )
        w3 = tuple(
            Tensor(TENSOR_SHAPE, v)
            for v in kernel(Matrix(list(constraints.entries) + list(cyc.entries)))
        )
        if _intersection_dim(theta_tensors, w3) > 0:
            # The defining conditions overlap; carve the W1-part out of
            # the sigma-kernel by exact rank arithmetic.
            w3 = _complement_within(w3, theta_tensors)
            adjusted = True
        subspaces = {"W1": theta_tensors, "W2": w2, "W3": w3}

    total = [t for sub in subspaces.values() for t in sub]
    if (
        sum(len(sub) for sub in subspaces.values()) != len(basis)
        or rank(_span_matrix(total)) != len(basis)
    ):
        raise DecompositionFailureError(
            f"class subspaces for alpha={alpha} do not sum directly "
            f"to the admissible space"
        )
    names = list(subspaces)
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            if _intersection_dim(subspaces[names[a]], subspaces[names[b]]) > 0:
                raise DecompositionFailureError(
                    f"subspaces {names[a]} and {names[b]} overlap for alpha={alpha}"
                )
    m = _span_matrix(total)
    mt = m.transpose()
    solver = inverse(mt @ m) @ mt
    return AdmissibleSpace(
        alpha=alpha, basis=basis, class_subspaces=subspaces, adjusted=adjusted,
        solver=solver,
    )


def _complement_within(space: Sequence[Tensor], carved: Sequence[Tensor]) -> tuple[Tensor, ...]:
    picked: list[Tensor] = []
    current = list(carved)
    base_rank = rank(_span_matrix(current)) if current else 0
    for v in space:
        if rank(_span_matrix(current + [v])) > base_rank:
            picked.append(v)
            current.append(v)
            base_rank += 1
    return tuple(picked)


@dataclass(frozen=True)
class ClassLabel:
    alpha: int
    nonzero_components: frozenset[str]
    label: str

    def __str__(self) -> str:
        return self.label


def _join_label(components: frozenset[str]) -> str:
    if not components:
        return "W0"
    digits = sorted(name[1:] for name in components)
    return "W" + "".join(digits)


def decompose(f: Tensor, space: AdmissibleSpace, h: HNStructure) -> dict[str, Tensor]:
    """Split an admissible tensor into its unique class components."""
    bad = symmetry_violations(f, space.alpha, h)
    if bad:
        raise NotAdmissibleError(
            f"tensor is not admissible for alpha={space.alpha}: {bad[0]}"
        )
    columns: list[Tensor] = []
    slots: list[tuple[str, int]] = []
    for name, sub in space.class_subspaces.items():
        for t in sub:
            slots.append((name, len(columns)))
            columns.append(t)
    coeffs = space.solver.apply(f.flat)
    parts: dict[str, Tensor] = {
        name: Tensor.zeros(TENSOR_SHAPE) for name in space.class_subspaces
    }
    for (name, idx), t in zip(slots, columns):
        if not coeffs[idx].is_zero():
            parts[name] = parts[name] + t.scale(coeffs[idx])
    total = Tensor.zeros(TENSOR_SHAPE)
    for part in parts.values():
        total = total + part
    if total != f:
        raise DecompositionFailureError("class components do not sum back to F")
    return parts


def label_from_parts(alpha: int, parts: Mapping[str, Tensor]) -> ClassLabel:
    nonzero = frozenset(name for name, t in parts.items() if not t.is_zero())
    return ClassLabel(alpha=alpha, nonzero_components=nonzero, label=_join_label(nonzero))


def classify_tensors(ft: FundamentalTensors, h: HNStructure) -> tuple[ClassLabel, ClassLabel, ClassLabel]:
    labels = []
    for alpha in (1, 2, 3):
        space = admissible_space(alpha, h)
        parts = decompose(ft.f(alpha), space, h)
        labels.append(label_from_parts(alpha, parts))
    return tuple(labels)


def classify(algebra: LieAlgebra, h: HNStructure) -> tuple[ClassLabel, ClassLabel, ClassLabel]:
    """Full pipeline: connection, fundamental tensors, class decomposition."""
    conn = koszul_connection(algebra, h)
    ft = fundamental_tensors(conn, h)
    return classify_tensors(ft, h)


LABEL_SETS = {
    "W0": frozenset(),
    "W1": frozenset({"W1"}),
    "W2": frozenset({"W2"}),
    "W3": frozenset({"W3"}),
    "W4": frozenset({"W4"}),
    "W12": frozenset({"W1", "W2"}),
    "W13": frozenset({"W1", "W3"}),
    "W23": frozenset({"W2", "W3"}),
    "W24": frozenset({"W2", "W4"}),
    "W123": frozenset({"W1", "W2", "W3"}),
}


def label_contained(label: ClassLabel, class_name: str) -> bool:
    """Whether the manifold belongs to the class named by ``class_name``."""
    return label.nonzero_components <= LABEL_SETS[class_name]
