"""Exact dense linear algebra over Q(sqrt(d)) and small multi-index tensors.

Matrices are immutable tuples of tuples of :class:`~hnlie.scalar.Scalar`.
Elimination uses exact pivoting (first non-zero entry), so ``solve``,
``kernel`` and ``rank`` are exact.  :class:`Tensor` is a dense rank-1..4
array indexed 1-based, matching the basis convention e1..e4.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

from .scalar import ONE, ZERO, Scalar


class InconsistentSystemError(ValueError):
    """solve() was given a system with no solution."""


Row = tuple[Scalar, ...]
Grid = tuple[Row, ...]


class Matrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[Scalar]]):
        grid = tuple(tuple(Scalar.of(x) for x in row) for row in entries)
        if not grid or not grid[0]:
            raise ValueError("matrix must be non-empty")
        cols = len(grid[0])
        if any(len(row) != cols for row in grid):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", grid)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(
            [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def diagonal(values: Sequence[Scalar]) -> "Matrix":
        n = len(values)
        return Matrix(
            [[values[i] if i == j else ZERO for j in range(n)] for i in range(n)]
        )

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(
            " ".join(str(x) for x in row) for row in self.entries
        )
        return f"Matrix[{body}]"

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.entries)))

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(Scalar(-1))

    def scale(self, c: Scalar) -> "Matrix":
        return Matrix([[c * x for x in row] for row in self.entries])

    def __neg__(self) -> "Matrix":
        return self.scale(Scalar(-1))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries))
        return Matrix(
            [
                [_dot(row, col) for col in cols]
                for row in self.entries
            ]
        )

    def apply(self, v: Sequence[Scalar]) -> tuple[Scalar, ...]:
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(_dot(row, v) for row in self.entries)

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(row[j] for row in self.entries)

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.entries for x in row)


def _dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    acc = ZERO
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


def _echelon(grid: list[list[Scalar]]) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form; returns (grid, pivot columns).

    Rational-only grids take a plain-Fraction fast path; grids holding a
    quadratic irrationality run the same elimination on Scalars.
    """
    if all(x.d == 0 for row in grid for x in row):
        frac = [[x.a for x in row] for row in grid]
        frac, pivots = _echelon_generic(frac, lambda v: v == 0, lambda v: 1 / v)
        return [[Scalar(x) for x in row] for row in frac], pivots
    return _echelon_generic(grid, lambda v: v.is_zero(), lambda v: v.inverse())


def _echelon_generic(grid, is_zero, invert):
    rows = len(grid)
    cols = len(grid[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if not is_zero(grid[i][c])), None)
        if pivot is None:
            continue
        grid[r], grid[pivot] = grid[pivot], grid[r]
        inv = invert(grid[r][c])
        grid[r] = [x * inv for x in grid[r]]
        for i in range(rows):
            if i != r and not is_zero(grid[i][c]):
                f = grid[i][c]
                grid[i] = [x - f * y for x, y in zip(grid[i], grid[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return grid, pivots


def rank(m: Matrix) -> int:
    grid = [list(row) for row in m.entries]
    _, pivots = _echelon(grid)
    return len(pivots)


def solve(m: Matrix, b: Sequence[Scalar]) -> tuple[Scalar, ...]:
    """One exact solution of ``m @ x = b`` (free variables set to zero)."""
    if len(b) != m.rows:
        raise ValueError("shape mismatch")
    grid = [list(row) + [Scalar.of(b[i])] for i, row in enumerate(m.entries)]
    grid, pivots = _echelon(grid)
    if m.cols in pivots:
        raise InconsistentSystemError("system has no solution")
    x = [ZERO] * m.cols
    for r, c in enumerate(pivots):
        x[c] = grid[r][-1]
    return tuple(x)


def kernel(m: Matrix) -> list[tuple[Scalar, ...]]:
    """Basis of the null space (possibly empty)."""
    grid = [list(row) for row in m.entries]
    grid, pivots = _echelon(grid)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, c in enumerate(pivots):
            v[c] = -grid[r][f]
        basis.append(tuple(v))
    return basis


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    grid = [list(row) + list(Matrix.identity(n).entries[i]) for i, row in enumerate(m.entries)]
    grid, pivots = _echelon(grid)
    if len(pivots) < n or pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return Matrix([row[n:] for row in grid])


class Tensor:
    """Dense rank-1..4 array of scalars over the 4-dim basis, 1-based."""

    __slots__ = ("shape", "flat")

    def __init__(self, shape: tuple[int, ...], flat: Sequence[Scalar]):
        size = 1
        for s in shape:
            size *= s
        if len(flat) != size:
            raise ValueError("shape/contents mismatch")
        object.__setattr__(self, "shape", tuple(shape))
        object.__setattr__(self, "flat", tuple(Scalar.of(x) for x in flat))

    def __setattr__(self, name, value):
        raise AttributeError("Tensor is immutable")

    @staticmethod
    def zeros(shape: tuple[int, ...]) -> "Tensor":
        size = 1
        for s in shape:
            size *= s
        return Tensor(shape, [ZERO] * size)

    @staticmethod
    def build(shape: tuple[int, ...], fn) -> "Tensor":
        """fn takes 1-based indices and returns a Scalar."""
        flat = [fn(*idx) for idx in product(*(range(1, s + 1) for s in shape))]
        return Tensor(shape, flat)

    def _offset(self, idx: tuple[int, ...]) -> int:
        if len(idx) != len(self.shape):
            raise IndexError("wrong number of indices")
        off = 0
        for i, s in zip(idx, self.shape):
            if not 1 <= i <= s:
                raise IndexError(f"index {i} out of range 1..{s}")
            off = off * s + (i - 1)
        return off

    def __getitem__(self, idx) -> Scalar:
        if isinstance(idx, int):
            idx = (idx,)
        return self.flat[self._offset(idx)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Tensor)
            and self.shape == other.shape
            and self.flat == other.flat
        )

    def __hash__(self):
        return hash((self.shape, self.flat))

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.flat)

    def __add__(self, other: "Tensor") -> "Tensor":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Tensor(self.shape, [a + b for a, b in zip(self.flat, other.flat)])

    def __sub__(self, other: "Tensor") -> "Tensor":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Tensor(self.shape, [a - b for a, b in zip(self.flat, other.flat)])

    def scale(self, c: Scalar) -> "Tensor":
        return Tensor(self.shape, [c * x for x in self.flat])

    def nonzero(self) -> dict[tuple[int, ...], Scalar]:
        out = {}
        for idx in product(*(range(1, s + 1) for s in self.shape)):
            v = self[idx]
            if not v.is_zero():
                out[idx] = v
        return out
