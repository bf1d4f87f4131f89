"""Hermitian matrix quadruples and their symbolic characteristic polynomials.

A candidate set holds three ``alpha`` matrices and one ``beta`` matrix with
exact Gaussian-rational entries; Hermiticity is enforced at construction so
every downstream check may assume it.  ``build_hamiltonian`` assembles the
momentum-space matrix ``h(p) = alpha1*p1 + alpha2*p2 + alpha3*p3 + beta*m``
over :class:`~diracver.algebra.MultiPoly` entries, and ``char_poly`` computes
``det(E*I - h)`` by the Faddeev-LeVerrier recurrence, which stays exact over
rationals (the only divisions are by the integers 2..n) and produces every
coefficient in one pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .algebra import (
    ComplexRational,
    EPoly,
    MultiPoly,
    Scalar,
    as_scalar,
    MASS,
    P1,
    P2,
    P3,
)

__all__ = [
    "Matrix",
    "MatrixSet",
    "PolyMatrix",
    "CharPoly",
    "HermiticityError",
    "UnsupportedDimensionError",
    "as_matrix",
    "mat_identity",
    "mat_zero",
    "mat_add",
    "mat_sub",
    "mat_scale",
    "mat_mul",
    "mat_dagger",
    "mat_trace",
    "mat_det",
    "mat_is_zero",
    "hermiticity_defect",
    "build_hamiltonian",
    "char_poly",
    "poly_matrix_of_scalars",
    "trace_and_det",
]

# Square matrix of exact scalars, stored as a tuple of row tuples.
Matrix = tuple[tuple[ComplexRational, ...], ...]


class HermiticityError(ValueError):
    """A matrix violates entry(i,j) == conj(entry(j,i))."""

    def __init__(self, matrix_name: str, index: tuple[int, int]):
        self.matrix_name = matrix_name
        self.index = index
        i, j = index
        super().__init__(f"{matrix_name} is not Hermitian at entries ({i},{j})/({j},{i})")


class UnsupportedDimensionError(ValueError):
    """Dimension outside the supported range."""


def as_matrix(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    """Coerce nested int/Fraction/ComplexRational rows into a square Matrix."""
    out = tuple(tuple(as_scalar(v) for v in row) for row in rows)
    n = len(out)
    if n == 0 or any(len(row) != n for row in out):
        raise ValueError("matrix must be square and nonempty")
    return out


def mat_identity(n: int) -> Matrix:
    one = ComplexRational(1)
    zero = ComplexRational(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_zero(n: int) -> Matrix:
    zero = ComplexRational(0)
    return tuple((zero,) * n for _ in range(n))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, factor: Scalar) -> Matrix:
    c = as_scalar(factor)
    return tuple(tuple(x * c for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    cols = list(zip(*b))
    return tuple(
        tuple(sum((a[i][k] * cols[j][k] for k in range(n)), ComplexRational(0)) for j in range(n))
        for i in range(n)
    )


def mat_dagger(a: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(a[j][i].conj() for j in range(n)) for i in range(n))


def mat_trace(a: Matrix) -> ComplexRational:
    return sum((a[i][i] for i in range(len(a))), ComplexRational(0))


def mat_det(a: Matrix) -> ComplexRational:
    """Exact determinant by cofactor expansion along the first row."""
    n = len(a)
    if n == 1:
        return a[0][0]
    total = ComplexRational(0)
    sign = ComplexRational(1)
    for j in range(n):
        if a[0][j]:
            minor = tuple(tuple(row[k] for k in range(n) if k != j) for row in a[1:])
            total = total + sign * a[0][j] * mat_det(minor)
        sign = -sign
    return total


def mat_is_zero(a: Matrix) -> bool:
    return all(x.is_zero for row in a for x in row)


def hermiticity_defect(a: Matrix) -> tuple[int, int] | None:
    """First index pair (row-major, 0-based) violating Hermiticity, or None."""
    n = len(a)
    for i in range(n):
        for j in range(i, n):
            if a[i][j] != a[j][i].conj():
                return (i, j)
    return None


@dataclass(frozen=True)
class MatrixSet:
    """A candidate (alpha1, alpha2, alpha3, beta) quadruple of Hermitian matrices."""

    n: int
    alphas: tuple[Matrix, Matrix, Matrix]
    beta: Matrix
    label: str = ""

    def __post_init__(self) -> None:
        if self.n not in (2, 3, 4):
            raise UnsupportedDimensionError(f"dimension {self.n} not supported (need 2, 3, or 4)")
        if len(self.alphas) != 3:
            raise ValueError(f"need exactly 3 alpha matrices, got {len(self.alphas)}")
        for name, matrix in self.matrices():
            if len(matrix) != self.n or any(len(row) != self.n for row in matrix):
                raise ValueError(f"{name} is not {self.n}x{self.n}")
            bad = hermiticity_defect(matrix)
            if bad is not None:
                raise HermiticityError(name, bad)

    def matrices(self) -> Iterator[tuple[str, Matrix]]:
        for k, alpha in enumerate(self.alphas, start=1):
            yield f"alpha{k}", alpha
        yield "beta", self.beta


@dataclass(frozen=True)
class PolyMatrix:
    """Square matrix with MultiPoly entries."""

    n: int
    entries: tuple[tuple[MultiPoly, ...], ...]

    def entry(self, i: int, j: int) -> MultiPoly:
        return self.entries[i][j]

    def is_hermitian(self) -> bool:
        return all(
            self.entries[i][j] == self.entries[j][i].conj()
            for i in range(self.n)
            for j in range(i, self.n)
        )


@dataclass(frozen=True)
class CharPoly:
    """Monic characteristic polynomial det(E*I - M) with coefficient access."""

    n: int
    poly: EPoly

    def __post_init__(self) -> None:
        if self.poly.degree != self.n or self.poly.coeff(self.n) != MultiPoly.constant(1):
            raise ValueError("characteristic polynomial must be monic of degree n")

    def c(self, k: int) -> MultiPoly:
        """Coefficient of E^k, 0 <= k <= n."""
        if not 0 <= k <= self.n:
            raise ValueError(f"coefficient index {k} outside 0..{self.n}")
        return self.poly.coeff(k)


def build_hamiltonian(mset: MatrixSet) -> PolyMatrix:
    """Assemble h(p) = sum_k alpha_k p_k + beta m as a polynomial matrix."""
    momenta = (P1, P2, P3)
    n = mset.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = MultiPoly.zero()
            for alpha, p in zip(mset.alphas, momenta):
                if alpha[i][j]:
                    entry = entry + p * alpha[i][j]
            if mset.beta[i][j]:
                entry = entry + MASS * mset.beta[i][j]
            row.append(entry)
        rows.append(tuple(row))
    return PolyMatrix(n, tuple(rows))


def poly_matrix_of_scalars(matrix: Matrix) -> PolyMatrix:
    """Wrap a scalar matrix as a PolyMatrix of constant polynomials."""
    return PolyMatrix(
        len(matrix),
        tuple(tuple(MultiPoly.constant(v) for v in row) for row in matrix),
    )


def _pm_mul(a: Sequence[Sequence[MultiPoly]], b: Sequence[Sequence[MultiPoly]], n: int):
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = MultiPoly.zero()
            for k in range(n):
                if not a[i][k].is_zero and not b[k][j].is_zero:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def char_poly(M: PolyMatrix) -> CharPoly:
    """Characteristic polynomial of M by the Faddeev-LeVerrier recurrence.

    Returns the monic EPoly det(E*I - M); by construction the coefficient of
    E^(n-1) is -trace(M) and the constant term is (-1)^n det(M).
    """
    n = M.n
    if not 1 <= n <= 4:
        raise UnsupportedDimensionError(f"char_poly supports 1 <= n <= 4, got {n}")
    A = M.entries
    coeffs: list[MultiPoly] = [MultiPoly.zero()] * (n + 1)
    coeffs[n] = MultiPoly.constant(1)

    def trace(mat) -> MultiPoly:
        acc = MultiPoly.zero()
        for i in range(n):
            acc = acc + mat[i][i]
        return acc

    Mk = [list(row) for row in A]
    coeffs[n - 1] = -trace(Mk)
    for k in range(2, n + 1):
        # M_k = A (M_{k-1} + c_{n-k+1} I); c_{n-k} = -trace(M_k)/k
        shift = coeffs[n - k + 1]
        shifted = [
            [Mk[i][j] + shift if i == j else Mk[i][j] for j in range(n)] for i in range(n)
        ]
        Mk = _pm_mul(A, shifted, n)
        coeffs[n - k] = -(trace(Mk) * Fraction(1, k))
    return CharPoly(n, EPoly(coeffs))


def trace_and_det(mset: MatrixSet) -> dict[str, tuple[ComplexRational, ComplexRational]]:
    """Exact (trace, determinant) for each matrix of the set, keyed by name."""
    return {name: (mat_trace(m), mat_det(m)) for name, m in mset.matrices()}
