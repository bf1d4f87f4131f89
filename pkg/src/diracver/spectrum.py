"""Floating-point cross-validation of the exact machinery.

Builds h(p) = alpha.p + beta*m as a complex Hermitian array at concrete
momenta, solves it with a dense Hermitian eigensolver, and checks the
eigenvalue pattern {-E_p, -E_p, +E_p, +E_p} plus the two-dimensional
positive-energy eigenspace.  Tolerances are split deliberately: 1e-10 for
eigenpair residuals, 1e-9 for eigenvalue agreement, and a loud 1e-6 flag
for broken degeneracy or broken +/- symmetry, so physics violations stand
out far above numerical noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .symmat import Matrix, MatrixSet

__all__ = [
    "MomentumSample",
    "SpectrumRow",
    "SpinorBasis",
    "SweepResult",
    "RESIDUAL_TOLERANCE",
    "EIGENVALUE_TOLERANCE",
    "DEGENERACY_FLAG",
    "matrix_to_array",
    "hamiltonian_at",
    "eigensolve",
    "positive_energy_spinors",
    "sweep",
    "write_csv",
]

RESIDUAL_TOLERANCE = 1e-10
EIGENVALUE_TOLERANCE = 1e-9
DEGENERACY_FLAG = 1e-6


@dataclass(frozen=True)
class MomentumSample:
    """A concrete momentum vector and nonnegative mass."""

    p: tuple[float, float, float]
    m: float

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError("mass must be nonnegative")

    @property
    def energy(self) -> float:
        """The positive free-particle energy sqrt(p.p + m^2)."""
        return math.sqrt(self.p[0] ** 2 + self.p[1] ** 2 + self.p[2] ** 2 + self.m**2)

    @property
    def scale(self) -> float:
        """Residual scale 1 + |p| + m used by the tolerance contracts."""
        return 1.0 + math.sqrt(self.p[0] ** 2 + self.p[1] ** 2 + self.p[2] ** 2) + self.m


@dataclass(frozen=True)
class SpectrumRow:
    sample: MomentumSample
    eigenvalues: tuple[float, ...]


@dataclass(frozen=True)
class SpinorBasis:
    """Two orthonormal positive-energy eigenvectors at one momentum."""

    vectors: tuple[np.ndarray, np.ndarray]
    energy: float


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SpectrumRow, ...]
    flagged: tuple[int, ...]  # indices of rows violating symmetry or degeneracy


def matrix_to_array(matrix: Matrix) -> np.ndarray:
    return np.array([[complex(x) for x in row] for row in matrix], dtype=np.complex128)


def hamiltonian_at(mset: MatrixSet, sample: MomentumSample) -> np.ndarray:
    arrays = [matrix_to_array(a) for a in mset.alphas]
    beta = matrix_to_array(mset.beta)
    h = sample.p[0] * arrays[0] + sample.p[1] * arrays[1] + sample.p[2] * arrays[2] + sample.m * beta
    return h


def eigensolve(mset: MatrixSet, sample: MomentumSample) -> SpectrumRow:
    """Ascending real eigenvalues of h(p), residual-checked."""
    h = hamiltonian_at(mset, sample)
    values, vectors = np.linalg.eigh(h)
    residual = float(np.max(np.abs(h @ vectors - vectors * values)))
    if residual > EIGENVALUE_TOLERANCE * sample.scale:
        raise RuntimeError(f"eigensolver residual {residual:.3e} out of tolerance")
    return SpectrumRow(sample, tuple(float(v) for v in values))


def _fix_phase(vector: np.ndarray) -> np.ndarray:
    for component in vector:
        if abs(component) > 1e-12:
            return vector * (component.conjugate() / abs(component))
    return vector


def positive_energy_spinors(mset: MatrixSet, sample: MomentumSample) -> SpinorBasis:
    """Exactly two orthonormal eigenvectors of h(p) at +E_p.

    The set is expected to satisfy the multiplicity-2 dispersion demand;
    a positive eigenspace of any other dimension is reported as an error.
    Each vector's first significant component is rotated to be real and
    positive so outputs are reproducible.
    """
    energy = sample.energy
    if energy <= 0.0:
        raise ValueError("E_p = 0: the positive-energy eigenspace is undefined")
    h = hamiltonian_at(mset, sample)
    values, vectors = np.linalg.eigh(h)
    select = [k for k, v in enumerate(values) if abs(v - energy) <= 1e-7 * sample.scale]
    if len(select) != 2:
        raise ValueError(
            f"positive eigenspace dimension {len(select)} != 2 at p={sample.p}, m={sample.m}"
        )
    u1, u2 = (_fix_phase(vectors[:, k]) for k in select)
    residual = max(
        float(np.linalg.norm(h @ u - energy * u)) for u in (u1, u2)
    )
    if residual > RESIDUAL_TOLERANCE * sample.scale:
        raise RuntimeError(f"spinor residual {residual:.3e} out of tolerance")
    return SpinorBasis((u1, u2), energy)


def _row_defect(row: SpectrumRow) -> float:
    """Largest violation of +/- symmetry or of pairwise double degeneracy."""
    values = row.eigenvalues
    n = len(values)
    defect = max(abs(values[k] + values[n - 1 - k]) for k in range(n))
    if n == 4:
        defect = max(defect, abs(values[0] - values[1]), abs(values[2] - values[3]))
    return defect


def sweep(mset: MatrixSet, grid: Sequence[MomentumSample]) -> SweepResult:
    """Eigensolve every sample in order, flagging rows beyond the 1e-6 threshold."""
    rows = tuple(eigensolve(mset, sample) for sample in grid)
    flagged = tuple(k for k, row in enumerate(rows) if _row_defect(row) > DEGENERACY_FLAG)
    return SweepResult(rows, flagged)


def write_csv(rows: Sequence[SpectrumRow], stream) -> None:
    """CSV with 17-significant-digit values, one row per sample in input order."""
    n = len(rows[0].eigenvalues) if rows else 4
    header = ["px", "py", "pz", "m"] + [f"e{k}" for k in range(1, n + 1)]
    stream.write(",".join(header) + "\n")
    for row in rows:
        values = list(row.sample.p) + [row.sample.m] + list(row.eigenvalues)
        stream.write(",".join(f"{v:.17g}" for v in values) + "\n")
