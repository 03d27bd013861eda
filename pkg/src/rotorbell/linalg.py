"""Dense complex matrix kernel: Hermitian eigensolver, Kronecker products,
expectation values.

The eigensolver is a cyclic complex Jacobi iteration.  The dimensions in this
package stay small (a few hundred at most), where Jacobi is robust, fully
deterministic for identical input, and keeps eigenvectors orthonormal to
machine precision.  The inner sweep is compiled with numba so that scanning
thousands of operators stays fast.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

HERMITICITY_TOL = 1e-10

__all__ = [
    "DimensionMismatch",
    "NonConvergence",
    "HermitianOperator",
    "SpectralResult",
    "hermitian_eig",
    "kron",
    "expectation",
]


class DimensionMismatch(ValueError):
    """Operator and state dimensions do not agree."""


class NonConvergence(RuntimeError):
    """Jacobi sweeps failed to reduce the off-diagonal norm (pathological input)."""


@dataclass(frozen=True)
class HermitianOperator:
    """Square complex matrix checked for Hermiticity at construction."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.ascontiguousarray(np.asarray(self.matrix, dtype=np.complex128))
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m.view(np.float64))):
            raise ValueError("matrix entries must be finite")
        defect = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
        if defect > HERMITICITY_TOL:
            raise ValueError(f"matrix is not Hermitian: max |A - A^H| = {defect:.3e}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __add__(self, other: "HermitianOperator") -> "HermitianOperator":
        return HermitianOperator(self.matrix + other.matrix)

    def __sub__(self, other: "HermitianOperator") -> "HermitianOperator":
        return HermitianOperator(self.matrix - other.matrix)

    def __mul__(self, scale: float) -> "HermitianOperator":
        return HermitianOperator(self.matrix * float(scale))

    __rmul__ = __mul__


@dataclass(frozen=True)
class SpectralResult:
    """Eigenvalues in ascending order with matching orthonormal eigenvectors.

    ``eigenvectors[:, k]`` belongs to ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    def top_eigenvector(self) -> np.ndarray:
        return self.eigenvectors[:, -1]


@numba.njit(cache=True)
def _jacobi_sweeps(a, v, tol, max_sweeps):  # pragma: no cover - compiled
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j].real ** 2 + a[i, j].imag ** 2
        if np.sqrt(off) <= tol:
            return sweep, True
        if sweep == max_sweeps:
            return sweep, False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                # unitary plane rotation zeroing a[p, q]
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(1.0 + theta * theta))
                else:
                    t = -1.0 / (-theta + np.sqrt(1.0 + theta * theta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                alpha = apq / r
                alpha_c = np.conj(alpha)
                for i in range(n):
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = c * aip - s * alpha_c * aiq
                    a[i, q] = s * alpha * aip + c * aiq
                for i in range(n):
                    api = a[p, i]
                    aqi = a[q, i]
                    a[p, i] = c * api - s * alpha * aqi
                    a[q, i] = s * alpha_c * api + c * aqi
                a[p, q] = 0.0
                a[q, p] = 0.0
                for i in range(n):
                    vip = v[i, p]
                    viq = v[i, q]
                    v[i, p] = c * vip - s * alpha_c * viq
                    v[i, q] = s * alpha * vip + c * viq
    return max_sweeps, False


def hermitian_eig(op: HermitianOperator, max_sweeps: int = 100) -> SpectralResult:
    """Full spectral decomposition of a Hermitian operator.

    Cyclic Jacobi with a fixed sweep order, so identical input always yields
    identical output.  Eigenvalues are sorted ascending; ties keep the order
    in which the diagonal produced them.

    Raises:
        NonConvergence: off-diagonal Frobenius norm did not fall below
            1e-12 * ||A||_F within ``max_sweeps`` cyclic sweeps.
    """
    mat = op.matrix if isinstance(op, HermitianOperator) else HermitianOperator(op).matrix
    a = np.ascontiguousarray(0.5 * (mat + mat.conj().T))
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    tol = 1e-12 * float(np.linalg.norm(mat))
    sweeps, converged = _jacobi_sweeps(a, v, tol, max_sweeps)
    if not converged:
        raise NonConvergence(
            f"off-diagonal norm still above {tol:.3e} after {sweeps} sweeps (dim={n})"
        )
    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return SpectralResult(eigenvalues=w[order], eigenvectors=v[:, order])


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with molecule-1-major indexing.

    Row index ``r = r1 * dim(b) + r2``: the first factor owns the slow index.
    """
    return np.kron(np.asarray(a), np.asarray(b))


def expectation(op: HermitianOperator, state) -> float:
    """Real expectation value <s|A|s> of a Hermitian operator.

    ``state`` may be a plain vector or anything carrying an ``amplitudes``
    attribute.  The vector must be normalized within 1e-10; the imaginary
    residue of the quadratic form is asserted below 1e-10 and discarded.
    """
    amps = np.asarray(getattr(state, "amplitudes", state), dtype=np.complex128)
    mat = op.matrix if isinstance(op, HermitianOperator) else np.asarray(op)
    if amps.ndim != 1 or amps.shape[0] != mat.shape[0]:
        raise DimensionMismatch(
            f"state dimension {amps.shape} does not match operator dimension {mat.shape[0]}"
        )
    norm = np.linalg.norm(amps)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"state is not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
    value = np.vdot(amps, mat @ amps)
    assert abs(value.imag) <= 1e-10, f"imaginary residue {value.imag:.3e}"
    return float(value.real)
