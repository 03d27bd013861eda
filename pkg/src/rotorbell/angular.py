"""Truncated rigid-rotor basis and the molecular orientation observable.

Conventions
-----------
A single linear molecule is described in the truncated angular-momentum basis
``{|j, m>}`` with the projection ``m`` held fixed (default 0), so the basis
states are ``|j>`` for ``j = |m|, ..., jmax``.  Time is dimensionless, in
units of the rotational period, and the free Hamiltonian eigenvalue for
``|j>`` is ``j(j+1)`` in units of the rotational constant.  The free
propagator is then the diagonal unitary with phases ``exp(-i pi j(j+1) t)``,
periodic with period 1.

The orientation observable is the operator ``cos(theta)`` of the molecular
axis against the lab axis.  In this basis it is real, symmetric, tridiagonal
with zero diagonal; its off-diagonal elements follow the standard
spherical-harmonic recursion and are cross-checked against a Gauss-Legendre
quadrature oracle (``cos_theta_element_oracle``) in the validation suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import lpmv

from .linalg import HermitianOperator

__all__ = [
    "RotorBasis",
    "DiagonalUnitary",
    "cos_theta_matrix",
    "cos_theta_element_oracle",
    "evolution_phases",
    "orientation_heisenberg",
]


@dataclass(frozen=True)
class RotorBasis:
    """Single-molecule basis ``|j, m>`` for ``j = |m|, ..., jmax``, fixed ``m``."""

    jmax: int
    m: int = 0

    def __post_init__(self):
        if self.jmax < 1:
            raise ValueError(f"jmax must be >= 1, got {self.jmax}")
        if abs(self.m) > self.jmax:
            raise ValueError(f"|m| = {abs(self.m)} exceeds jmax = {self.jmax}")

    @property
    def dim(self) -> int:
        return self.jmax - abs(self.m) + 1

    @property
    def j_values(self) -> np.ndarray:
        return np.arange(abs(self.m), self.jmax + 1)

    @property
    def pair_dim(self) -> int:
        """Dimension of the two-molecule product space."""
        return self.dim ** 2


@dataclass(frozen=True)
class DiagonalUnitary:
    """Diagonal unitary stored as its list of unit-modulus phases."""

    phases: np.ndarray = field()

    def __post_init__(self):
        phases = np.asarray(self.phases, dtype=np.complex128)
        defect = np.max(np.abs(np.abs(phases) - 1.0))
        if defect > 1e-12:
            raise ValueError(f"phases are not unit modulus: max defect {defect:.3e}")
        object.__setattr__(self, "phases", phases)

    def conjugate_diagonal(self, matrix: np.ndarray) -> np.ndarray:
        """Return U^H M U for this diagonal U."""
        u = self.phases
        return matrix * np.outer(np.conj(u), u)


def _recursion_element(j: int, m: int) -> float:
    # <j+1, m| cos(theta) |j, m> from the spherical-harmonic recursion
    return math.sqrt(((j + 1) ** 2 - m * m) / ((2 * j + 1) * (2 * j + 3)))


def cos_theta_matrix(basis: RotorBasis) -> HermitianOperator:
    """Orientation operator cos(theta) in the truncated basis.

    Real symmetric tridiagonal with zero diagonal; the element coupling
    ``|j>`` and ``|j+1>`` is ``sqrt(((j+1)^2 - m^2) / ((2j+1)(2j+3)))``.
    """
    d = basis.dim
    mat = np.zeros((d, d), dtype=np.complex128)
    jv = basis.j_values
    for k in range(d - 1):
        c = _recursion_element(int(jv[k]), basis.m)
        mat[k, k + 1] = c
        mat[k + 1, k] = c
    return HermitianOperator(mat)


def cos_theta_element_oracle(j: int, jp: int, m: int, nodes: int = 64) -> float:
    """<jp, m| cos(theta) |j, m> by Gauss-Legendre quadrature.

    Integrates the product of normalized associated Legendre functions times
    cos(theta) over the sphere.  Validation-only: the construction path never
    calls this.
    """
    mm = abs(m)
    if j < mm or jp < mm:
        raise ValueError(f"need j, jp >= |m|; got j={j}, jp={jp}, m={m}")
    x, w = np.polynomial.legendre.leggauss(nodes)

    def normalized_theta_part(n: int) -> np.ndarray:
        norm = math.sqrt((2 * n + 1) / 2.0 * math.factorial(n - mm) / math.factorial(n + mm))
        return norm * lpmv(mm, n, x)

    integrand = normalized_theta_part(jp) * x * normalized_theta_part(j)
    return float(np.sum(w * integrand))


def evolution_phases(basis: RotorBasis, t: float) -> DiagonalUnitary:
    """Free-rotation propagator at time ``t``, diagonal in the ``|j>`` basis.

    Phase for ``|j>`` is ``exp(-i pi j(j+1) t)``; since ``j(j+1)`` is even the
    propagator is periodic with period 1.
    """
    jv = basis.j_values.astype(np.float64)
    return DiagonalUnitary(np.exp(-1j * np.pi * jv * (jv + 1.0) * t))


def orientation_heisenberg(basis: RotorBasis, t: float) -> HermitianOperator:
    """Heisenberg-picture orientation operator O(t) = U(t)^H cos(theta) U(t)."""
    u = evolution_phases(basis, t)
    return HermitianOperator(u.conjugate_diagonal(cos_theta_matrix(basis).matrix))
