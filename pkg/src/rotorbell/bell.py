"""Bell operators for orientation correlations of two identical free rotors.

Two operator families are provided.  The first correlates the raw orientation
observable of each molecule at two measurement times per side; its local
bound scales with the square of the largest orientation eigenvalue.  The
second first dichotomizes each molecule's orientation into +/-1 through the
positive/negative orientation projectors, which restores the dimension-free
CHSH bounds (2 locally, 2*sqrt(2) quantum mechanically).

Both molecules share one basis; the measurement times enter only through the
free evolution, so every constructor here is a pure function of
``(basis, times)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .angular import RotorBasis, cos_theta_matrix, evolution_phases, orientation_heisenberg
from .linalg import HermitianOperator, hermitian_eig, kron

ZERO_EIGENVALUE_TOL = 1e-10

__all__ = [
    "DichotomyPair",
    "Thresholds",
    "correlation_operator",
    "bell_b1",
    "bell_b1_general",
    "dichotomy_projectors",
    "pi_observable",
    "bell_b2",
    "bell_b2_general",
    "thresholds",
    "lhv_bruteforce_bound",
]


@dataclass(frozen=True)
class DichotomyPair:
    """Single-molecule projectors onto positive and negative orientation."""

    pi_plus: HermitianOperator
    pi_minus: HermitianOperator


@dataclass(frozen=True)
class Thresholds:
    """Local-theory and quantum bounds for both Bell operator kinds."""

    lambda_max: float
    separability_b1: float
    separability_b2: float
    cirelson_b1: float
    cirelson_b2: float


def correlation_operator(basis: RotorBasis, t1: float, t2: float) -> HermitianOperator:
    """Two-molecule orientation correlation operator O_1(t1) x O_2(t2)."""
    o1 = orientation_heisenberg(basis, t1).matrix
    o2 = orientation_heisenberg(basis, t2).matrix
    return HermitianOperator(kron(o1, o2))


def bell_b1_general(
    basis: RotorBasis, ta: float, tap: float, tb: float, tbp: float
) -> HermitianOperator:
    """Orientation Bell operator with four independent measurement times.

    ``(ta, tap)`` are molecule 1's settings, ``(tb, tbp)`` molecule 2's; the
    primed pair carries the minus sign, mirroring the CHSH combination.
    """
    c = lambda x, y: correlation_operator(basis, x, y).matrix  # noqa: E731
    combo = c(ta, tb) + c(ta, tbp) + c(tap, tb) - c(tap, tbp)
    return HermitianOperator(combo)


def bell_b1(basis: RotorBasis, t: float) -> HermitianOperator:
    """Single-time orientation Bell operator C(t,t) + C(t,0) + C(0,t) - C(0,0)."""
    return bell_b1_general(basis, t, 0.0, t, 0.0)


def dichotomy_projectors(basis: RotorBasis) -> DichotomyPair:
    """Spectral projectors of cos(theta) split by eigenvalue sign.

    Eigenvalues within 1e-10 of zero count as negatively oriented, so for odd
    dimension the zero mode always lands in ``pi_minus``.
    """
    spec = hermitian_eig(cos_theta_matrix(basis))
    d = basis.dim
    plus = np.zeros((d, d), dtype=np.complex128)
    minus = np.zeros((d, d), dtype=np.complex128)
    for lam, vec in zip(spec.eigenvalues, spec.eigenvectors.T):
        block = np.outer(vec, np.conj(vec))
        if lam > ZERO_EIGENVALUE_TOL:
            plus += block
        else:
            minus += block
    return DichotomyPair(pi_plus=HermitianOperator(plus), pi_minus=HermitianOperator(minus))


def pi_observable(basis: RotorBasis, t: float) -> HermitianOperator:
    """Dichotomized orientation observable Pi(t) = U(t)^H (Pi+ - Pi-) U(t).

    Squares to the identity; eigenvalues are exactly +/-1 with multiplicities
    given by the projector ranks.
    """
    pair = dichotomy_projectors(basis)
    diff = pair.pi_plus.matrix - pair.pi_minus.matrix
    u = evolution_phases(basis, t)
    return HermitianOperator(u.conjugate_diagonal(diff))


def _pi_correlation(basis: RotorBasis, t1: float, t2: float) -> np.ndarray:
    return kron(pi_observable(basis, t1).matrix, pi_observable(basis, t2).matrix)


def bell_b2_general(
    basis: RotorBasis, ta: float, tap: float, tb: float, tbp: float
) -> HermitianOperator:
    """Dichotomized Bell operator with four independent measurement times."""
    p = lambda x, y: _pi_correlation(basis, x, y)  # noqa: E731
    combo = p(ta, tb) + p(ta, tbp) + p(tap, tb) - p(tap, tbp)
    return HermitianOperator(combo)


def bell_b2(basis: RotorBasis, t: float) -> HermitianOperator:
    """Single-time dichotomized Bell operator Pi(t,t) + Pi(t,0) + Pi(0,t) - Pi(0,0)."""
    return bell_b2_general(basis, t, 0.0, t, 0.0)


def thresholds(basis: RotorBasis) -> Thresholds:
    """All separability thresholds and quantum bounds for this basis."""
    lam_max = hermitian_eig(cos_theta_matrix(basis)).lambda_max
    return Thresholds(
        lambda_max=lam_max,
        separability_b1=2.0 * lam_max**2,
        separability_b2=2.0,
        cirelson_b1=2.0 * math.sqrt(2.0) * lam_max**2,
        cirelson_b2=2.0 * math.sqrt(2.0),
    )


def lhv_bruteforce_bound() -> float:
    """Local bound of the CHSH combination by exhaustive strategy enumeration.

    Every deterministic local strategy assigns a, a', b, b' in {-1, +1}; the
    maximum of |ab + ab' + a'b - a'b'| over all 16 assignments is the bound
    shared-randomness mixtures cannot exceed.  Must return exactly 2.
    """
    best = 0.0
    for a, ap, b, bp in itertools.product((-1.0, 1.0), repeat=4):
        best = max(best, abs(a * b + a * bp + ap * b - ap * bp))
    return best
