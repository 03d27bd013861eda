"""Time scans of the Bell operators: violation curves, peak refinement, and
entanglement-witness evaluation."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import bell
from .angular import RotorBasis
from .linalg import DimensionMismatch, HermitianOperator, expectation, hermitian_eig

VIOLATION_MARGIN = 1e-12
DEFAULT_GRID = 1000

__all__ = [
    "BellKind",
    "Verdict",
    "CurveSample",
    "ViolationCurve",
    "BipartiteState",
    "WitnessReport",
    "scan_curve",
    "refine_max",
    "violation_fraction",
    "relative_violation",
    "witness_evaluate",
    "optimal_state",
]


class BellKind(enum.Enum):
    B1 = "b1"
    B2 = "b2"


class Verdict(enum.Enum):
    VIOLATES_LOCALITY = "ViolatesLocality"
    NO_VIOLATION = "NoViolation"


@dataclass(frozen=True)
class CurveSample:
    t: float
    max_eigenvalue: float
    threshold: float
    violates: bool


@dataclass(frozen=True)
class ViolationCurve:
    """Sampled t -> (top eigenvalue, threshold, violation flag) record."""

    kind: BellKind
    jmax: int
    m: int
    samples: list[CurveSample]

    def global_max(self) -> CurveSample:
        return max(self.samples, key=lambda s: s.max_eigenvalue)


@dataclass(frozen=True)
class BipartiteState:
    """Normalized two-molecule amplitude vector, molecule-1-major ordering."""

    amplitudes: np.ndarray = field()

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"amplitudes are not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, vector) -> "BipartiteState":
        amps = np.asarray(vector, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm < 1e-6:
            raise ValueError(f"cannot normalize near-zero vector (norm {norm:.3e})")
        return cls(amps / norm)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]


@dataclass(frozen=True)
class WitnessReport:
    value: float
    threshold: float
    verdict: Verdict
    optimal_state: BipartiteState | None = None


def _bell_operator(basis: RotorBasis, kind: BellKind, t: float) -> HermitianOperator:
    if kind is BellKind.B1:
        return bell.bell_b1(basis, t)
    return bell.bell_b2(basis, t)


def _threshold(basis: RotorBasis, kind: BellKind) -> float:
    th = bell.thresholds(basis)
    return th.separability_b1 if kind is BellKind.B1 else th.separability_b2


def _top_eigenvalue(basis: RotorBasis, kind: BellKind, t: float) -> float:
    return hermitian_eig(_bell_operator(basis, kind, t)).lambda_max


def scan_curve(basis: RotorBasis, kind: BellKind, grid_points: int) -> ViolationCurve:
    """Top Bell-operator eigenvalue on the uniform grid t_k = k/grid over [0, 1)."""
    if grid_points < 2:
        raise ValueError(f"grid_points must be >= 2, got {grid_points}")
    threshold = _threshold(basis, kind)
    samples = []
    for k in range(grid_points):
        t = k / grid_points
        top = _top_eigenvalue(basis, kind, t)
        samples.append(
            CurveSample(
                t=t,
                max_eigenvalue=top,
                threshold=threshold,
                violates=top > threshold + VIOLATION_MARGIN,
            )
        )
    return ViolationCurve(kind=kind, jmax=basis.jmax, m=basis.m, samples=samples)


def refine_max(
    basis: RotorBasis, kind: BellKind, t_seed: float, window: float
) -> tuple[float, float]:
    """Golden-section refinement of the top-eigenvalue peak near ``t_seed``.

    Searches [t_seed - window, t_seed + window] until the bracket is shorter
    than 1e-10 and returns the best (t, value) evaluated, seed included, so
    the result never falls below the seeded grid value.
    """
    if window <= 0:
        raise ValueError(f"window must be positive, got {window}")
    f = lambda t: _top_eigenvalue(basis, kind, t)  # noqa: E731
    lo, hi = t_seed - window, t_seed + window
    best_t, best_v = t_seed, f(t_seed)
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > 1e-10:
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = f(x1)
            if f1 > best_v:
                best_t, best_v = x1, f1
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = f(x2)
            if f2 > best_v:
                best_t, best_v = x2, f2
    return best_t, best_v


def violation_fraction(curve: ViolationCurve) -> float:
    """Fraction of curve samples that violate the separability threshold."""
    if not curve.samples:
        raise ValueError("curve has no samples")
    return sum(1 for s in curve.samples if s.violates) / len(curve.samples)


def relative_violation(basis: RotorBasis, kind: BellKind, grid_points: int = DEFAULT_GRID) -> float:
    """Maximal relative violation (global max / threshold - 1) via scan + refine."""
    curve = scan_curve(basis, kind, grid_points)
    peak = curve.global_max()
    _, refined = refine_max(basis, kind, peak.t, 2.0 / grid_points)
    return refined / peak.threshold - 1.0


def witness_evaluate(
    basis: RotorBasis,
    kind: BellKind,
    state: BipartiteState,
    t: float,
    include_optimal: bool = False,
) -> WitnessReport:
    """Expectation of the Bell operator in ``state`` against the local bound.

    A value above the separability threshold certifies entanglement of the
    state.  With ``include_optimal`` the report also carries the maximizing
    eigenvector at this time.
    """
    if state.dim != basis.pair_dim:
        raise DimensionMismatch(
            f"state dimension {state.dim} does not match two-molecule dimension {basis.pair_dim}"
        )
    value = expectation(_bell_operator(basis, kind, t), state)
    threshold = _threshold(basis, kind)
    verdict = Verdict.VIOLATES_LOCALITY if value > threshold else Verdict.NO_VIOLATION
    optimal = optimal_state(basis, kind, t) if include_optimal else None
    return WitnessReport(value=value, threshold=threshold, verdict=verdict, optimal_state=optimal)


def optimal_state(basis: RotorBasis, kind: BellKind, t: float) -> BipartiteState:
    """Top eigenvector of the Bell operator at ``t``, with the first
    non-negligible amplitude rotated to the positive real axis."""
    vec = hermitian_eig(_bell_operator(basis, kind, t)).top_eigenvector().copy()
    for a in vec:
        if abs(a) > 1e-12:
            vec *= np.conj(a) / abs(a)
            break
    return BipartiteState(vec / np.linalg.norm(vec))
