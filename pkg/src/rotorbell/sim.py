"""Monte Carlo simulation of the dichotomous orientation-measurement protocol.

Each shot measures whether every molecule is positively or negatively
oriented (one detector per hemisphere); the joint +/- outcome is drawn from
the Born-rule probabilities.  Collecting correlators at the four setting
pairs (t,t), (t,0), (0,t), (0,0) reconstructs the dichotomized Bell quantity
statistically.

Randomness comes from numpy's PCG64 generator.  Each of the four settings
draws from an independent child stream spawned from (seed, setting index), so
identical seeds reproduce identical tallies regardless of evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angular import RotorBasis, evolution_phases
from .bell import dichotomy_projectors
from .linalg import DimensionMismatch, kron
from .scan import BipartiteState

__all__ = [
    "OutcomeTally",
    "B2Estimate",
    "joint_probabilities",
    "sample_outcomes",
    "estimate_b2",
]

# joint outcome order used everywhere: (++, +-, -+, --)
OUTCOME_LABELS = ("++", "+-", "-+", "--")


@dataclass(frozen=True)
class OutcomeTally:
    """Counts of the four joint orientation outcomes for one setting pair."""

    counts: tuple[int, int, int, int]
    shots: int

    def __post_init__(self):
        if sum(self.counts) != self.shots:
            raise ValueError(f"counts {self.counts} do not sum to shots {self.shots}")

    def correlator(self) -> float:
        """Empirical correlator E = p(++) + p(--) - p(+-) - p(-+)."""
        pp, pm, mp, mm = self.counts
        return (pp + mm - pm - mp) / self.shots

    def correlator_variance(self) -> float:
        """Plug-in variance of the correlator estimate.

        The agreement count is binomial; its probability is Laplace-smoothed
        so the variance stays positive even for deterministic tallies.
        """
        agree = self.counts[0] + self.counts[3]
        p = (agree + 1.0) / (self.shots + 2.0)
        return 4.0 * p * (1.0 - p) / self.shots


@dataclass(frozen=True)
class B2Estimate:
    """Statistical reconstruction of the dichotomized Bell quantity."""

    value: float
    std_error: float
    shots_per_setting: int
    times: tuple[tuple[float, float], ...]


def _dichotomy_at(basis: RotorBasis, t: float) -> tuple[np.ndarray, np.ndarray]:
    pair = dichotomy_projectors(basis)
    u = evolution_phases(basis, t)
    return (
        u.conjugate_diagonal(pair.pi_plus.matrix),
        u.conjugate_diagonal(pair.pi_minus.matrix),
    )


def joint_probabilities(
    basis: RotorBasis, state: BipartiteState, t1: float, t2: float
) -> tuple[float, float, float, float]:
    """Born-rule probabilities of the joint outcomes (++, +-, -+, --).

    p(s1, s2) = <psi| P_s1(t1) x P_s2(t2) |psi> with the time-evolved
    positive/negative orientation projectors; tiny negative residues are
    clipped to zero and the four values sum to one within 1e-10.
    """
    if state.dim != basis.pair_dim:
        raise DimensionMismatch(
            f"state dimension {state.dim} does not match two-molecule dimension {basis.pair_dim}"
        )
    plus1, minus1 = _dichotomy_at(basis, t1)
    plus2, minus2 = _dichotomy_at(basis, t2)
    psi = state.amplitudes
    probs = []
    for p1, p2 in ((plus1, plus2), (plus1, minus2), (minus1, plus2), (minus1, minus2)):
        val = np.vdot(psi, kron(p1, p2) @ psi).real
        if val < -1e-12 or val > 1.0 + 1e-12:
            raise AssertionError(f"probability {val} outside [0, 1] tolerance")
        probs.append(min(max(val, 0.0), 1.0))
    total = sum(probs)
    assert abs(total - 1.0) <= 1e-10, f"probabilities sum to {total}"
    return tuple(probs)


def sample_outcomes(
    basis: RotorBasis, state: BipartiteState, t1: float, t2: float, shots: int, seed
) -> OutcomeTally:
    """Draw ``shots`` i.i.d. joint outcomes from the Born-rule distribution.

    ``seed`` may be an int, a SeedSequence, or an existing Generator;
    identical inputs and seed give identical tallies.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    probs = np.array(joint_probabilities(basis, state, t1, t2))
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs / probs.sum())
    return OutcomeTally(counts=tuple(int(c) for c in counts), shots=shots)


def estimate_b2(
    basis: RotorBasis, state: BipartiteState, t: float, shots_per_setting: int, seed
) -> B2Estimate:
    """Reconstruct the dichotomized Bell quantity from sampled correlators.

    The four settings are sampled independently (no shot pairing), each from
    its own child stream of ``seed``; the standard error combines the four
    per-setting binomial errors in quadrature.
    """
    if shots_per_setting < 2:
        raise ValueError(f"shots_per_setting must be >= 2, got {shots_per_setting}")
    settings = ((t, t), (t, 0.0), (0.0, t), (0.0, 0.0))
    streams = np.random.SeedSequence(seed).spawn(len(settings))
    correlators = []
    variance = 0.0
    for (t1, t2), stream in zip(settings, streams):
        tally = sample_outcomes(basis, state, t1, t2, shots_per_setting, stream)
        correlators.append(tally.correlator())
        variance += tally.correlator_variance()
    value = correlators[0] + correlators[1] + correlators[2] - correlators[3]
    return B2Estimate(
        value=value,
        std_error=math.sqrt(variance),
        shots_per_setting=shots_per_setting,
        times=settings,
    )
