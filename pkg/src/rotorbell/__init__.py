"""Bell-type inequality tests built from the spatial orientation of two free
quantum rigid rotors: operator construction, violation-curve scans, and a
Monte Carlo simulation of the dichotomous measurement protocol."""

from .angular import (
    DiagonalUnitary,
    RotorBasis,
    cos_theta_element_oracle,
    cos_theta_matrix,
    evolution_phases,
    orientation_heisenberg,
)
from .bell import (
    DichotomyPair,
    Thresholds,
    bell_b1,
    bell_b1_general,
    bell_b2,
    bell_b2_general,
    correlation_operator,
    dichotomy_projectors,
    lhv_bruteforce_bound,
    pi_observable,
    thresholds,
)
from .linalg import (
    DimensionMismatch,
    HermitianOperator,
    NonConvergence,
    SpectralResult,
    expectation,
    hermitian_eig,
    kron,
)
from .scan import (
    BellKind,
    BipartiteState,
    CurveSample,
    Verdict,
    ViolationCurve,
    WitnessReport,
    optimal_state,
    refine_max,
    relative_violation,
    scan_curve,
    violation_fraction,
    witness_evaluate,
)
from .sim import B2Estimate, OutcomeTally, estimate_b2, joint_probabilities, sample_outcomes

__version__ = "0.1.0"

__all__ = [
    "B2Estimate",
    "BellKind",
    "BipartiteState",
    "CurveSample",
    "DiagonalUnitary",
    "DichotomyPair",
    "DimensionMismatch",
    "HermitianOperator",
    "NonConvergence",
    "OutcomeTally",
    "RotorBasis",
    "SpectralResult",
    "Thresholds",
    "Verdict",
    "ViolationCurve",
    "WitnessReport",
    "bell_b1",
    "bell_b1_general",
    "bell_b2",
    "bell_b2_general",
    "correlation_operator",
    "cos_theta_element_oracle",
    "cos_theta_matrix",
    "dichotomy_projectors",
    "estimate_b2",
    "evolution_phases",
    "expectation",
    "hermitian_eig",
    "joint_probabilities",
    "kron",
    "lhv_bruteforce_bound",
    "optimal_state",
    "orientation_heisenberg",
    "pi_observable",
    "refine_max",
    "relative_violation",
    "sample_outcomes",
    "scan_curve",
    "thresholds",
    "violation_fraction",
    "witness_evaluate",
]
