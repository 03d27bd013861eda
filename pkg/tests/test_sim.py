from __future__ import annotations

import math

import numpy as np
import pytest

from rotorbell import (
    BellKind,
    BipartiteState,
    DimensionMismatch,
    OutcomeTally,
    RotorBasis,
    estimate_b2,
    expectation,
    joint_probabilities,
    optimal_state,
    refine_max,
    sample_outcomes,
)
from rotorbell.bell import bell_b2

SQRT2 = math.sqrt(2.0)


def plus_plus_state() -> BipartiteState:
    plus = np.array([1.0, 1.0]) / SQRT2
    return BipartiteState(np.kron(plus, plus))


def psi_plus_state() -> BipartiteState:
    return BipartiteState(np.array([0.0, 1.0, 1.0, 0.0]) / SQRT2)


def random_state(rng: np.random.Generator, dim: int) -> BipartiteState:
    vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return BipartiteState(vec / np.linalg.norm(vec))


class TestJointProbabilities:
    def test_oriented_product_state_is_deterministic(self):
        probs = joint_probabilities(RotorBasis(1), plus_plus_state(), 0.0, 0.0)
        np.testing.assert_allclose(probs, [1.0, 0.0, 0.0, 0.0], atol=1e-12)

    def test_bell_state_is_perfectly_correlated(self):
        probs = joint_probabilities(RotorBasis(1), psi_plus_state(), 0.0, 0.0)
        np.testing.assert_allclose(probs, [0.5, 0.0, 0.0, 0.5], atol=1e-12)

    def test_completeness_random_battery(self, rng):
        for _ in range(25):
            jmax = int(rng.integers(1, 4))
            basis = RotorBasis(jmax)
            state = random_state(rng, basis.pair_dim)
            t1, t2 = rng.uniform(0.0, 1.0, size=2)
            probs = joint_probabilities(basis, state, t1, t2)
            assert all(0.0 <= p <= 1.0 for p in probs)
            assert abs(sum(probs) - 1.0) <= 1e-10

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            joint_probabilities(RotorBasis(2), psi_plus_state(), 0.0, 0.0)


class TestOutcomeTally:
    def test_counts_must_sum_to_shots(self):
        with pytest.raises(ValueError, match="sum"):
            OutcomeTally(counts=(1, 2, 3, 4), shots=11)

    def test_correlator(self):
        tally = OutcomeTally(counts=(40, 10, 20, 30), shots=100)
        assert tally.correlator() == (40 + 30 - 10 - 20) / 100

    def test_variance_positive_even_when_deterministic(self):
        tally = OutcomeTally(counts=(100, 0, 0, 0), shots=100)
        assert tally.correlator_variance() > 0.0


class TestSampleOutcomes:
    def test_deterministic_distribution(self):
        tally = sample_outcomes(RotorBasis(1), plus_plus_state(), 0.0, 0.0, 100, seed=3)
        assert tally.counts == (100, 0, 0, 0)

    def test_same_seed_same_tally(self):
        basis = RotorBasis(2)
        rng = np.random.default_rng(0)
        state = random_state(rng, basis.pair_dim)
        a = sample_outcomes(basis, state, 0.2, 0.6, 5000, seed=11)
        b = sample_outcomes(basis, state, 0.2, 0.6, 5000, seed=11)
        assert a == b

    def test_rejects_zero_shots(self):
        with pytest.raises(ValueError, match="shots"):
            sample_outcomes(RotorBasis(1), plus_plus_state(), 0.0, 0.0, 0, seed=1)

    def test_correlator_within_five_sigma_battery(self, rng):
        from rotorbell import HermitianOperator, kron, pi_observable

        for trial in range(6):
            jmax = int(rng.integers(1, 4))
            basis = RotorBasis(jmax)
            state = random_state(rng, basis.pair_dim)
            t1, t2 = rng.uniform(0.0, 1.0, size=2)
            joint_pi = HermitianOperator(
                kron(pi_observable(basis, t1).matrix, pi_observable(basis, t2).matrix)
            )
            exact = expectation(joint_pi, state)
            tally = sample_outcomes(basis, state, t1, t2, 100_000, seed=trial)
            sigma = math.sqrt(tally.correlator_variance())
            assert abs(tally.correlator()) <= 1.0
            assert abs(tally.correlator() - exact) <= 5.0 * sigma


class TestEstimateB2:
    def test_optimal_state_reaches_cirelson_statistically(self):
        basis = RotorBasis(1)
        state = optimal_state(basis, BellKind.B2, 0.25)
        est = estimate_b2(basis, state, 0.25, 100_000, seed=7)
        assert abs(est.value - 2.0 * SQRT2) <= 5.0 * est.std_error
        assert est.value - 2.0 >= 3.0 * est.std_error

    def test_jmax2_peak_violates_statistically(self):
        basis = RotorBasis(2)
        t_star, _ = refine_max(basis, BellKind.B2, 0.25, 0.05)
        state = optimal_state(basis, BellKind.B2, t_star)
        est = estimate_b2(basis, state, t_star, 100_000, seed=21)
        assert est.value - 2.0 >= 3.0 * est.std_error

    def test_separable_state_obeys_local_bound(self):
        basis = RotorBasis(1)
        amps = np.zeros(4)
        amps[0] = 1.0
        est = estimate_b2(basis, BipartiteState(amps), 0.25, 100_000, seed=5)
        assert abs(est.value) <= 2.0 + 5.0 * est.std_error

    def test_matches_exact_operator_expectation(self):
        basis = RotorBasis(2)
        state = random_state(np.random.default_rng(8), basis.pair_dim)
        exact = expectation(bell_b2(basis, 0.37), state)
        est = estimate_b2(basis, state, 0.37, 200_000, seed=15)
        assert abs(est.value - exact) <= 5.0 * est.std_error

    def test_error_scales_inverse_sqrt_shots(self):
        basis = RotorBasis(1)
        state = optimal_state(basis, BellKind.B2, 0.25)
        small = estimate_b2(basis, state, 0.25, 50_000, seed=2)
        large = estimate_b2(basis, state, 0.25, 100_000, seed=2)
        ratio = small.std_error / large.std_error
        assert abs(ratio - SQRT2) < 0.05

    def test_deterministic_given_seed(self):
        basis = RotorBasis(1)
        state = optimal_state(basis, BellKind.B2, 0.25)
        a = estimate_b2(basis, state, 0.25, 10_000, seed=42)
        b = estimate_b2(basis, state, 0.25, 10_000, seed=42)
        assert a == b

    def test_positive_error_for_deterministic_outcomes(self):
        est = estimate_b2(RotorBasis(1), plus_plus_state(), 0.0, 2, seed=1)
        assert est.std_error > 0.0

    def test_rejects_single_shot(self):
        with pytest.raises(ValueError, match="shots_per_setting"):
            estimate_b2(RotorBasis(1), plus_plus_state(), 0.25, 1, seed=1)

    def test_records_settings(self):
        est = estimate_b2(RotorBasis(1), plus_plus_state(), 0.3, 100, seed=1)
        assert est.times == ((0.3, 0.3), (0.3, 0.0), (0.0, 0.3), (0.0, 0.0))
