from __future__ import annotations

import numpy as np
import pytest

from rotorbell import HermitianOperator


def random_hermitian(rng: np.random.Generator, dim: int) -> HermitianOperator:
    raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return HermitianOperator(0.5 * (raw + raw.conj().T))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
