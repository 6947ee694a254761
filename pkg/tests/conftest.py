import numpy as np
import pytest

from dstrength.types import BipartiteState


def bell_vector() -> np.ndarray:
    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[3] = 2 ** -0.5
    return psi


@pytest.fixture
def bell() -> BipartiteState:
    psi = bell_vector()
    return BipartiteState(np.outer(psi, psi.conj()), 2, 2)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
