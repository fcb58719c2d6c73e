import numpy as np
import pytest

from statedisc import Ensemble
from statedisc.constructions import pure_tight

# Three messages, one qubit: the running example used throughout the suite.
THREE_MESSAGE_PRIORS = (0.5, 1.0 / 3.0, 1.0 / 6.0)


def trine_ensemble() -> Ensemble:
    """Three equiprobable qubit states 120 degrees apart on the Bloch equator."""
    states = []
    for k in range(3):
        off = 0.5 * np.exp(2j * np.pi * k / 3.0)
        states.append(np.array([[0.5, np.conj(off)], [off, 0.5]]))
    return Ensemble(2, np.full(3, 1.0 / 3.0), np.stack(states))


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (a + a.conj().T)


@pytest.fixture
def worked_example():
    """Basis encoding of the (1/2, 1/3, 1/6) priors on one qubit."""
    return pure_tight(THREE_MESSAGE_PRIORS, 2)


@pytest.fixture
def trine():
    return trine_ensemble()
