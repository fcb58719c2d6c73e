"""Seeded random instances: unitaries, ensembles, measurements, spectra.

Everything takes an explicit ``numpy.random.Generator`` so sweeps and
tests stay reproducible; nothing here touches global RNG state.
"""

from __future__ import annotations

import numpy as np

from .ensemble import Ensemble, SpectrumEntry, WeightedSpectrum
from .linalg import dagger, hermitize
from .measurement import ModelMeasurement, Povm
from .solvers import _complete_to_identity, _pinv_sqrt_raw


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian, phases fixed from R."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) \
        / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diag(r).copy()
    diag[diag == 0] = 1.0
    phases = diag / np.abs(diag)
    return q * phases.conj()


def random_priors(messages: int, rng: np.random.Generator) -> np.ndarray:
    return rng.dirichlet(np.ones(messages))


def random_density(dim: int, rng: np.random.Generator, pure: bool = False) -> np.ndarray:
    """Random state: a Haar vector if pure, else a rotated random spectrum."""
    if pure:
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        v = v / np.linalg.norm(v)
        return np.outer(v, v.conj())
    lam = rng.dirichlet(np.ones(dim))
    u = haar_unitary(dim, rng)
    return hermitize((u * lam) @ u.conj().T)


def random_ensemble(dim: int, messages: int, rng: np.random.Generator,
                    pure: bool = False) -> Ensemble:
    priors = random_priors(messages, rng)
    states = np.stack([random_density(dim, rng, pure) for _ in range(messages)])
    return Ensemble(dim, priors, states)


def random_model_measurement(dim: int, messages: int, rng: np.random.Generator,
                             extra_outcomes: int | None = None) -> ModelMeasurement:
    """Random isometry (first columns of a Haar unitary) with a random decision rule."""
    if extra_outcomes is None:
        extra_outcomes = int(rng.integers(0, dim + 1))
    q = dim + extra_outcomes
    v = haar_unitary(q, rng)[:, :dim]
    decision = tuple(int(j) for j in rng.integers(1, messages + 1, size=q))
    return ModelMeasurement(v, decision)


def random_povm(dim: int, outcomes: int, rng: np.random.Generator) -> Povm:
    """Random POVM from normalized Wishart factors."""
    factors = rng.standard_normal((outcomes, dim, dim)) \
        + 1j * rng.standard_normal((outcomes, dim, dim))
    gram = factors @ dagger(factors)
    root = _pinv_sqrt_raw(gram.sum(axis=0))
    elems = _complete_to_identity(hermitize(root @ gram @ root))
    return Povm(tuple(elems))


def random_spectrum(dim: int, messages: int, rng: np.random.Generator) -> WeightedSpectrum:
    """Consistent random weighted spectrum (per-message mass 1, total mass 1)."""
    priors = random_priors(messages, rng)
    entries: list[SpectrumEntry] = []
    for i in range(messages):
        support = int(rng.integers(1, dim + 1))
        lam = np.zeros(dim)
        lam[:support] = np.sort(rng.dirichlet(np.ones(support)))[::-1]
        for k in range(dim):
            entries.append(
                SpectrumEntry(i, k, float(lam[k]), float(priors[i]) * float(lam[k]))
            )
    return WeightedSpectrum(tuple(entries))
