"""Explicit ensembles and measurements that meet the bounds with equality.

Two generators:

* :func:`pure_tight`  encodes the ``d`` most likely messages as standard
  basis states (everyone else rides along on the first basis vector) and
  measures in that basis, achieving the top-d prior sum.
* :func:`mixed_tight` realises a prescribed weighted spectrum so that its
  ``d`` largest weighted eigenvalues sit on orthonormal basis vectors,
  achieving the spectral bound.

Both return a :class:`TightInstance` whose claimed value equals the bound
and is achieved by the packaged measurement; the equalities are verified
numerically in the test suite rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import check_distribution
from .ensemble import Ensemble, WeightedSpectrum
from .errors import PreconditionError, ValidationError
from .linalg import TOL, Tolerances
from .measurement import ModelMeasurement


@dataclass(frozen=True)
class TightInstance:
    """An ensemble, a measurement achieving ``claimed_value``, and that value."""

    ensemble: Ensemble
    measurement: ModelMeasurement
    claimed_value: float


def pure_tight(priors, d: int, tol: Tolerances = TOL) -> TightInstance:
    """Basis-state encoding of the ``d`` most likely messages.

    Messages beyond the top ``d`` are encoded as the first basis vector
    (any vector in the span works; this keeps the output deterministic).
    The measurement is the standard basis with outcome ``k`` decided as
    the k-th most likely message.
    """
    p = check_distribution(priors, tol)
    if d < 1:
        raise PreconditionError("d must be at least 1")
    m = p.size
    order = np.argsort(-p, kind="stable")
    used = min(d, m)
    states = np.zeros((m, d, d), dtype=complex)
    for rank, msg in enumerate(order[:used]):
        states[msg, rank, rank] = 1.0
    for msg in order[used:]:
        states[msg, 0, 0] = 1.0
    decision = tuple(
        int(order[k]) + 1 if k < used else 1 for k in range(d)
    )
    return TightInstance(
        ensemble=Ensemble(d, p, states),
        measurement=ModelMeasurement(np.eye(d), decision),
        claimed_value=float(p[order[:used]].sum()),
    )


def _check_spectrum(spectrum: WeightedSpectrum, d: int, tol: Tolerances) -> None:
    if d < 1:
        raise PreconditionError("d must be at least 1")
    if not spectrum.entries:
        raise ValidationError("spectrum has no entries")
    m = spectrum.message_count()
    lam_sums = np.zeros(m)
    nonzero_counts = np.zeros(m, dtype=int)
    for entry in spectrum.entries:
        if entry.message < 0 or entry.eigen < 0:
            raise ValidationError("spectrum indices must be nonnegative")
        if entry.lam < 0.0 or entry.weighted < 0.0:
            raise ValidationError(
                f"negative spectral value at message {entry.message}, eigen {entry.eigen}"
            )
        lam_sums[entry.message] += entry.lam
        if entry.lam > tol.spectrum_cutoff:
            nonzero_counts[entry.message] += 1
    for i in range(m):
        if abs(lam_sums[i] - 1.0) > tol.validation:
            raise ValidationError(
                f"message {i} eigenvalues sum to {lam_sums[i]!r}, not 1"
            )
        if nonzero_counts[i] > d:
            raise ValidationError(
                f"message {i} has {nonzero_counts[i]} nonzero eigenvalues, more than d={d}"
            )
    mass = spectrum.total_mass()
    if abs(mass - 1.0) > tol.validation:
        raise ValidationError(f"total weighted mass is {mass!r}, not 1")
    priors = spectrum.priors()
    for entry in spectrum.entries:
        if abs(entry.weighted - priors[entry.message] * entry.lam) > tol.validation:
            raise ValidationError(
                f"weighted value at message {entry.message}, eigen {entry.eigen} "
                "is inconsistent with its prior"
            )


def _completion_vectors(used: list[np.ndarray], count: int, d: int) -> list[np.ndarray]:
    """First ``count`` orthonormal vectors completing ``used``.

    Gram-Schmidt over the standard basis in index order, so the result is
    the lexicographically first completion.
    """
    taken = [u.copy() for u in used]
    out: list[np.ndarray] = []
    for b in range(d):
        if len(out) == count:
            break
        candidate = np.zeros(d, dtype=complex)
        candidate[b] = 1.0
        for v in taken:
            candidate = candidate - np.vdot(v, candidate) * v
        norm = float(np.linalg.norm(candidate))
        if norm > 1e-6:
            candidate = candidate / norm
            taken.append(candidate)
            out.append(candidate)
    if len(out) != count:
        raise ValidationError("could not complete eigenvectors inside the span")
    return out


def mixed_tight(spectrum: WeightedSpectrum, d: int, tol: Tolerances = TOL) -> TightInstance:
    """Realise a weighted spectrum with its top-d components on basis vectors.

    The ``d`` largest weighted eigenvalues (ties to the lowest message,
    then eigen index) get standard basis vectors as eigenvectors of their
    owning messages; each message's remaining components are completed
    deterministically inside the d-dimensional space.  Measuring in the
    standard basis and deciding outcome ``k`` as the owner of the k-th
    largest weighted eigenvalue achieves the claimed value.
    """
    _check_spectrum(spectrum, d, tol)
    ranked = spectrum.sorted_entries()
    top = ranked[:min(d, len(ranked))]
    m = spectrum.message_count()
    priors = spectrum.priors()

    assigned: dict[tuple[int, int], int] = {}  # (message, eigen) -> basis index
    for k, entry in enumerate(top):
        if entry.weighted > 0.0:
            assigned[(entry.message, entry.eigen)] = k

    states = np.zeros((m, d, d), dtype=complex)
    for i in range(m):
        own = [e for e in spectrum.entries if e.message == i]
        used: list[np.ndarray] = []
        residual = []
        for entry in own:
            key = (entry.message, entry.eigen)
            if key in assigned:
                basis = np.zeros(d, dtype=complex)
                basis[assigned[key]] = 1.0
                used.append(basis)
                states[i] += entry.lam * np.outer(basis, basis.conj())
            elif entry.lam > tol.spectrum_cutoff:
                residual.append(entry)
        for entry, vec in zip(residual, _completion_vectors(used, len(residual), d)):
            states[i] += entry.lam * np.outer(vec, vec.conj())

    decision = []
    for k in range(d):
        if k < len(top) and top[k].weighted > 0.0:
            decision.append(top[k].message + 1)
        else:
            decision.append(1)
    claimed = float(np.array([entry.weighted for entry in top]).sum())
    return TightInstance(
        ensemble=Ensemble(d, priors, states),
        measurement=ModelMeasurement(np.eye(d), tuple(decision)),
        claimed_value=claimed,
    )
