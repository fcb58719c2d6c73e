"""Numerical estimators of the true discrimination optimum.

None of the closed-form bounds require these; they exist to check that
the bounds cap reality and to detect tightness:

* :func:`helstrom`          exact optimum for two messages (trace norm)
* :func:`pgm`               pretty-good (square-root) measurement
* :func:`optimize_povm`     fixed-point ascent over POVMs; a heuristic
                            whose error is bracketed by the independent
                            oracles above and below, not a certified solver
* :func:`brute_force_qubit` projective grid search on the Bloch sphere
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ensemble import Ensemble, compress
from .errors import PreconditionError
from .linalg import TOL, Tolerances, dagger, eigh, hermitize, sqrt_pinv, trace_norm
from .measurement import Povm


@dataclass(frozen=True)
class SolverConfig:
    """Fixed-point solver knobs.

    ``tol`` is the per-iteration success gain below which a run is
    declared converged; ``restarts`` counts initializations (the first is
    always the pretty-good measurement, the rest are seeded random POVMs).
    """

    tol: float = 1e-10
    max_iters: int = 20000
    seed: int = 0
    restarts: int = 3


@dataclass(frozen=True)
class SolverResult:
    """Outcome of a solve: best success found and the POVM achieving it.

    ``residual`` is the final per-iteration success gain of the winning
    restart; ``converged`` means that gain fell below the configured
    tolerance before the iteration cap.
    """

    success: float
    measurement: Povm
    iterations: int
    converged: bool
    residual: float


def helstrom(e: Ensemble, tol: Tolerances = TOL) -> float:
    """Exact binary optimum (1 + trace_norm(p1 rho1 - p2 rho2)) / 2."""
    if e.message_count != 2:
        raise PreconditionError(
            f"the binary formula needs exactly 2 messages, got {e.message_count}"
        )
    delta = e.priors[0] * e.states[0] - e.priors[1] * e.states[1]
    return float(0.5 * (1.0 + trace_norm(delta, tol)))


def helstrom_measurement(e: Ensemble, tol: Tolerances = TOL) -> Povm:
    """The optimal binary POVM: project onto the positive part of the difference."""
    if e.message_count != 2:
        raise PreconditionError(
            f"the binary formula needs exactly 2 messages, got {e.message_count}"
        )
    delta = hermitize(e.priors[0] * e.states[0] - e.priors[1] * e.states[1])
    dec = eigh(delta, tol)
    positive = dec.eigenvectors[:, dec.eigenvalues > 0.0]
    first = positive @ positive.conj().T
    return Povm((hermitize(first), hermitize(np.eye(e.dimension) - first)))


def _complete_to_identity(elems: np.ndarray) -> np.ndarray:
    """Add the leftover kernel projector to element 0."""
    d = elems.shape[-1]
    leftover = hermitize(np.eye(d) - elems.sum(axis=0))
    out = elems.copy()
    out[0] = out[0] + leftover
    return out


def pgm(e: Ensemble, tol: Tolerances = TOL) -> Povm:
    """Pretty-good measurement ``rho^{-1/2} (p_i rho_i) rho^{-1/2}``.

    The average state may be singular; the missing kernel projector is
    folded into element 0 so the elements sum to the identity.
    """
    rho = hermitize(np.einsum("i,ikl->kl", e.priors, e.states))
    root = sqrt_pinv(rho, tol=tol)
    weighted = e.priors[:, None, None] * e.states
    elems = hermitize(root @ weighted @ root)
    elems = _complete_to_identity(elems)
    return Povm(tuple(elems))


def _clip_psd(elems: np.ndarray) -> np.ndarray:
    """Zero out negative eigenvalues, batched over the leading axis."""
    vals, vecs = np.linalg.eigh(elems)
    if float(vals.min()) >= 0.0:
        return elems
    vals = np.maximum(vals, 0.0)
    return np.einsum("...al,...l,...bl->...ab", vecs, vals, vecs.conj())


def _pinv_sqrt_raw(g: np.ndarray, cutoff: float = 1e-12) -> np.ndarray:
    vals, vecs = np.linalg.eigh(hermitize(g))
    weights = np.zeros_like(vals)
    mask = vals > cutoff
    weights[mask] = 1.0 / np.sqrt(vals[mask])
    return (vecs * weights) @ vecs.conj().T


def _success_of(weighted: np.ndarray, elems: np.ndarray) -> float:
    return float(np.einsum("ikl,ilk->", weighted, elems).real)


def _ascend(weighted: np.ndarray, elems: np.ndarray, gain_tol: float,
            max_iters: int) -> tuple[float, np.ndarray, int, bool, float]:
    """Run the fixed-point iteration from one starting POVM.

    Update: with ``M_i = W_i E_i W_i`` and ``G = sum_j M_j``, set
    ``E_i <- G^{-1/2} M_i G^{-1/2}`` (then re-complete the kernel).  Every
    iterate stays a valid POVM, and the tracked success never decreases:
    a (rounding-level) decrease rejects the step and stops.
    """
    success = _success_of(weighted, elems)
    iterations = 0
    converged = False
    residual = float("inf")
    while iterations < max_iters:
        mid = hermitize(weighted @ elems @ weighted)
        mid = _clip_psd(mid)
        root = _pinv_sqrt_raw(mid.sum(axis=0))
        new = hermitize(root @ mid @ root)
        new = _clip_psd(new)
        new = _complete_to_identity(new)
        new_success = _success_of(weighted, new)
        gain = new_success - success
        iterations += 1
        if gain < 0.0:
            residual = -gain
            converged = residual <= gain_tol
            break
        elems = new
        success = new_success
        if gain < gain_tol:
            residual = gain
            converged = True
            break
        residual = gain
    return success, elems, iterations, converged, residual


def _random_povm_array(dim: int, outcomes: int, rng: np.random.Generator) -> np.ndarray:
    factors = rng.standard_normal((outcomes, dim, dim)) \
        + 1j * rng.standard_normal((outcomes, dim, dim))
    gram = factors @ dagger(factors)
    root = _pinv_sqrt_raw(gram.sum(axis=0))
    return _complete_to_identity(hermitize(root @ gram @ root))


def optimize_povm(e: Ensemble, cfg: SolverConfig = SolverConfig(),
                  tol: Tolerances = TOL) -> SolverResult:
    """Fixed-point ascent over POVMs, best of several restarts.

    Restart 0 starts at the pretty-good measurement (so the result is
    never below it); later restarts use random POVMs seeded from
    ``cfg.seed``.  This is a heuristic: it reports the best stationary
    value found, which independent oracles show is near-optimal at desk
    scale, but no global optimality certificate is produced.
    """
    if cfg.max_iters < 0 or cfg.tol < 0:
        raise PreconditionError("solver tolerance and iteration cap must be nonnegative")
    weighted = e.priors[:, None, None] * e.states
    best: tuple[float, np.ndarray, int, bool, float] | None = None
    for restart in range(max(1, cfg.restarts)):
        if restart == 0:
            elems = np.stack(pgm(e, tol).elements)
        else:
            rng = np.random.default_rng([cfg.seed, restart])
            elems = _random_povm_array(e.dimension, e.message_count, rng)
        run = _ascend(weighted, elems, cfg.tol, cfg.max_iters)
        if best is None or run[0] > best[0]:
            best = run
    success, elems, iterations, converged, residual = best
    return SolverResult(
        success=success,
        measurement=Povm(tuple(elems)),
        iterations=iterations,
        converged=converged,
        residual=residual,
    )


def brute_force_qubit(e: Ensemble, grid: int = 400, tol: Tolerances = TOL) -> float:
    """Best projective qubit measurement on a Bloch-angle grid.

    Scans ``grid x grid`` polar/azimuthal angles and, for each projective
    pair, picks the best assignment of the two outcomes to messages.  The
    result lower-bounds the projective optimum to O(1/grid^2).
    """
    if grid < 2:
        raise PreconditionError("grid must be at least 2")
    reduced, _ = compress(e, tol)
    if reduced.dimension > 2:
        raise PreconditionError(
            f"grid search needs support dimension <= 2, got {reduced.dimension}"
        )
    if reduced.message_count > 4:
        raise PreconditionError(
            f"grid search supports at most 4 messages, got {reduced.message_count}"
        )
    if reduced.dimension == 1:
        return float(reduced.priors.max())
    theta = np.linspace(0.0, np.pi, grid)
    phi = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    kets = np.stack(
        [np.cos(tt / 2.0).ravel().astype(complex),
         (np.sin(tt / 2.0) * np.exp(1j * pp)).ravel()],
        axis=-1,
    )
    weighted = reduced.priors[:, None, None] * reduced.states
    # hit[i, n] = <psi_n| W_i |psi_n>: success weight of outcome "psi" for message i
    hit = np.einsum("nk,ikl,nl->in", kets.conj(), weighted, kets).real
    complement = reduced.priors[:, None] - hit
    return float((hit.max(axis=0) + complement.max(axis=0)).max())
