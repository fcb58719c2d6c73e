"""Closed-form upper bounds on one-shot discrimination success.

Four quantities are computed for an ensemble on a d-dimensional joint
support:

* ``classical_top_d``    sum of the d largest priors (the d-signal limit)
* ``dimension_ceiling``  d * max_i prior_i * largest eigenvalue of state_i
* ``spectral_bound``     sum of the d largest prior-weighted eigenvalues
* ``pure_bound``         the classical value, valid when all states are rank 1

All of them reduce to the same greedy linear program: maximize
``sum w_i s_i`` over ``0 <= s_i <= 1`` with ``sum s_i <= d``, whose optimum
picks the d largest weights.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ensemble import Ensemble, compress, joint_support_dimension, weighted_spectrum
from .errors import PreconditionError, ValidationError
from .linalg import TOL, Tolerances, eigh


@dataclass(frozen=True)
class BoundReport:
    """All bounds for one ensemble at its effective dimension.

    ``pure_bound`` is present only when every state is rank 1 within the
    validation cutoff; it then agrees with ``spectral_bound``.
    """

    classical_top_d: float
    dimension_ceiling: float
    spectral_bound: float
    pure_bound: float | None
    effective_dimension: int


def check_distribution(priors, tol: Tolerances = TOL) -> np.ndarray:
    p = np.asarray(priors, dtype=float)
    if p.ndim != 1 or p.size < 1:
        raise ValidationError("a distribution needs at least one entry")
    if not np.all(np.isfinite(p)):
        raise ValidationError("distribution contains non-finite entries")
    if float(p.min()) < 0.0:
        raise ValidationError(f"distribution has negative entry {float(p.min())!r}")
    total = float(p.sum())
    if abs(total - 1.0) > tol.validation:
        raise ValidationError(f"distribution sums to {total!r}, not 1")
    return p


def lp_optimum(weights, budget_d: int) -> tuple[float, tuple[int, ...]]:
    """Greedy optimum of the budget linear program.

    Maximizes ``sum w_i s_i`` subject to ``0 <= s_i <= 1`` and
    ``sum s_i <= budget_d``.  The constraint polytope has integral
    vertices, so the optimum sets ``s = 1`` on the ``budget_d`` largest
    weights; ties go to the lowest index.

    Returns ``(value, selection)`` with the selected indices ascending.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1:
        raise ValidationError("weights must be a flat sequence")
    if w.size and float(w.min()) < 0.0:
        raise ValidationError(f"negative weight {float(w.min())!r}")
    if budget_d < 0:
        raise PreconditionError("budget must be nonnegative")
    take = min(int(budget_d), w.size)
    if take == 0:
        return 0.0, ()
    order = np.argsort(-w, kind="stable")[:take]
    value = float(w[order].sum())
    return value, tuple(sorted(int(i) for i in order))


def classical_top_d(priors, d: int, tol: Tolerances = TOL) -> float:
    """Sum of the ``d`` largest priors (all of them when ``d >= m``)."""
    p = check_distribution(priors, tol)
    if d < 1:
        raise PreconditionError("d must be at least 1")
    return lp_optimum(p, d)[0]


def _effective(e: Ensemble, use_compressed: bool, tol: Tolerances) -> tuple[Ensemble, int]:
    if not use_compressed:
        return e, e.dimension
    reduced, _ = compress(e, tol)
    return reduced, reduced.dimension


def dimension_ceiling(e: Ensemble, compress_support: bool = True,
                      tol: Tolerances = TOL) -> float:
    """The coarse ceiling d * max_i prior_i * sup-norm of state_i."""
    _, d_eff = _effective(e, compress_support, tol)
    top = max(
        float(e.priors[i]) * float(eigh(e.states[i], tol).eigenvalues[0])
        for i in range(e.message_count)
    )
    return float(d_eff * top)


def spectral_bound(e: Ensemble, compress_support: bool = True,
                   tol: Tolerances = TOL) -> float:
    """Sum of the ``d`` largest prior-weighted eigenvalues."""
    reduced, d_eff = _effective(e, compress_support, tol)
    spectrum = weighted_spectrum(reduced, tol)
    return lp_optimum(spectrum.weighted_values(), d_eff)[0]


def rank_one_defect(e: Ensemble, tol: Tolerances = TOL) -> tuple[int, float] | None:
    """Index and second eigenvalue of the first state that is not rank 1."""
    for i in range(e.message_count):
        vals = eigh(e.states[i], tol).eigenvalues
        if e.dimension > 1 and float(vals[1]) > tol.validation:
            return i, float(vals[1])
    return None


def pure_bound(e: Ensemble, compress_support: bool = True,
               tol: Tolerances = TOL) -> float:
    """Classical top-d bound, applicable to rank-1 (pure) ensembles only."""
    defect = rank_one_defect(e, tol)
    if defect is not None:
        i, second = defect
        raise PreconditionError(
            f"message {i} is not pure: second eigenvalue {second:.3e}"
        )
    _, d_eff = _effective(e, compress_support, tol)
    return classical_top_d(e.priors, d_eff, tol)


def bound_report(e: Ensemble, compress_support: bool = True,
                 tol: Tolerances = TOL) -> BoundReport:
    """Compute every applicable bound at the effective dimension."""
    d_eff = joint_support_dimension(e, tol) if compress_support else e.dimension
    pure = None
    if rank_one_defect(e, tol) is None:
        pure = classical_top_d(e.priors, d_eff, tol)
    return BoundReport(
        classical_top_d=classical_top_d(e.priors, d_eff, tol),
        dimension_ceiling=dimension_ceiling(e, compress_support, tol),
        spectral_bound=spectral_bound(e, compress_support, tol),
        pure_bound=pure,
        effective_dimension=d_eff,
    )
