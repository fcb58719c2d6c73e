"""Dense complex Hermitian linear algebra used by every other module.

All matrices here are tiny (dimension well below ~64), so the routines
favour validated, deterministic output over speed.  Eigenvalues are always
reported in descending order with a stable tie-break so that downstream
top-k selections are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True)
class Tolerances:
    """Central numerical tolerances.

    hermiticity      max entrywise deviation |A - A^dag| accepted as Hermitian
    validation       PSD / trace / distribution checks
    orthonormality   column inner products of isometries and eigenbases
    reconstruction   Frobenius residual of U diag(w) U^dag against the input
    support_cutoff   eigenvalues below this count as zero for rank decisions
    spectrum_cutoff  eigenvalues below this are dropped from certificates
    povm_rank_cutoff factor rows below this weight are dropped in dilations
    """

    hermiticity: float = 1e-12
    validation: float = 1e-9
    orthonormality: float = 1e-10
    reconstruction: float = 1e-9
    support_cutoff: float = 1e-9
    spectrum_cutoff: float = 1e-12
    povm_rank_cutoff: float = 1e-10


TOL = Tolerances()


def frozen_array(a, dtype=None) -> np.ndarray:
    """Copy ``a`` into a read-only ndarray (value types stay immutable)."""
    out = np.array(a, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose, batched over leading axes."""
    return np.conj(np.swapaxes(a, -1, -2))


def hermitize(a: np.ndarray) -> np.ndarray:
    """Average away anti-Hermitian rounding noise."""
    return 0.5 * (a + dagger(a))


def check_hermitian(h, tol: Tolerances = TOL) -> np.ndarray:
    """Return ``h`` as a complex square array, or raise ``ValidationError``.

    Accepts anything convertible to a 2-d array; rejects non-finite
    entries and Hermitian deviations above ``tol.hermiticity``.
    """
    a = np.asarray(h, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix contains non-finite entries")
    deviation = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if deviation > tol.hermiticity:
        raise ValidationError(
            f"matrix is not Hermitian: deviation {deviation:.3e} exceeds {tol.hermiticity:.0e}"
        )
    return a


@dataclass(frozen=True)
class EigDecomposition:
    """Eigensystem of a Hermitian matrix.

    ``eigenvalues`` are real and sorted descending; ``eigenvectors`` has the
    matching unit-norm eigenvector in column ``k``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T


def eigh(h, tol: Tolerances = TOL) -> EigDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Ties between equal eigenvalues keep the solver's discovery order
    (stable sort), so repeated calls are bitwise reproducible.
    """
    a = check_hermitian(h, tol)
    vals, vecs = np.linalg.eigh(hermitize(a))
    order = np.argsort(-vals, kind="stable")
    return EigDecomposition(
        eigenvalues=frozen_array(vals[order], float),
        eigenvectors=frozen_array(vecs[:, order], complex),
    )


def trace_norm(a, tol: Tolerances = TOL) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix.

    Computed from singular values, which coincide with |eigenvalues| for
    Hermitian input; this keeps the eigendecomposition route available as
    an independent cross-check.
    """
    m = check_hermitian(a, tol)
    if m.size == 0:
        return 0.0
    return float(np.linalg.svd(m, compute_uv=False).sum())


def sqrt_pinv(h, cutoff: float = 1e-12, tol: Tolerances = TOL) -> np.ndarray:
    """Inverse square root on the support of a PSD matrix.

    Returns sum over eigenvalues above ``cutoff`` of w^{-1/2} v v^dag.
    Eigenvalues below ``-tol.validation`` mean the input is not PSD and
    raise ``ValidationError``.
    """
    dec = eigh(h, tol)
    smallest = float(dec.eigenvalues[-1]) if dec.eigenvalues.size else 0.0
    if smallest < -tol.validation:
        raise ValidationError(
            f"matrix is not positive semidefinite: eigenvalue {smallest:.3e}"
        )
    weights = np.zeros_like(dec.eigenvalues)
    mask = dec.eigenvalues > cutoff
    weights[mask] = 1.0 / np.sqrt(dec.eigenvalues[mask])
    u = dec.eigenvectors
    return hermitize((u * weights) @ u.conj().T)
