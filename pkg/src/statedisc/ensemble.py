"""Message ensembles: prior probabilities plus density matrices.

The on-disk representation is JSON with exact field names:

    {
      "dimension": <int>,
      "messages": [
        {"prior": <double>,
         "state": {"kind": "pure",  "vector": [[re, im], ...]}
                | {"kind": "mixed", "matrix": [[[re, im], ...row...], ...]}}
      ]
    }

Complex scalars are two-element ``[re, im]`` arrays and matrices are
row-major.  Pure states may be supplied as vectors and are converted to
rank-1 density matrices at load time; files are always written back in
matrix form, so serialize-parse-serialize is a fixpoint.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import SchemaError, ValidationError
from .linalg import TOL, Tolerances, dagger, eigh, frozen_array, hermitize


@dataclass(frozen=True)
class Ensemble:
    """A finite ensemble ``{(prior_i, state_i)}`` on a shared space.

    ``priors`` has shape ``(m,)`` and ``states`` shape ``(m, d, d)``.
    Shape problems raise immediately; the probabilistic invariants
    (priors summing to one, states PSD with unit trace) are checked by
    :func:`validate`, which loaders run automatically.
    """

    dimension: int
    priors: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        d = int(self.dimension)
        priors = frozen_array(self.priors, float)
        states = frozen_array(self.states, complex)
        if d < 1:
            raise ValidationError("dimension must be at least 1")
        if priors.ndim != 1 or priors.size < 1:
            raise ValidationError("at least one message is required")
        if states.shape != (priors.size, d, d):
            raise ValidationError(
                f"states must have shape {(priors.size, d, d)}, got {states.shape}"
            )
        object.__setattr__(self, "dimension", d)
        object.__setattr__(self, "priors", priors)
        object.__setattr__(self, "states", states)

    @property
    def message_count(self) -> int:
        return int(self.priors.size)


class SpectrumEntry(NamedTuple):
    """One weighted eigenvalue: ``weighted = prior(message) * lam``."""

    message: int  # 0-based message index
    eigen: int    # 0-based eigen index, descending eigenvalue order
    lam: float
    weighted: float


@dataclass(frozen=True)
class WeightedSpectrum:
    """The multiset of prior-weighted eigenvalues, tagged by message."""

    entries: tuple[SpectrumEntry, ...]

    def message_count(self) -> int:
        return 1 + max(entry.message for entry in self.entries)

    def priors(self) -> np.ndarray:
        """Per-message mass, recovered as the sum of weighted eigenvalues."""
        p = np.zeros(self.message_count())
        for entry in self.entries:
            p[entry.message] += entry.weighted
        return p

    def weighted_values(self) -> np.ndarray:
        return np.array([entry.weighted for entry in self.entries])

    def total_mass(self) -> float:
        return float(self.weighted_values().sum())

    def sorted_entries(self) -> tuple[SpectrumEntry, ...]:
        """Entries by descending weight; ties go to the lowest (message, eigen)."""
        return tuple(
            sorted(self.entries, key=lambda t: (-t.weighted, t.message, t.eigen))
        )


@dataclass(frozen=True)
class Violation:
    constraint: str
    message: str
    slack: float


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def raise_if_failed(self) -> None:
        if self.violations:
            raise ValidationError("; ".join(v.message for v in self.violations))


def validate(e: Ensemble, tol: Tolerances = TOL) -> ValidationReport:
    """Check every ensemble invariant, reporting each violation with its slack."""
    found: list[Violation] = []

    smallest_prior = float(e.priors.min())
    if smallest_prior < 0.0:
        found.append(
            Violation("prior_nonnegative",
                      f"prior {smallest_prior!r} is negative", -smallest_prior)
        )
    prior_slack = abs(float(e.priors.sum()) - 1.0)
    if prior_slack > tol.validation:
        found.append(
            Violation("prior_sum",
                      f"priors sum to {float(e.priors.sum())!r}", prior_slack)
        )

    for i in range(e.message_count):
        state = e.states[i]
        if not np.all(np.isfinite(state)):
            found.append(
                Violation("state_finite", f"state {i} has non-finite entries", np.inf)
            )
            continue
        herm_dev = float(np.max(np.abs(state - state.conj().T)))
        if herm_dev > tol.hermiticity:
            found.append(
                Violation("state_hermitian",
                          f"state {i} is not Hermitian (deviation {herm_dev:.3e})",
                          herm_dev)
            )
            continue
        smallest = float(np.linalg.eigvalsh(hermitize(state)).min())
        if smallest < -tol.validation:
            found.append(
                Violation("state_psd",
                          f"state {i} has negative eigenvalue {smallest:.3e}",
                          -smallest)
            )
        trace_slack = abs(float(np.trace(state).real) - 1.0)
        if trace_slack > tol.validation:
            found.append(
                Violation("state_trace",
                          f"state {i} has trace deviation {trace_slack:.3e}",
                          trace_slack)
            )

    return ValidationReport(tuple(found))


def joint_support_dimension(e: Ensemble, tol: Tolerances = TOL) -> int:
    """Rank of the summed states; eigenvalues below the cutoff count as zero."""
    total = hermitize(e.states.sum(axis=0))
    vals = np.linalg.eigvalsh(total)
    return int(np.count_nonzero(vals > tol.support_cutoff))


def compress(e: Ensemble, tol: Tolerances = TOL) -> tuple[Ensemble, np.ndarray]:
    """Restrict the ensemble to the joint support of its states.

    Returns ``(compressed, w)`` where ``w`` is a (dimension x new_dimension)
    isometry with ``w^dag w = I`` and the compressed states are
    ``w^dag state w``.  Full-support ensembles come back unchanged with the
    identity isometry, which makes the operation idempotent.
    """
    dec = eigh(e.states.sum(axis=0), tol)
    keep = dec.eigenvalues > tol.support_cutoff
    if bool(keep.all()):
        return e, frozen_array(np.eye(e.dimension), complex)
    w = dec.eigenvectors[:, keep]
    states = np.einsum("ka,ikl,lb->iab", w.conj(), e.states, w)
    states = hermitize(states)
    reduced = Ensemble(int(np.count_nonzero(keep)), e.priors, states)
    return reduced, frozen_array(w, complex)


def weighted_spectrum(e: Ensemble, tol: Tolerances = TOL) -> WeightedSpectrum:
    """Eigenvalues of every state, weighted by the priors.

    One entry per (message, eigen index), zero eigenvalues included;
    negative rounding noise is clamped at zero.
    """
    entries: list[SpectrumEntry] = []
    for i in range(e.message_count):
        vals = np.maximum(eigh(e.states[i], tol).eigenvalues, 0.0)
        prior = float(e.priors[i])
        for k in range(e.dimension):
            lam = float(vals[k])
            entries.append(SpectrumEntry(i, k, lam, prior * lam))
    return WeightedSpectrum(tuple(entries))


# --- JSON serialization -------------------------------------------------


def _require(cond: bool, where: str, what: str):
    if not cond:
        raise SchemaError(f"{where}: {what}")


def _as_number(x, where: str) -> float:
    _require(isinstance(x, (int, float)) and not isinstance(x, bool),
             where, "expected a number")
    return float(x)


def _as_complex(x, where: str) -> complex:
    _require(isinstance(x, list) and len(x) == 2, where,
             "complex entries must be [re, im] pairs")
    return complex(_as_number(x[0], where), _as_number(x[1], where))


def _as_vector(x, dim: int, where: str) -> np.ndarray:
    _require(isinstance(x, list), where, "expected an array")
    _require(len(x) == dim, where, f"expected {dim} entries, got {len(x)}")
    return np.array([_as_complex(z, f"{where}[{j}]") for j, z in enumerate(x)])


def _as_matrix(x, dim: int, where: str) -> np.ndarray:
    _require(isinstance(x, list), where, "expected an array of rows")
    _require(len(x) == dim, where, f"expected {dim} rows, got {len(x)}")
    return np.array([_as_vector(row, dim, f"{where}[{j}]") for j, row in enumerate(x)])


def _state_from_dict(doc, dim: int, where: str) -> np.ndarray:
    _require(isinstance(doc, dict), where, "state must be an object")
    kind = doc.get("kind")
    if kind == "pure":
        _require("vector" in doc, where, 'pure state needs a "vector"')
        v = _as_vector(doc["vector"], dim, f"{where}.vector")
        return np.outer(v, v.conj())
    if kind == "mixed":
        _require("matrix" in doc, where, 'mixed state needs a "matrix"')
        return _as_matrix(doc["matrix"], dim, f"{where}.matrix")
    raise SchemaError(f'{where}: state "kind" must be "pure" or "mixed"')


def ensemble_from_dict(doc) -> Ensemble:
    """Build an (unvalidated) ensemble from parsed JSON, or raise ``SchemaError``."""
    _require(isinstance(doc, dict), "$", "top level must be an object")
    dim = doc.get("dimension")
    _require(isinstance(dim, int) and not isinstance(dim, bool) and dim >= 1,
             "$.dimension", "must be a positive integer")
    messages = doc.get("messages")
    _require(isinstance(messages, list) and len(messages) >= 1,
             "$.messages", "must be a non-empty array")
    priors = []
    states = []
    for i, msg in enumerate(messages):
        where = f"$.messages[{i}]"
        _require(isinstance(msg, dict), where, "must be an object")
        _require("prior" in msg, where, 'missing "prior"')
        _require("state" in msg, where, 'missing "state"')
        priors.append(_as_number(msg["prior"], f"{where}.prior"))
        states.append(_state_from_dict(msg["state"], dim, f"{where}.state"))
    return Ensemble(dim, np.array(priors), np.array(states))


def ensemble_to_dict(e: Ensemble) -> dict:
    def pair(z: complex) -> list[float]:
        return [float(z.real), float(z.imag)]

    return {
        "dimension": e.dimension,
        "messages": [
            {
                "prior": float(e.priors[i]),
                "state": {
                    "kind": "mixed",
                    "matrix": [[pair(z) for z in row] for row in e.states[i]],
                },
            }
            for i in range(e.message_count)
        ],
    }


def read_ensemble(path, tol: Tolerances = TOL) -> Ensemble:
    """Load and fully validate an ensemble JSON file.

    Raises ``OSError`` for I/O problems, ``json.JSONDecodeError`` for
    malformed JSON, ``SchemaError`` for schema violations, and
    ``ValidationError`` when the parsed ensemble breaks an invariant.
    """
    with open(path, "r", encoding="utf-8") as f:
        doc = json.load(f)
    e = ensemble_from_dict(doc)
    validate(e, tol).raise_if_failed()
    return e


def write_ensemble(e: Ensemble, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(ensemble_to_dict(e), f, indent=2)
        f.write("\n")


def spectrum_from_dict(doc) -> WeightedSpectrum:
    """Parse a weighted-spectrum JSON object.

    Schema: ``{"entries": [{"message": <int>, "eigen": <int>,
    "lambda": <double>, "weighted_lambda": <double>}, ...]}`` with
    0-based indices.
    """
    _require(isinstance(doc, dict), "$", "top level must be an object")
    raw = doc.get("entries")
    _require(isinstance(raw, list) and len(raw) >= 1,
             "$.entries", "must be a non-empty array")
    entries = []
    for i, item in enumerate(raw):
        where = f"$.entries[{i}]"
        _require(isinstance(item, dict), where, "must be an object")
        for field in ("message", "eigen"):
            _require(isinstance(item.get(field), int)
                     and not isinstance(item.get(field), bool)
                     and item[field] >= 0,
                     f"{where}.{field}", "must be a nonnegative integer")
        entries.append(SpectrumEntry(
            item["message"],
            item["eigen"],
            _as_number(item.get("lambda"), f"{where}.lambda"),
            _as_number(item.get("weighted_lambda"), f"{where}.weighted_lambda"),
        ))
    return WeightedSpectrum(tuple(entries))


def spectrum_to_dict(spectrum: WeightedSpectrum) -> dict:
    return {
        "entries": [
            {
                "message": entry.message,
                "eigen": entry.eigen,
                "lambda": entry.lam,
                "weighted_lambda": entry.weighted,
            }
            for entry in spectrum.entries
        ]
    }


def read_spectrum(path) -> WeightedSpectrum:
    with open(path, "r", encoding="utf-8") as f:
        doc = json.load(f)
    return spectrum_from_dict(doc)


def write_spectrum(spectrum: WeightedSpectrum, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(spectrum_to_dict(spectrum), f, indent=2)
        f.write("\n")
