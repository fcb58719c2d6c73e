"""One-shot measurements and the budget certificates they induce.

A measurement is modelled as a ``q x d`` matrix ``V`` with orthonormal
columns followed by a standard-basis readout and a deterministic decision
rule ``g`` mapping outcomes to messages.  This is equivalent in power to
POVMs with classical post-processing; conversions both ways live here.

For an ensemble and a measurement, every (message, eigen-component) pair
carries a budget

    s_ik = sum over outcomes j decided as i of |<j| V u_ik>|^2,

where ``u_ik`` is the k-th eigenvector of state i.  These budgets satisfy
``0 <= s_ik <= 1`` and ``sum s_ik <= d``, and the weighted sum
``sum prior_i * eigenvalue_ik * s_ik`` reproduces the success probability
exactly.  The budget certificate is what caps the success probability by
the spectral bound.

Measurement JSON schema:

    {"kind": "model", "isometry": [[[re, im], ...], ...],
     "decision": [<1-based message ints>]}
    {"kind": "povm", "elements": [<matrix>, ...]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .ensemble import Ensemble
from .errors import DimensionMismatchError, PreconditionError, SchemaError, ValidationError
from .linalg import TOL, Tolerances, eigh, frozen_array, hermitize


@dataclass(frozen=True)
class ModelMeasurement:
    """Isometry-plus-decision-rule measurement.

    ``isometry`` is ``q x d`` with orthonormal columns; ``decision[j]`` is
    the 1-based message index guessed on outcome ``j``.
    """

    isometry: np.ndarray
    decision: tuple[int, ...]

    def __post_init__(self):
        v = frozen_array(self.isometry, complex)
        decision = tuple(int(j) for j in self.decision)
        if v.ndim != 2:
            raise ValidationError(f"isometry must be a matrix, got shape {v.shape}")
        q, d = v.shape
        if len(decision) != q:
            raise ValidationError(
                f"decision rule has {len(decision)} entries for {q} outcomes"
            )
        if decision and min(decision) < 1:
            raise ValidationError("decision entries are 1-based message indices")
        gram = v.conj().T @ v
        deviation = float(np.max(np.abs(gram - np.eye(d))))
        if deviation > 1e-9:
            raise ValidationError(
                f"columns are not orthonormal: deviation {deviation:.3e}"
            )
        object.__setattr__(self, "isometry", v)
        object.__setattr__(self, "decision", decision)

    @property
    def outcome_count(self) -> int:
        return self.isometry.shape[0]

    @property
    def dimension(self) -> int:
        return self.isometry.shape[1]


@dataclass(frozen=True)
class Povm:
    """Positive operators, one per message, summing to the identity."""

    elements: tuple[np.ndarray, ...]

    def __post_init__(self):
        elems = tuple(frozen_array(x, complex) for x in self.elements)
        if not elems:
            raise ValidationError("a POVM needs at least one element")
        d = elems[0].shape[0]
        for i, x in enumerate(elems):
            if x.ndim != 2 or x.shape != (d, d):
                raise ValidationError(f"element {i} has shape {x.shape}, expected {(d, d)}")
        object.__setattr__(self, "elements", elems)

    @property
    def dimension(self) -> int:
        return self.elements[0].shape[0]

    @property
    def outcome_count(self) -> int:
        return len(self.elements)


def check_povm(p: Povm, tol: Tolerances = TOL) -> None:
    """Raise ``ValidationError`` unless elements are PSD and sum to identity."""
    total = np.zeros((p.dimension, p.dimension), dtype=complex)
    for i, x in enumerate(p.elements):
        dev = float(np.max(np.abs(x - x.conj().T)))
        if dev > 1e-9:
            raise ValidationError(f"POVM element {i} is not Hermitian (deviation {dev:.3e})")
        smallest = float(np.linalg.eigvalsh(hermitize(x)).min())
        if smallest < -tol.validation:
            raise ValidationError(
                f"POVM element {i} has negative eigenvalue {smallest:.3e}"
            )
        total = total + x
    dev = float(np.max(np.abs(total - np.eye(p.dimension))))
    if dev > tol.validation:
        raise ValidationError(f"POVM elements do not sum to identity (deviation {dev:.3e})")


def _decision_indices(meas: ModelMeasurement, message_count: int) -> np.ndarray:
    g = np.asarray(meas.decision, dtype=int) - 1
    if g.size and int(g.max()) >= message_count:
        raise PreconditionError(
            f"decision rule targets message {int(g.max()) + 1} "
            f"but the ensemble has {message_count} messages"
        )
    return g


def success_probability(e: Ensemble, meas: ModelMeasurement,
                        tol: Tolerances = TOL) -> float:
    """Probability that the decided message equals the sent one.

    Evaluates ``sum_i prior_i sum_{j decided i} <j| V state_i V^dag |j>``.
    """
    if meas.dimension != e.dimension:
        raise DimensionMismatchError(
            f"measurement acts on dimension {meas.dimension}, ensemble on {e.dimension}"
        )
    g = _decision_indices(meas, e.message_count)
    v = meas.isometry
    # outcome_weight[i, j] = <j| V state_i V^dag |j>
    outcome_weight = np.einsum("jk,ikl,jl->ij", v, e.states, v.conj()).real
    picked = outcome_weight[g, np.arange(meas.outcome_count)]
    return float((e.priors[g] * picked).sum())


def success_probability_povm(e: Ensemble, p: Povm, tol: Tolerances = TOL) -> float:
    """``sum_i prior_i Tr(state_i element_i)`` for a POVM with one element per message."""
    if p.dimension != e.dimension:
        raise DimensionMismatchError(
            f"POVM acts on dimension {p.dimension}, ensemble on {e.dimension}"
        )
    if p.outcome_count != e.message_count:
        raise DimensionMismatchError(
            f"POVM has {p.outcome_count} elements for {e.message_count} messages"
        )
    elems = np.stack(p.elements)
    return float(np.einsum("i,ikl,ilk->", e.priors, e.states, elems).real)


def model_from_povm(p: Povm, tol: Tolerances = TOL) -> ModelMeasurement:
    """Dilate a POVM to an isometry model with one row per factor component.

    Element ``i`` contributes one row ``sqrt(w) u^dag`` per eigenpair with
    weight above the rank cutoff; all its rows decide message ``i``.  Both
    success evaluators agree on the result for any ensemble.
    """
    check_povm(p, tol)
    rows: list[np.ndarray] = []
    decision: list[int] = []
    for i, x in enumerate(p.elements):
        dec = eigh(x, tol)
        for lam, vec in zip(dec.eigenvalues, dec.eigenvectors.T):
            if lam > tol.povm_rank_cutoff:
                rows.append(np.sqrt(lam) * vec.conj())
                decision.append(i + 1)
    v = np.array(rows, dtype=complex)
    return ModelMeasurement(v, tuple(decision))


class BudgetEntry(NamedTuple):
    """Budget value for one (message, eigen-component) pair."""

    message: int  # 0-based
    eigen: int    # 0-based, descending eigenvalue order
    s_value: float


@dataclass(frozen=True)
class LpCertificate:
    """Budget variables extracted from a concrete measurement.

    ``total`` is the sum of all budgets (at most the dimension);
    ``reproduced_success`` is ``sum weighted_eigenvalue * s`` and matches
    the direct success probability.
    """

    budgets: tuple[BudgetEntry, ...]
    total: float
    reproduced_success: float


def extract_certificate(e: Ensemble, meas: ModelMeasurement,
                        tol: Tolerances = TOL) -> LpCertificate:
    """Compute every budget ``s_ik`` for an (ensemble, measurement) pair.

    Eigen-components with eigenvalue at or below the spectrum cutoff get
    ``s = 0``; they contribute nothing to the success probability and the
    defining ratio would be ill-conditioned there.
    """
    if meas.dimension != e.dimension:
        raise DimensionMismatchError(
            f"measurement acts on dimension {meas.dimension}, ensemble on {e.dimension}"
        )
    g = _decision_indices(meas, e.message_count)
    v = meas.isometry
    budgets: list[BudgetEntry] = []
    total = 0.0
    reproduced = 0.0
    for i in range(e.message_count):
        dec = eigh(e.states[i], tol)
        amplitudes = np.abs(v @ dec.eigenvectors) ** 2  # (q, d): |<j| V u_ik>|^2
        mine = amplitudes[g == i, :].sum(axis=0)
        prior = float(e.priors[i])
        for k in range(e.dimension):
            lam = float(dec.eigenvalues[k])
            if lam > tol.spectrum_cutoff:
                s = float(mine[k])
                reproduced += prior * lam * s
            else:
                s = 0.0
            budgets.append(BudgetEntry(i, k, s))
            total += s
    return LpCertificate(tuple(budgets), float(total), float(reproduced))


# --- JSON serialization -------------------------------------------------

Measurement = Union[ModelMeasurement, Povm]


def _matrix_from_json(x, where: str) -> np.ndarray:
    if not isinstance(x, list) or not x:
        raise SchemaError(f"{where}: expected a non-empty array of rows")
    rows = []
    width = None
    for j, row in enumerate(x):
        if not isinstance(row, list) or not row:
            raise SchemaError(f"{where}[{j}]: expected a non-empty row")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise SchemaError(f"{where}[{j}]: ragged rows")
        entries = []
        for c, z in enumerate(row):
            if not isinstance(z, list) or len(z) != 2:
                raise SchemaError(f"{where}[{j}][{c}]: complex entries must be [re, im]")
            entries.append(complex(float(z[0]), float(z[1])))
        rows.append(entries)
    return np.array(rows, dtype=complex)


def measurement_from_dict(doc) -> Measurement:
    if not isinstance(doc, dict):
        raise SchemaError("$: top level must be an object")
    kind = doc.get("kind")
    if kind == "model":
        if "isometry" not in doc or "decision" not in doc:
            raise SchemaError('$: model measurement needs "isometry" and "decision"')
        v = _matrix_from_json(doc["isometry"], "$.isometry")
        decision = doc["decision"]
        if not isinstance(decision, list) or not all(
            isinstance(j, int) and not isinstance(j, bool) for j in decision
        ):
            raise SchemaError("$.decision: expected an array of integers")
        return ModelMeasurement(v, tuple(decision))
    if kind == "povm":
        elems = doc.get("elements")
        if not isinstance(elems, list) or not elems:
            raise SchemaError('$.elements: expected a non-empty array of matrices')
        return Povm(tuple(
            _matrix_from_json(x, f"$.elements[{i}]") for i, x in enumerate(elems)
        ))
    raise SchemaError('$: measurement "kind" must be "model" or "povm"')


def measurement_to_dict(meas: Measurement) -> dict:
    def pair(z: complex) -> list[float]:
        return [float(z.real), float(z.imag)]

    def mat(x: np.ndarray) -> list:
        return [[pair(z) for z in row] for row in x]

    if isinstance(meas, ModelMeasurement):
        return {
            "kind": "model",
            "isometry": mat(meas.isometry),
            "decision": list(meas.decision),
        }
    return {"kind": "povm", "elements": [mat(x) for x in meas.elements]}


def read_measurement(path, tol: Tolerances = TOL) -> Measurement:
    with open(path, "r", encoding="utf-8") as f:
        doc = json.load(f)
    meas = measurement_from_dict(doc)
    if isinstance(meas, Povm):
        check_povm(meas, tol)
    return meas


def write_measurement(meas: Measurement, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(measurement_to_dict(meas), f, indent=2)
        f.write("\n")
