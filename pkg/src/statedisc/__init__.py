"""Sharp one-shot upper bounds, certificates, and solvers for
minimum-error quantum state discrimination."""

from .bounds import (
    BoundReport,
    bound_report,
    classical_top_d,
    dimension_ceiling,
    lp_optimum,
    pure_bound,
    spectral_bound,
)
from .constructions import TightInstance, mixed_tight, pure_tight
from .ensemble import (
    Ensemble,
    SpectrumEntry,
    ValidationReport,
    WeightedSpectrum,
    compress,
    joint_support_dimension,
    read_ensemble,
    read_spectrum,
    validate,
    weighted_spectrum,
    write_ensemble,
    write_spectrum,
)
from .errors import (
    DimensionMismatchError,
    PreconditionError,
    SchemaError,
    ValidationError,
)
from .linalg import TOL, EigDecomposition, Tolerances, eigh, sqrt_pinv, trace_norm
from .measurement import (
    LpCertificate,
    ModelMeasurement,
    Povm,
    extract_certificate,
    model_from_povm,
    read_measurement,
    success_probability,
    success_probability_povm,
    write_measurement,
)
from .solvers import (
    SolverConfig,
    SolverResult,
    brute_force_qubit,
    helstrom,
    helstrom_measurement,
    optimize_povm,
    pgm,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "DimensionMismatchError",
    "EigDecomposition",
    "Ensemble",
    "LpCertificate",
    "ModelMeasurement",
    "Povm",
    "PreconditionError",
    "SchemaError",
    "SolverConfig",
    "SolverResult",
    "SpectrumEntry",
    "TOL",
    "TightInstance",
    "Tolerances",
    "ValidationError",
    "ValidationReport",
    "WeightedSpectrum",
    "bound_report",
    "brute_force_qubit",
    "classical_top_d",
    "compress",
    "dimension_ceiling",
    "eigh",
    "extract_certificate",
    "helstrom",
    "helstrom_measurement",
    "joint_support_dimension",
    "lp_optimum",
    "mixed_tight",
    "model_from_povm",
    "optimize_povm",
    "pgm",
    "pure_bound",
    "pure_tight",
    "read_ensemble",
    "read_measurement",
    "read_spectrum",
    "spectral_bound",
    "sqrt_pinv",
    "success_probability",
    "success_probability_povm",
    "trace_norm",
    "validate",
    "weighted_spectrum",
    "write_ensemble",
    "write_measurement",
    "write_spectrum",
]
