"""Exception types shared across the package.

The CLI maps these onto stable exit codes: I/O errors are 1, malformed
JSON and schema violations are 2, invariant violations are 3, and
precondition violations (wrong message count, mismatched dimensions,
unsupported method) are 4.
"""


class SchemaError(ValueError):
    """An input file does not match the expected JSON schema."""


class ValidationError(ValueError):
    """A domain object violates one of its invariants."""


class PreconditionError(ValueError):
    """An operation was called on inputs outside its contract."""


class DimensionMismatchError(PreconditionError):
    """Operands live on spaces of different dimensions."""
