"""Diamond-scheme four-wave-mixing frequency conversion (C++ core)."""

from ._core import (
    Config,
    Error,
    InvariantError,
    NumericalError,
    ParseError,
    ValidationError,
    __version__,
    observables,
    optimize,
    pulse,
    spectrum,
    validate,
)

__all__ = [
    "Config",
    "Error",
    "InvariantError",
    "NumericalError",
    "ParseError",
    "ValidationError",
    "__version__",
    "observables",
    "optimize",
    "pulse",
    "spectrum",
    "validate",
]
