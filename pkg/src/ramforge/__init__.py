"""Ramification invariants of monogenic rings of integers: Kaehler differentials,
the inverse different, local Eisenstein data, chain-level checks over truncated
DVRs, and THH / HH / Ram tables."""
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("ramforge")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

from .errors import (
    DegenerateInput,
    ExactnessFailure,
    InputError,
    MismatchFailure,
    NoEisensteinForm,
    NotMaximal,
    PrecisionExhausted,
    RamforgeError,
    ResourceLimit,
    UnsupportedCoefficients,
    VerificationFailure,
    WitnessFailure,
)

__all__ = [
    "DegenerateInput",
    "ExactnessFailure",
    "InputError",
    "MismatchFailure",
    "NoEisensteinForm",
    "NotMaximal",
    "PrecisionExhausted",
    "RamforgeError",
    "ResourceLimit",
    "UnsupportedCoefficients",
    "VerificationFailure",
    "WitnessFailure",
    "__version__",
]
