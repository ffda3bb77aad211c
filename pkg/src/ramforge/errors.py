"""Exception hierarchy shared by all ramforge modules.

Each exception carries a short machine-readable ``reason`` used by the CLI
when it reports failures.
"""


class RamforgeError(Exception):
    reason = "error"


class InputError(RamforgeError, ValueError):
    reason = "input_error"


class DegenerateInput(InputError):
    reason = "degenerate_input"


class NotMaximal(InputError):
    reason = "not_maximal"


class NoEisensteinForm(RamforgeError):
    reason = "no_eisenstein_form"


class UnsupportedCoefficients(InputError):
    reason = "unsupported_coefficients"


class ResourceLimit(RamforgeError):
    reason = "resource_limit"


class PrecisionExhausted(RamforgeError, ArithmeticError):
    """A pivot or valuation came too close to the working precision."""

    reason = "precision_exhausted"


class VerificationFailure(RamforgeError):
    """A certified identity failed; always indicates a bug or a corrupted input."""

    reason = "verification_failure"


class ComplexError(VerificationFailure):
    reason = "not_a_complex"


class NoLift(VerificationFailure):
    reason = "no_lift"


class MismatchFailure(VerificationFailure):
    reason = "mismatch"


class ExactnessFailure(VerificationFailure):
    reason = "exactness_failure"

    def __init__(self, message, slot=None):
        super().__init__(message)
        self.slot = slot


class WitnessFailure(VerificationFailure):
    reason = "witness_failure"
