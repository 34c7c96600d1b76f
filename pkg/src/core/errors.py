"""
Error hierarchy

Every failure raised by the engines derives from CoxeterError. The three
families map onto the CLI exit codes.
"""

from typing import Optional

from config.constants import EXIT_NEGATIVE, EXIT_INPUT_ERROR, EXIT_CAP_EXHAUSTED


class CoxeterError(Exception):
    """Base class for all toolkit errors"""

    exit_code = EXIT_INPUT_ERROR

    @property
    def kind(self) -> str:
        return type(self).__name__


# Input errors (exit 2)

class InputError(CoxeterError):
    exit_code = EXIT_INPUT_ERROR


class InvalidMatrix(InputError):
    pass


class BadShape(InvalidMatrix):
    pass


class NotSymmetric(InvalidMatrix):
    pass


class BadDiagonal(InvalidMatrix):
    pass


class BadOffDiagonal(InvalidMatrix):
    pass


class PresentationSyntaxError(InputError):
    def __init__(self, message: str, line_number: Optional[int] = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class UnknownGenerator(InputError):
    pass


class MatrixMismatch(InputError):
    pass


class NotSpherical(InputError):
    pass


class NotInvolution(InputError):
    pass


class IsReflection(InputError):
    pass


class NotTwoDimensional(InputError):
    pass


class HypothesisViolated(InputError):
    pass


class NotHomomorphism(InputError):
    pass


# Cap exhaustion (exit 3)

class CapExhausted(CoxeterError):
    exit_code = EXIT_CAP_EXHAUSTED


class WordTooLong(CapExhausted):
    def __init__(self, length: int, cap: int):
        super().__init__(
            f"word of length {length} exceeds the reduction cap {cap}; "
            f"use an enumeration table to canonicalize it"
        )
        self.length = length
        self.cap = cap


class NotFoundInRadius(CapExhausted):
    pass


class DescentStuck(CapExhausted):
    pass


class BallEscape(CapExhausted):
    pass


# Verification failures (exit 1)

class VerificationFailure(CoxeterError):
    exit_code = EXIT_NEGATIVE


class TheoremViolation(VerificationFailure):
    def __init__(self, clause: str, detail: str = ""):
        message = f"clause {clause} failed"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)
        self.clause = clause


class AmbiguousMatch(VerificationFailure):
    pass
