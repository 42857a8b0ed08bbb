"""
Exception Hierarchy
Errors raised by the knot torsion library and mapped to CLI exit codes
"""

from typing import Optional


class KnotTorsionError(Exception):
    """Base class for every error raised by this package"""


class InvalidInputError(KnotTorsionError, ValueError):
    """User-supplied data violates a precondition (exit code 2)"""


class KnotSyntaxError(InvalidInputError):
    """Knot expression could not be parsed"""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotLSpaceError(InvalidInputError):
    """Alexander polynomial is not of the alternating +-1 L-space shape"""


class InfeasibleTraceError(InvalidInputError):
    """A move sequence drives the component count below one"""

    def __init__(self, message: str, move_index: Optional[int] = None):
        if move_index is not None:
            message = f"move {move_index}: {message}"
        super().__init__(message)
        self.move_index = move_index


class NoNonorientableBandError(InvalidInputError):
    """Normal form requested for an orientable move sequence"""


class NotKnotComplexError(InvalidInputError):
    """Homology does not have exactly one free summand"""


class NonMonomialTorsionError(InvalidInputError):
    """Torsion invariant factor is not a power of U"""


class BoundUnavailableError(InvalidInputError):
    """A closed-form invariant needed for a bound is undefined"""


class MoveFileError(InvalidInputError):
    """Malformed line in a move file"""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class InvariantViolation(KnotTorsionError, AssertionError):
    """Internal consistency check failed (exit code 3)"""
