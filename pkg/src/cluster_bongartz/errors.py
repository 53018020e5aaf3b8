"""Exception hierarchy shared by the library and the command-line tool."""

from __future__ import annotations


class ClusterError(Exception):
    """Base class for all errors raised by :mod:`cluster_bongartz`."""


class InputError(ClusterError, ValueError):
    """Malformed user input: bad matrix shape, direction out of range, bad file."""


class NotSkewSymmetrizableError(InputError):
    pass


class NotUnimodularError(ClusterError, ArithmeticError):
    def __init__(self, determinant: int):
        super().__init__(f"matrix is not unimodular (determinant {determinant})")
        self.determinant = determinant


class LaurentDivisionError(ClusterError, ArithmeticError):
    """Exact division of Laurent polynomials left a nonzero remainder."""

    def __init__(self, dividend: str, divisor: str):
        super().__init__(f"({dividend}) is not divisible by ({divisor})")
        self.dividend = dividend
        self.divisor = divisor


class InvariantViolation(ClusterError):
    """A proven structural property failed to hold.

    This always indicates a bug (or corrupted input data); ``history`` holds the
    mutation word that reproduces the offending seed when one is known.
    """

    def __init__(self, message: str, history: tuple[int, ...] | None = None):
        if history is not None:
            message = f"{message} [history: {' '.join(map(str, history)) or '(root)'}]"
        super().__init__(message)
        self.history = history
