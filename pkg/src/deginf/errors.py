"""Exception hierarchy.

``exit_code`` is the process status the command line front end maps each
error onto: 2 for bad input, 3 for computation caps, 4 for internal
invariant violations.
"""

from __future__ import annotations


class DeginfError(Exception):
    exit_code = 2


class InputError(DeginfError, ValueError):
    exit_code = 2


class ZeroVector(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class DomainMismatch(InputError):
    pass


class ParseError(InputError):
    pass


class Singular(DeginfError, ArithmeticError):
    exit_code = 2

    def __init__(self, msg: str, det=0):
        super().__init__(msg)
        self.det = det


class CapExceeded(DeginfError):
    """The generated filtration did not reach ``f`` within ``D_max``.

    This is a statement about the cap, not a mathematical verdict.
    """

    exit_code = 3


class BoxExceeded(DeginfError):
    exit_code = 3


class AmbiguousWitness(InputError):
    pass


class NotNonNegative(InputError):
    pass


class DegeneratePart(InputError):
    pass


class DegeneratePolytope(InputError):
    pass


class OriginNotInterior(InputError):
    pass


class Unbounded(InputError):
    pass


class InvalidPolygon(InputError):
    pass


class InvalidFan(InputError):
    pass


class NotPositive(InputError):
    pass


class NotProjective(InputError):
    pass


class NotDominant(InputError):
    pass


class InvariantViolation(DeginfError, AssertionError):
    exit_code = 4
