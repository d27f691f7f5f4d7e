"""Exception types raised by the library.

The CLI prints the class name of any of these on stderr and exits with 1.
"""


class EOrbitError(Exception):
    """Base class for domain errors."""


class InvalidDiagram(EOrbitError):
    pass


class RankMismatch(EOrbitError):
    pass


class UnsupportedBasis(EOrbitError):
    pass


class IndexOutOfRange(EOrbitError):
    pass


class GroupTooLarge(EOrbitError):
    pass


class NonConvergence(EOrbitError):
    pass


class NotStrictlyDominant(EOrbitError):
    pass


class NonIntegralMultiplicity(EOrbitError):
    """Internal consistency failure in a decomposition; never expected."""


class UnsupportedBranch(EOrbitError):
    pass


class UnsupportedSeries(EOrbitError):
    pass


class RankTooLarge(EOrbitError):
    pass


class GridTooLarge(EOrbitError):
    pass


class OrbitsNotSeparated(EOrbitError):
    def __init__(self, first, second):
        self.pair = (first, second)
        super().__init__(f"orbits of {_fmt(first)} and {_fmt(second)} are not separated")


class BandLimitExceeded(EOrbitError):
    pass


def _fmt(v):
    return "(" + ",".join(str(c) for c in v) + ")"
