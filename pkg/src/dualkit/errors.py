"""Exception hierarchy.

Every error raised on purpose by the library derives from ``DualkitError``
(itself a ``ValueError``), so callers and the CLI can separate domain errors
from programming errors with a single ``except``.
"""


class DualkitError(ValueError):
    """Base class for domain errors."""


# duality algebra
class DegenerateExponent(DualkitError):
    pass


class NonIntegerInversion(DualkitError):
    pass


class MapIncompatible(DualkitError):
    pass


# orbits
class WrongConicKind(DualkitError):
    pass


# semiclassical / susy
class NoBoundMotion(DualkitError):
    """No classically allowed interval bounded by two turning points.

    ``reason`` is ``"forbidden"`` when the energy lies below the effective
    potential everywhere and ``"unbound"`` when the allowed region extends to
    the end of the search window.
    """

    def __init__(self, message, reason="forbidden"):
        super().__init__(message)
        self.reason = reason


class QuadratureFailure(DualkitError):
    pass


class MaxDepthExceeded(QuadratureFailure):
    pass


class RootNotBracketed(DualkitError):
    pass


class UnsupportedSignPattern(DualkitError):
    pass


class InversionFailure(DualkitError):
    pass


class MissingF(DualkitError):
    pass


# special functions
class DomainError(DualkitError):
    pass


class PoleInBeta(DomainError):
    pass


# quantum
class OnSpectrum(DualkitError):
    pass


class NoSuchBoundState(DualkitError):
    pass


# oracle
class NoEigenvalueInBracket(DualkitError):
    pass


class GridTooCoarse(DualkitError):
    pass
