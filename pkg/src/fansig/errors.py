"""Exception hierarchy.

Every error raised for bad input derives from :class:`FanError`, which is a
``ValueError`` so callers that only care about "invalid argument" can catch
that instead.
"""

from __future__ import annotations


class FanError(ValueError):
    """Base class for all package errors about invalid input."""


# fan construction / lookup
class NonPrimitiveRay(FanError):
    pass


class DuplicateRay(FanError):
    pass


class NotSimplicial(FanError):
    pass


class OverlappingCones(FanError):
    pass


class DanglingRay(FanError):
    pass


class ConeNotInFan(FanError):
    pass


class NotAFacet(FanError):
    pass


class NonUnimodular(FanError):
    pass


class NotComplete(FanError):
    pass


class PointOutsideSupport(FanError):
    pass


class UnknownName(FanError):
    pass


class ImagePrimitivityViolation(RuntimeError):
    """A projected ray came out non-primitive.

    Cannot happen for unimodular input; seeing it means an internal bug.
    """


# subdivisions
class NotInteriorPoint(FanError):
    pass


class NonPrimitive(FanError):
    pass


# sheaves / K-theory
class IncompatibleRestrictions(FanError):
    pass


class UnsupportedSpec(FanError):
    pass


# cohomology
class NotCompleteSimplicialUnimodular(FanError):
    pass


class DegeneratePoint(FanError):
    """The evaluation point lies on a hyperplane ``u_{sigma,rho} = 0``."""


class DegreeMismatch(FanError):
    pass


class PreconditionViolated(FanError):
    pass


# characteristic classes
class OddIndex(FanError):
    pass


class OddRank(FanError):
    pass


class NotLocallyConvex(FanError):
    pass


class NoTransverseCone(FanError):
    pass


# cli
class ParseError(FanError):
    """Malformed fan file. ``where`` names the offending line or field."""

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
