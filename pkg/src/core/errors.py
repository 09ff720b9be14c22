# src/core/errors.py

"""Exceptions raised by the census library. Each names the violated invariant."""


class CensusError(ValueError):
    """Base class for every validation failure of the census library."""


class NonPositiveW(CensusError):
    """The leading coefficient w of the CM equation is not positive."""


class NotCoprime(CensusError):
    """The CM triple (u, v, w) has a common divisor."""


class NonNegativeDiscriminant(CensusError):
    """u^2 - 4vw >= 0, so tau would not be imaginary quadratic."""


class DimensionMismatch(CensusError):
    """Two objects live in different dimensions g."""


class ZeroVector(CensusError):
    """An operation defined only on nonzero vectors received the zero vector."""


class NotPrimitive(CensusError):
    """A vector required to be primitive has content > 1."""


class DependentVectors(CensusError):
    """mu is an integer multiple of lambda, so the quotient class is zero."""


class InvalidClass(CensusError):
    """An essential-coordinate tuple does not satisfy the class equations."""


class PreconditionViolated(CensusError):
    """An operation was called outside its stated precondition."""


class ZeroMap(CensusError):
    """An endomorphism vector that is identically zero."""


class VerificationFailed(Exception):
    """The oracle found a class the census missed, or a round trip failed."""
