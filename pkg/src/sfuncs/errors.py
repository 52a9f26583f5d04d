"""Exception types shared across the package.

Every error raised on bad input derives from SfuncError so callers (and the
command line front end) can catch one base class.
"""
from __future__ import annotations


class SfuncError(Exception):
    """Base class for all input and consistency errors in this package."""


# number field construction and arithmetic

class NotMonic(SfuncError):
    """Defining polynomial is not monic."""


class NotSquarefree(SfuncError):
    """Defining polynomial has a repeated factor (zero discriminant)."""


class DegreeZero(SfuncError):
    """Defining polynomial is constant."""


class FieldMismatch(SfuncError):
    """Operands belong to different fields."""


class Zero(SfuncError):
    """Inversion of the zero element."""


class ZeroDivisor(SfuncError):
    """Inversion of a nonzero element that shares a factor with the modulus."""


# residue rings and Frobenius lifts

class NotPrime(SfuncError):
    """Residue characteristic is not prime."""


class BadPrime(SfuncError):
    """Prime divides the field discriminant, so the residue ring is unusable."""


class NotPIntegral(SfuncError):
    """Element has the residue characteristic in a denominator."""


class RingMismatch(SfuncError):
    """Operands belong to different residue rings."""


class LiftFailed(SfuncError):
    """Newton iteration for the Frobenius lift met a non-invertible derivative."""


# series operations

class NonzeroConstant(SfuncError):
    """Coefficientwise integration needs a vanishing constant term."""


class BadConstantTerm(SfuncError):
    """exp needs constant term 0; log needs constant term 1."""


class InnerHasConstant(SfuncError):
    """Composition inner series must have zero constant term."""


class NonUnitLinearTerm(SfuncError):
    """Reversion needs zero constant term and an invertible linear coefficient."""


class NonUnitConstant(SfuncError):
    """Negative powers need constant term 1."""


class BadLinearPart(SfuncError):
    """Coordinate map component i must be (+-1) * z_i * (unit series)."""


class DimensionMismatch(SfuncError):
    """Variable counts of multivariate operands disagree."""


class NotSymmetric(SfuncError):
    """Framing matrix must be symmetric."""


# s-function checks and generators

class NotIntegral(SfuncError):
    """Seed element must have an empty denominator support."""


class ConstantTermNonzero(SfuncError):
    """s-function data must start at index 1 (no constant term)."""


# catalog

class BadConductor(SfuncError):
    """Cyclotomic conductor or coefficient support is out of range."""


class BadConstant(SfuncError):
    """Polynomial seed for a logarithm must have constant coefficient 1."""


class DescentFailed(SfuncError):
    """Coefficients do not lie in the requested subfield."""


class SmallPrime(SfuncError):
    """Binomial congruence check requires a prime larger than 3."""
