"""
Decoder Exceptions
Error types raised by the field, polynomial, code and decoder layers.
"""


class DecoderError(Exception):
    """Base class for every error raised by this package."""


class FieldDomainError(DecoderError, ValueError):
    """An operation was asked outside its domain (inverse of zero, gcd(0, 0), ...)."""


class InexactDivisionError(DecoderError, ArithmeticError):
    """divide_exact was called on polynomials that do not divide."""


class CodeConstructionError(DecoderError, ValueError):
    """Invalid code parameters: t too large, non-primitive polynomial, bad lengths."""


class InjectionError(DecoderError, ValueError):
    """An error-injection request cannot be satisfied."""


class ConfigError(DecoderError, ValueError):
    """A run configuration violates a module invariant."""


class InvariantViolation(DecoderError, AssertionError):
    """A degree or cost bound of the key basis or the decoding tree did not hold."""
