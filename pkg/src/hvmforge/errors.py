"""Exception hierarchy shared by every hvmforge module."""


class HvmForgeError(Exception):
    """Base class for all library errors."""


class InvalidDistribution(HvmForgeError, ValueError):
    """Masses are negative, non-rational, or do not sum to one."""


class UndefinedOnSupport(HvmForgeError, KeyError):
    """A push-forward map has no value for some point of the alphabet."""

    def __str__(self):
        return Exception.__str__(self)


class EmptyInput(HvmForgeError, ValueError):
    """A coupling was requested for an empty family of distributions."""


class UnknownKey(HvmForgeError, KeyError):
    """Projection onto a key outside the joint distribution's index set."""

    def __str__(self):
        return Exception.__str__(self)


class SchemaError(HvmForgeError, ValueError):
    """Input document is structurally malformed."""


class ValidationError(HvmForgeError, ValueError):
    """Input is well formed but violates a semantic constraint."""


class OutOfRange(HvmForgeError, ValueError):
    """A numeric parameter lies outside its admissible interval."""


class ResponseUndefined(HvmForgeError, LookupError):
    """A response table has no entry for a hidden point in the support."""


class StructureMismatch(HvmForgeError, ValueError):
    """A model and a system disagree on properties or contexts."""


class SizeLimit(HvmForgeError, ValueError):
    """A problem instance exceeds a configured size cap."""

    def __init__(self, count, cap):
        super().__init__(f"{count} global assignments exceed the cap of {cap}")
        self.count = count
        self.cap = cap


class ShapeError(HvmForgeError, ValueError):
    """A system does not have the shape an operation requires."""
