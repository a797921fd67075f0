"""Exception types shared across the package."""

from __future__ import annotations


class PatternForgeError(Exception):
    """Base class for all package-specific errors."""


class OrderMismatchError(PatternForgeError):
    """Two cyclotomic values with different conductors were combined directly."""


class LiftError(PatternForgeError):
    """A value was lifted to a conductor that is not a multiple of its own."""


class DegenerateInputError(PatternForgeError):
    """A geometric predicate received coincident or otherwise invalid points."""


class DuplicatePointError(PatternForgeError):
    """A point set was constructed with a repeated point."""


class ResampleBudgetError(PatternForgeError):
    """A randomized construction exhausted its resampling budget."""


class BuildCheckError(PatternForgeError):
    """A deterministic construction failed one of its mandatory checks."""


class SizeCapError(PatternForgeError):
    """An iterated construction would exceed the configured point-count cap."""


class OracleGuardError(PatternForgeError):
    """The exhaustive counting oracle was asked for an infeasible enumeration."""


class AngleExcludedError(PatternForgeError):
    """An isosceles recipe was invoked at one of its excluded apex angles."""


class PreconditionError(PatternForgeError):
    """A checker's structural precondition does not hold for the given input."""


class DocumentError(PatternForgeError):
    """A serialized point-set document is malformed or inconsistent."""
