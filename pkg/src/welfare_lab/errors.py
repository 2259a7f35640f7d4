"""Exception hierarchy shared by every welfare_lab module.

All domain errors derive from WelfareError so callers (and the CLI) can
catch one base class; each subclass names the specific contract that was
violated.
"""

from __future__ import annotations


class WelfareError(Exception):
    """Base class for all errors raised by welfare_lab."""


class ParseError(WelfareError, ValueError):
    """Malformed profile text or non-finite parsed value."""


class EmptyProfile(WelfareError, ValueError):
    """A profile needs at least one value."""


class InvalidScale(WelfareError, ValueError):
    """Scale factors must be finite and strictly positive."""


class InvalidReplication(WelfareError, ValueError):
    """Replication counts must be integers >= 1."""


class ZeroMean(WelfareError, ValueError):
    """The measure divides by the mean, which must be nonzero."""


class NegativeValue(WelfareError, ValueError):
    """The operation requires nonnegative values."""


class NonPositiveValue(WelfareError, ValueError):
    """The operation requires strictly positive values."""


class ZeroTotal(WelfareError, ValueError):
    """Cumulative shares are undefined when the total is zero."""


class InvalidParams(WelfareError, ValueError):
    """A parameter is outside its admissible range."""


class LengthMismatch(WelfareError, ValueError):
    """Coordinatewise comparison requires equal-length profiles."""


class DimensionMismatch(WelfareError, ValueError):
    """Lottery and utility vector must cover the same outcomes."""


class NonMonotoneBetas(WelfareError, ValueError):
    """Calibration weights must be strictly decreasing."""


class DegenerateIdentical(WelfareError, ValueError):
    """The two profiles coincide as multisets, nothing to separate."""


class InvalidShape(WelfareError, ValueError):
    """The construction's size parameters are inconsistent."""
