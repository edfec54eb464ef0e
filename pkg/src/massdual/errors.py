"""Exception types raised across the package."""


class MassdualError(Exception):
    """Base class for errors raised by massdual."""


class ZeroDenominatorExponent(MassdualError):
    """A denominator of the form q^(c*r) - 1 was requested with c = 0."""


class NonRealInput(MassdualError):
    """Term coefficients do not collapse to rationals on every residue class."""


class PoleAtEvaluationPoint(MassdualError):
    """The denominator vanishes at the requested evaluation point."""


class DivergentSeries(MassdualError):
    """An infinite geometric sum with nonnegative growth exponent."""


class GroupTooLarge(MassdualError):
    """Group closure exceeded the configured size bound."""


class InconsistentRepresentation(MassdualError):
    """Generator matrices do not extend to a homomorphism on the group."""


class NotTame(MassdualError):
    """Residue characteristic divides the group order."""


class InvalidParams(MassdualError):
    """Bad parameters for a built-in ramification profile."""


class MalformedStrata(MassdualError):
    """A stratum references a divisor index outside the declared range."""


class InfiniteInput(MassdualError):
    """An operation that needs finite counts received Infinite."""


class InfiniteMass(MassdualError):
    """A duality report was requested for an infinite mass."""
