"""Exception and warning types shared across the toolkit."""
from __future__ import annotations


class GrlabError(Exception):
    """Base class for all toolkit errors."""


class InvalidInput(GrlabError):
    """Malformed or out-of-domain input."""


class NotCofinite(InvalidInput):
    """Generator gcd != 1: the complement of the semigroup is infinite."""


class NotInRing(InvalidInput):
    """An exponent lies outside the value semigroup."""


class ContextMismatch(GrlabError):
    """Operands belong to different ring contexts."""


class NotContained(GrlabError):
    """A quotient length was requested for a non-contained pair."""


class ZeroDivisor(GrlabError):
    """Division or colon by the zero ideal/element."""


class PrecisionSuspect(GrlabError):
    """The working precision is too small for the requested computation.

    Carries the precision that would suffice so callers can rebuild the
    context and retry.
    """

    def __init__(self, needed: int, available: int, what: str = ""):
        self.needed = needed
        self.available = available
        self.what = what
        super().__init__(
            f"precision {available} too small for {what or 'operation'} "
            f"(needs {needed})"
        )


class PrecisionExhausted(GrlabError):
    """Doubling the precision twice did not make the computation viable."""


class NotAReduction(GrlabError):
    """A sampled element failed its reduction certificate."""


class BoundExceeded(GrlabError):
    """An iteration exceeded its provable bound (signals an internal bug)."""


class NoStabilization(GrlabError):
    """A closure iteration failed to stabilize within its bound."""


class ConsistencyFailure(GrlabError):
    """Two independent routes to the same quantity disagreed."""


class HypothesisNotMet(GrlabError):
    """A theorem check was requested on an input outside its hypotheses."""


class GenericityWarning(UserWarning):
    """Sampled 'general' values disagreed across seeds; minimum was used."""


class PrecisionSuspectWarning(UserWarning):
    """A valuation landed suspiciously close to the truncation order."""
