"""Exception hierarchy.

Every error carries enough context to be serialised by the CLI as JSON.
"""


class VamodError(Exception):
    """Base class for all library errors."""

    def details(self):
        return {}


class ParseError(VamodError, ValueError):
    pass


class SingularMatrix(VamodError, ZeroDivisionError):
    pass


class NotInvertible(VamodError, ZeroDivisionError):
    """A series whose semisimple part vanishes cannot be inverted.

    ``witness`` is the offending leading coefficient (or ``None`` when the
    series is zero to all known orders).
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

    def details(self):
        return {"witness": None if self.witness is None else str(self.witness)}


class TowerExhausted(VamodError):
    """Raised when a value would need a second square-root adjunction."""


class Inadmissible(VamodError):
    def __init__(self, case, alpha, reason=""):
        msg = f"case {case} with alpha={alpha} is not admissible"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)
        self.case = case
        self.alpha = alpha

    def details(self):
        return {"case": self.case, "alpha": None if self.alpha is None else str(self.alpha)}


class NotSeparable(VamodError):
    pass


class PrecisionExhausted(VamodError):
    def __init__(self, message, available=None, requested=None):
        super().__init__(message)
        self.available = available
        self.requested = requested

    def details(self):
        return {"available": str(self.available), "requested": str(self.requested)}


class PredicateMismatch(VamodError):
    """Valuation test and closed-form twist predicate disagree (a bug)."""
