"""Exception hierarchy. Every domain failure derives from CoreEntropyError."""
from __future__ import annotations


class CoreEntropyError(Exception):
    """Base class for domain and validation failures."""


class ValidationFailed(CoreEntropyError):
    """Input violates a structural definition; ``report`` lists every violation."""

    def __init__(self, what: str, report: list[dict]):
        self.what = what
        self.report = report
        lines = "; ".join(item.get("message", str(item)) for item in report)
        super().__init__(f"invalid {what}: {lines}")


class InvalidSystem(CoreEntropyError):
    pass


class NotSquare(CoreEntropyError):
    pass


class NotInvariant(CoreEntropyError):
    def __init__(self, edge, message: str | None = None):
        self.edge = edge
        super().__init__(message or f"edge {edge!r} escapes its part")


class EmptyEnumeration(CoreEntropyError):
    pass


class InconsistentAngles(CoreEntropyError):
    pass


class NumericFailure(CoreEntropyError):
    pass


class NotGeneric(CoreEntropyError):
    pass


class TooManyComponents(CoreEntropyError):
    pass


class InvalidGeneratedPortrait(CoreEntropyError):
    def __init__(self, n: int, cause: Exception):
        self.n = n
        self.cause = cause
        super().__init__(f"generated portrait at n={n} is invalid: {cause}")


class UnresolvedVerdict(CoreEntropyError):
    """Entropy brackets straddle the equality tolerance."""


class ModelError(CoreEntropyError):
    """A renormalization model lacks the data an operation needs."""
