"""Exception types shared across the package.

Everything derives from ValueError so callers can treat "you asked for
something outside the model" uniformly; the CLI maps that family to one
exit code.
"""


class ModelDomainError(ValueError):
    """A model or predictor was evaluated where its formula is meaningless."""


class CensusParseError(ValueError):
    """A census file was rejected. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class CensusValidationError(ValueError):
    """Census metadata or internal invariants are inconsistent."""


class FitDomainError(ValueError):
    """Fit preconditions are violated (no overshoot, rank-deficient design)."""
