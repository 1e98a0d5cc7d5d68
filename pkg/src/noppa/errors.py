"""Exception types shared across the package."""


class NoppaError(ValueError):
    """Base class for all engine errors."""


class FormatError(NoppaError):
    """A data file violates its documented format."""


class EmptySentenceError(NoppaError):
    """Sentence has no embeddable tokens left after filtering."""


class InfeasibleConfigError(NoppaError):
    """Configuration cannot be satisfied by the given data (e.g. k > rank)."""
