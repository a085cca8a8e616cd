"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A numeric or enum parameter is outside its allowed range."""


class SequencingError(RuntimeError):
    """Samples or events arrived out of time order."""


class SpecError(ValueError):
    """A render specification cannot be satisfied (e.g. grid larger than frame)."""
