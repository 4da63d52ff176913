"""Exception types shared across the package."""


class RswpError(Exception):
    """Base class for all package errors."""


class SceneError(RswpError):
    """Scene construction or validation failure.

    Carries the offending field name so callers can surface actionable
    messages.
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class ResolutionError(RswpError):
    """Grid spacing too coarse for the requested geometry."""


class BlowUpError(RswpError):
    """Numerical instability: field magnitude exceeded the abort threshold."""

    def __init__(self, step: int, value: float, threshold: float):
        self.step = step
        self.value = value
        self.threshold = threshold
        super().__init__(
            f"field blow-up at step {step}: max |field| = {value:.3e} "
            f"exceeds threshold {threshold:.3e}"
        )


class ResourceRefusal(RswpError):
    """Requested run exceeds the configured resource budget."""
