"""Exception and warning types shared across the package."""

__all__ = [
    "ConfigError",
    "PoleError",
    "TruncationError",
    "ConvergenceError",
    "DivergenceWarning",
    "InsufficientDecayWarning",
]


class ConfigError(Exception):
    """Raised for a malformed or inconsistent run configuration."""


class PoleError(ValueError):
    """Raised when the generating function is evaluated on (or numerically
    indistinguishable from) one of its poles."""


class TruncationError(RuntimeError):
    """Raised when a truncated-basis result is contaminated by the basis
    edge and cannot be trusted at the requested accuracy."""


class ConvergenceError(RuntimeError):
    """Raised when a basis-size sweep does not converge monotonically."""


class DivergenceWarning(UserWarning):
    """The generating function was evaluated outside the disk where its
    Taylor series converges; the closed form is returned regardless."""


class InsufficientDecayWarning(UserWarning):
    """A damped Fourier transform was truncated before the integrand had
    decayed enough for reliable line shapes."""
