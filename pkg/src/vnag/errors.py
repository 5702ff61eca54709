"""Exception types shared across the library and the CLI."""


class NumericalError(RuntimeError):
    """Raised when an integration or root search produces unusable numbers
    (non-finite state, undetectable tangential zero, ...)."""


class ConfigError(ValueError):
    """Raised for invalid experiment configurations (CLI exit code 2)."""
