"""Exception hierarchy shared by the library and the command line front end."""


class SBQError(Exception):
    """Base class for all errors raised by :mod:`sbq`."""


class RootSystemError(SBQError, ValueError):
    """Invalid root configuration or chamber violation."""


class CapabilityError(SBQError):
    """The spectral model does not provide the requested capability."""

    def __init__(self, model_name, capability):
        self.model_name = model_name
        self.capability = capability
        super().__init__(
            f"model {model_name!r} does not support {capability!r}")


class RadiusError(SBQError, ValueError):
    """Complexified evaluation requested outside the analyticity radius."""


class NonConvergenceError(SBQError):
    """A quadrature or series did not reach the requested tolerance.

    Attributes
    ----------
    error_estimate : float
        Best error estimate achieved before giving up.
    """

    def __init__(self, message, error_estimate=float("nan")):
        self.error_estimate = error_estimate
        super().__init__(f"{message} (achieved error estimate {error_estimate:.3e})")


class ConfigError(SBQError, ValueError):
    """Malformed experiment configuration."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", column {column}"
            loc += ": "
        super().__init__(loc + message)
