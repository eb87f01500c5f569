"""Exception hierarchy shared by the simulator modules."""


class SimulationError(Exception):
    """Base class for runtime errors raised by the model code."""


class InvalidDimensionError(SimulationError, ValueError):
    pass


class SingularMatrixError(SimulationError, ValueError):
    pass


class DivergentRegimeError(SimulationError, ValueError):
    """Raised when M <= K, where E{tr((HH^H)^-1)} does not exist."""


class InsufficientAntennasError(SimulationError, ValueError):
    pass


class DomainError(SimulationError, ValueError):
    pass


class GeometryError(SimulationError, ValueError):
    pass


class UnknownClusterError(SimulationError, KeyError):
    pass


class ContentNotFoundError(SimulationError, LookupError):
    pass


class ConfigError(Exception):
    """Base class for configuration problems (distinct exit code in the CLI)."""


class ConfigNotFoundError(ConfigError, FileNotFoundError):
    pass


class ConfigParseError(ConfigError):
    pass


class ConfigValidationError(ConfigError, ValueError):
    pass
