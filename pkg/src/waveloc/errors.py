"""Typed errors shared across the pipeline, with stable CLI exit codes."""


class WavelocError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(WavelocError):
    """Invalid or inconsistent configuration (exit code 1)."""


class DatasetIOError(WavelocError):
    """Missing or unreadable dataset/model artifact (exit code 2)."""


class StabilityViolation(WavelocError):
    """Solver field magnitude exceeded the overflow guard (exit code 3)."""


class DivergenceError(WavelocError):
    """Training loss blew up relative to its initial value (exit code 3)."""


class InvalidInit(WavelocError):
    """MCMC initial point has zero posterior density (exit code 3)."""


class IdentifiabilityError(WavelocError):
    """Receiver set cannot identify a source location (exit code 4)."""


EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_NUMERICAL = 3
EXIT_IDENTIFIABILITY = 4
