"""Exception types shared across the package."""


class LtePowerError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(LtePowerError, ValueError):
    """A profile, scenario, or argument violates its documented invariants."""


class DegenerateRateError(LtePowerError):
    """A service rate of zero would mean an infinite residence time."""


class ClassicRegimeError(LtePowerError):
    """The uplink does not fit inside the aggregated active window.

    Raised when ``d_dlul / r_dlul > 1 / a_ca``.  Such traffic is uplink
    dominated; evaluate it with :func:`ltepower.model.classic_uplink_total_power`
    instead of the downlink path.
    """


class OutOfCellError(LtePowerError):
    """Requested distance lies outside the cell radius."""


class UnderdeterminedFitError(LtePowerError):
    """Not enough usable points to identify the requested fit."""


class NoBreakevenError(LtePowerError):
    """No admissible boost factor offsets the extra carrier draw."""


class TraceParseError(LtePowerError):
    """A trace CSV file could not be parsed."""


class ConfigError(LtePowerError):
    """A run configuration document is malformed or inconsistent."""


def require(condition: bool, message: str) -> None:
    """Raise :class:`InvalidInputError` with ``message`` unless ``condition``."""
    if not condition:
        raise InvalidInputError(message)
