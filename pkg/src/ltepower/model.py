"""Four-state power model of an LTE terminal and its downlink/CA extension.

The terminal alternates between an idle state and three active states
(low, high, capped transmit power).  Arrivals leave idle at rate
``theta_i * lambda`` and state ``i`` drains back to idle at its service
rate ``mu_i``, which gives the closed-form stationary distribution

    p_1 = 1 / (1 + sum_i theta_i * lambda / mu_i),
    p_i = (theta_i * lambda / mu_i) * p_1.

For downlink-dominated traffic the service rates come from the downlink
transfer (``mu_i = R_dl_i / D_dl``) and the power of each active state
is a time-weighted mix of uplink, pure-downlink, and extra-idle phases.
Aggregating a secondary carrier multiplies the downlink rate by the boost
``a_ca`` (shortening the active window to ``1/a_ca`` of the state time)
and adds a constant ``delta_ca_mw`` while the window is active.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import (
    ClassicRegimeError,
    DegenerateRateError,
    require as _require,
)
from .profiles import ContextProfile, DeviceBandProfile, TrafficScenario

#: Indices of the active states in reports, for readability.
STATE_NAMES = ("idle", "low", "high", "max")


@dataclass(frozen=True)
class StationaryDistribution:
    """Long-term fraction of time spent in (idle, low, high, max)."""

    p: tuple[float, float, float, float]

    def __post_init__(self) -> None:
        _require(len(self.p) == 4, "p must have four entries")
        object.__setattr__(self, "p", tuple(float(v) for v in self.p))
        for v in self.p:
            _require(v >= 0.0, "state probabilities must be >= 0")
        _require(abs(sum(self.p) - 1.0) <= 1e-12, "p must sum to 1 within 1e-12")

    @property
    def idle(self) -> float:
        return self.p[0]

    @property
    def active(self) -> float:
        return self.p[1] + self.p[2] + self.p[3]


@dataclass(frozen=True)
class PowerReport:
    """Result of one model evaluation.

    ``mixed_power_mw`` lists the effective draw of all four states after
    time mixing, ``time_fractions`` the (uplink, downlink, extra idle)
    split of each active state, and ``baseline_total_power_mw`` the same
    scenario evaluated without aggregation (``a_ca = 1``, no carrier
    penalty).
    """

    total_power_mw: float
    mixed_power_mw: tuple[float, float, float, float]
    time_fractions: tuple[tuple[float, float, float], ...]
    stationary: StationaryDistribution
    baseline_total_power_mw: float
    savings_fraction: float

    def __post_init__(self) -> None:
        for triple in self.time_fractions:
            _require(
                abs(sum(triple) - 1.0) <= 1e-12,
                "each time fraction triple must sum to 1 within 1e-12",
            )
            for f in triple:
                _require(f >= 0.0, "time fractions must be >= 0")
        _require(self.savings_fraction <= 1.0, "savings_fraction cannot exceed 1")


def downlink_rates(
    scenario: TrafficScenario, ctx: ContextProfile
) -> tuple[float, float, float]:
    """Per-state downlink rates; the capped state retains only a fraction."""
    r = scenario.r_dl_bit_per_s
    return (r, r, r * ctx.max_state_rate_factor)


def uplink_rates(
    scenario: TrafficScenario, ctx: ContextProfile
) -> tuple[float, float, float]:
    """Per-state uplink rates; the channel scales both directions alike."""
    return tuple(scenario.r_dlul * r for r in downlink_rates(scenario, ctx))


def service_rates(
    scenario: TrafficScenario, ctx: ContextProfile
) -> tuple[float, float, float]:
    """Downlink service rates ``mu_i = R_dl_i / D_dl`` of the active states."""
    return tuple(r / scenario.d_dl_bit for r in downlink_rates(scenario, ctx))


def stationary_distribution(
    lambda_per_s: float,
    theta: tuple[float, float, float],
    mu: tuple[float, float, float],
) -> StationaryDistribution:
    """Closed-form stationary distribution of the four-state chain.

    Parameters
    ----------
    lambda_per_s : float
        Session arrival rate.
    theta : tuple of float
        Probabilities of entering (low, high, max); must sum to 1.
    mu : tuple of float
        Service rates of the three active states, each > 0.
    """
    _require(lambda_per_s > 0, "lambda_per_s must be positive")
    _require(len(theta) == 3 and len(mu) == 3, "theta and mu must have 3 entries")
    _require(abs(sum(theta) - 1.0) <= 1e-12, "theta must sum to 1")
    for m in mu:
        if m <= 0.0:
            raise DegenerateRateError(
                f"service rate {m:g} would give an infinite residence time"
            )
    loads = [t * lambda_per_s / m for t, m in zip(theta, mu)]
    p_idle = 1.0 / (1.0 + sum(loads))
    return StationaryDistribution(
        p=(p_idle, loads[0] * p_idle, loads[1] * p_idle, loads[2] * p_idle)
    )


def time_partition(
    scenario: TrafficScenario, mu_dl_per_s: float, r_ul_bit_per_s: float
) -> tuple[float, float, float]:
    """Split one active-state stay into uplink, downlink, and extra-idle parts.

    With state time ``t = 1/mu_dl``, the boosted transfer occupies
    ``t / a_ca`` of it and the uplink ``d_ul / r_ul``; what the boost saves
    is spent idling.  Returns the three fractions of ``t``.  The uplink
    fraction equals ``d_dlul / r_dlul`` for every state because the channel
    scales both link directions alike.

    Raises
    ------
    ClassicRegimeError
        If the uplink alone outlasts the aggregated active window.
    """
    _require(mu_dl_per_s > 0, "mu_dl_per_s must be positive")
    _require(r_ul_bit_per_s > 0, "r_ul_bit_per_s must be positive")
    t_state = 1.0 / mu_dl_per_s
    t_active = t_state / scenario.a_ca
    t_ul = scenario.d_ul_bit / r_ul_bit_per_s
    if t_ul > t_active:
        # Tolerate rounding noise exactly at the boundary case t_ul == t_active.
        if t_ul - t_active > 1e-12 * t_state:
            raise ClassicRegimeError(
                "uplink time exceeds the aggregated active window; "
                "use the classic uplink path"
            )
        t_ul = t_active
    f_ul = t_ul / t_state
    f_dl = max((t_active - t_ul) / t_state, 0.0)
    f_idle = (t_state - t_active) / t_state
    return (f_ul, f_dl, f_idle)


def mixed_state_power(
    device: DeviceBandProfile,
    partition: tuple[float, float, float],
    ca_enabled: bool,
) -> tuple[float, float, float]:
    """Effective draw of the three active states for one time partition.

    Pure downlink reception costs the same as the low state.  While a
    secondary carrier is configured its extra draw applies to the whole
    active window (uplink and downlink parts) but never to idle time.
    """
    f_ul, f_dl, f_idle = partition
    extra = device.delta_ca_mw if ca_enabled else 0.0
    p_dl = device.p_low_mw + extra
    return tuple(
        f_ul * (p_state + extra) + f_dl * p_dl + f_idle * device.p_idle_mw
        for p_state in (device.p_low_mw, device.p_high_mw, device.p_max_mw)
    )


def _evaluate(
    device: DeviceBandProfile, ctx: ContextProfile, scenario: TrafficScenario
) -> tuple[float, tuple, tuple, StationaryDistribution]:
    mu = service_rates(scenario, ctx)
    r_ul = uplink_rates(scenario, ctx)
    stationary = stationary_distribution(scenario.lambda_per_s, ctx.theta, mu)
    partitions = tuple(
        time_partition(scenario, m, r) for m, r in zip(mu, r_ul)
    )
    active = tuple(
        mixed_state_power(device, part, scenario.ca_enabled)[i]
        for i, part in enumerate(partitions)
    )
    mixed = (device.p_idle_mw,) + active
    total = sum(p * power for p, power in zip(stationary.p, mixed))
    return total, mixed, partitions, stationary


def total_power(
    device: DeviceBandProfile, ctx: ContextProfile, scenario: TrafficScenario
) -> PowerReport:
    """Long-term average draw of the scenario, plus its no-CA baseline.

    Deterministic: identical inputs give bit-identical outputs.  The
    baseline re-evaluates the same traffic with ``a_ca = 1`` and the
    carrier penalty off, so ``savings_fraction`` is 0 exactly when the
    scenario itself runs without aggregation.
    """
    total, mixed, partitions, stationary = _evaluate(device, ctx, scenario)
    if scenario.ca_enabled or scenario.a_ca != 1.0:
        baseline_scenario = replace(scenario, a_ca=1.0, ca_enabled=False)
        baseline, _, _, _ = _evaluate(device, ctx, baseline_scenario)
    else:
        baseline = total
    return PowerReport(
        total_power_mw=total,
        mixed_power_mw=mixed,
        time_fractions=partitions,
        stationary=stationary,
        baseline_total_power_mw=baseline,
        savings_fraction=(baseline - total) / baseline,
    )


def classic_uplink_total_power(
    device: DeviceBandProfile,
    ctx: ContextProfile,
    lambda_per_s: float,
    d_ul_bit: float,
    r_ul_bit_per_s: float,
) -> float:
    """Average draw for uplink-dominated traffic, without time mixing.

    Service rates follow the upload (``mu_i = R_ul_i / D_ul``) and each
    active state costs its raw state power.  This is the fallback for
    scenarios rejected by the downlink path with ClassicRegimeError.
    """
    _require(d_ul_bit > 0, "d_ul_bit must be positive")
    _require(r_ul_bit_per_s > 0, "r_ul_bit_per_s must be positive")
    rates = (
        r_ul_bit_per_s,
        r_ul_bit_per_s,
        r_ul_bit_per_s * ctx.max_state_rate_factor,
    )
    mu = tuple(r / d_ul_bit for r in rates)
    stationary = stationary_distribution(lambda_per_s, ctx.theta, mu)
    powers = (device.p_idle_mw, device.p_low_mw, device.p_high_mw, device.p_max_mw)
    return sum(p * power for p, power in zip(stationary.p, powers))
