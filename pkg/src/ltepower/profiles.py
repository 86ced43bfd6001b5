"""Domain records: device power profiles, channel contexts, traffic scenarios.

All powers are carried in mW as plain double-precision values, transmit
powers in dBm, data sizes in bit, and rates in bit/s.  Nothing converts
units implicitly; configuration keys spell the unit out instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ClassicRegimeError, require as _require

#: Regulatory transmit power cap of the terminal, dBm.
TX_POWER_CAP_DBM = 23.0

#: Lower edge of the transmit power range the device fits cover, dBm.
TX_POWER_FLOOR_DBM = -10.0


@dataclass(frozen=True)
class DeviceBandProfile:
    """Per-band power figures of one terminal.

    ``p_idle_mw``..``p_max_mw`` are the average draws of the four power
    states (idle, low PA, high PA, capped PA).  ``gamma_dbm`` is the
    transmit power at which the device switches from the low to the high
    power amplifier.  ``delta_ca_mw`` is the constant extra draw while a
    secondary carrier is configured, and ``rb_slope_mw_per_rb`` the
    decoding cost per allocated resource block.
    """

    frequency_mhz: float
    p_idle_mw: float
    p_low_mw: float
    p_high_mw: float
    p_max_mw: float
    gamma_dbm: float
    delta_ca_mw: float
    rb_slope_mw_per_rb: float = 0.0
    name: str = ""

    def __post_init__(self) -> None:
        _require(self.frequency_mhz > 0, "frequency_mhz must be positive")
        _require(
            0.0 < self.p_idle_mw < self.p_low_mw,
            "need 0 < p_idle_mw < p_low_mw",
        )
        _require(
            self.p_low_mw <= self.p_high_mw <= self.p_max_mw,
            "need p_low_mw <= p_high_mw <= p_max_mw",
        )
        _require(
            TX_POWER_FLOOR_DBM < self.gamma_dbm < TX_POWER_CAP_DBM,
            f"gamma_dbm must lie strictly inside ({TX_POWER_FLOOR_DBM:g}, "
            f"{TX_POWER_CAP_DBM:g}) dBm",
        )
        _require(self.delta_ca_mw >= 0.0, "delta_ca_mw must be >= 0")
        _require(self.rb_slope_mw_per_rb >= 0.0, "rb_slope_mw_per_rb must be >= 0")


@dataclass(frozen=True)
class ContextProfile:
    """Probabilities of the three active power states under one channel context.

    ``theta`` orders the probabilities as (low, high, max).  The capped
    state usually retains only part of the nominal throughput;
    ``max_state_rate_factor`` scales both link directions there so the
    uplink/downlink rate ratio stays fixed.
    """

    theta: tuple[float, float, float]
    max_state_rate_factor: float = 0.5
    label: str = ""
    derivation: dict | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        _require(len(self.theta) == 3, "theta must have three entries")
        object.__setattr__(self, "theta", tuple(float(t) for t in self.theta))
        for t in self.theta:
            _require(0.0 <= t <= 1.0, "each theta entry must lie in [0, 1]")
        _require(
            abs(sum(self.theta) - 1.0) <= 1e-12,
            "theta must sum to 1 within 1e-12",
        )
        _require(
            0.0 < self.max_state_rate_factor <= 1.0,
            "max_state_rate_factor must lie in (0, 1]",
        )


@dataclass(frozen=True)
class TrafficScenario:
    """Session statistics of the simulated traffic mix.

    Sessions arrive at ``lambda_per_s`` and carry ``d_dl_bit`` of downlink
    payload on average.  ``d_dlul`` is the uplink/downlink data size ratio,
    ``r_dlul`` the uplink/downlink rate ratio, ``r_dl_bit_per_s`` the nominal
    downlink rate, and ``a_ca`` the rate boost gained from aggregation.
    """

    lambda_per_s: float
    d_dl_bit: float
    d_dlul: float
    r_dlul: float
    r_dl_bit_per_s: float
    a_ca: float = 1.0
    ca_enabled: bool = False

    def __post_init__(self) -> None:
        _require(self.lambda_per_s > 0, "lambda_per_s must be positive")
        _require(self.d_dl_bit > 0, "d_dl_bit must be positive")
        _require(self.d_dlul > 0, "d_dlul must be positive")
        _require(self.r_dlul > 0, "r_dlul must be positive")
        _require(self.r_dl_bit_per_s > 0, "r_dl_bit_per_s must be positive")
        _require(self.a_ca >= 1.0, "a_ca must be >= 1")
        if not self.ca_enabled:
            _require(self.a_ca == 1.0, "a_ca must be 1 when ca_enabled is false")
        if self.d_dlul / self.r_dlul > 1.0 / self.a_ca:
            raise ClassicRegimeError(
                "uplink transfer does not fit inside the aggregated active "
                f"window: d_dlul/r_dlul = {self.d_dlul / self.r_dlul:g} exceeds "
                f"1/a_ca = {1.0 / self.a_ca:g}; use the classic uplink path"
            )

    @property
    def d_ul_bit(self) -> float:
        """Average uplink payload per session."""
        return self.d_dlul * self.d_dl_bit
