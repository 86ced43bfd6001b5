"""Derive active-state probabilities from cell geometry and channel margins.

A user placed uniformly in the cell disc needs a transmit power of

    P_tx = target_rx + PL0(f) + 10 * n * log10(d / 1 m) + margin - gains + shadowing

to reach the base station, where ``PL0`` is the free-space loss at the
1 m reference distance and ``n`` the path-loss exponent.  Draws whose
required power stays at or below the device's amplifier breakpoint land
in the low state, draws at or above the 23 dBm cap in the max state,
everything between in the high state.  The empirical frequencies of the
three outcomes are the context's ``theta``.

Line of sight matters: with probability ``exp(-d / los_probability_scale)``
a draw propagates at the free-space exponent 2.0 instead of the
environment exponent.  Large scales (open rural terrain) keep most of the
cell in cheap line-of-sight conditions; small scales combined with large
cells (suburban sprawl) leave most users on the lossy exponent.

Mobility enters as a flat fade margin on the required power.  All
sampling is seeded and vectorized; a given seed reproduces ``theta`` to
the last bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from statistics import NormalDist

import numpy as np

from .errors import OutOfCellError, require as _require
from .profiles import TX_POWER_CAP_DBM, ContextProfile

#: Free-space path-loss exponent used for line-of-sight draws.
LOS_EXPONENT = 2.0

#: Reference distance of the log-distance model, meters.
REFERENCE_DISTANCE_M = 1.0

_SPEED_OF_LIGHT_M_PER_S = 299_792_458.0


@dataclass(frozen=True)
class EnvironmentSpec:
    """Cell geometry and propagation parameters of one deployment type."""

    inter_site_distance_m: float
    path_loss_exponent: float
    shadowing_sigma_db: float
    los_probability_scale_m: float
    name: str = ""

    def __post_init__(self) -> None:
        _require(self.inter_site_distance_m > 0, "inter_site_distance_m must be > 0")
        _require(
            2.0 <= self.path_loss_exponent <= 6.0,
            "path_loss_exponent must lie in [2, 6]",
        )
        _require(self.shadowing_sigma_db >= 0, "shadowing_sigma_db must be >= 0")
        _require(self.los_probability_scale_m > 0, "los_probability_scale_m must be > 0")

    @property
    def cell_radius_m(self) -> float:
        return self.inter_site_distance_m / 2.0


@dataclass(frozen=True)
class MobilitySpec:
    """Terminal speed and the fade margin it forces onto the link budget."""

    speed_kmh: float
    fading_margin_db: float
    name: str = ""

    def __post_init__(self) -> None:
        _require(self.speed_kmh >= 0, "speed_kmh must be >= 0")
        _require(self.fading_margin_db >= 0, "fading_margin_db must be >= 0")
        if self.speed_kmh == 0:
            _require(
                self.fading_margin_db == 0,
                "a static terminal must carry no fading margin",
            )


@dataclass(frozen=True)
class LinkBudget:
    """Receive target and antenna assumptions of the serving cell."""

    target_rx_power_dbm: float
    frequency_mhz: float
    antenna_gains_db: float = 0.0
    tx_power_cap_dbm: float = TX_POWER_CAP_DBM

    def __post_init__(self) -> None:
        _require(self.frequency_mhz > 0, "frequency_mhz must be > 0")
        _require(
            self.tx_power_cap_dbm == TX_POWER_CAP_DBM,
            f"tx_power_cap_dbm is fixed at {TX_POWER_CAP_DBM:g} dBm",
        )


def free_space_loss_at_reference_db(frequency_mhz: float) -> float:
    """Free-space loss at the 1 m reference distance."""
    f_hz = frequency_mhz * 1e6
    return 20.0 * math.log10(
        4.0 * math.pi * REFERENCE_DISTANCE_M * f_hz / _SPEED_OF_LIGHT_M_PER_S
    )


def required_tx_power_dbm(
    env: EnvironmentSpec,
    mob: MobilitySpec,
    budget: LinkBudget,
    distance_m: float,
    shadowing_quantile: float = 0.5,
) -> float:
    """Transmit power needed at ``distance_m`` from the base station.

    Deterministic: shadowing enters through its quantile (0.5 means the
    median, i.e. no shadowing term), never through sampling.  Uses the
    environment's own exponent; line-of-sight mixing only applies to the
    Monte Carlo derivation.

    Raises
    ------
    OutOfCellError
        If ``distance_m`` is not in (0, cell radius].
    """
    if not 0.0 < distance_m <= env.cell_radius_m:
        raise OutOfCellError(
            f"distance {distance_m:g} m outside (0, {env.cell_radius_m:g}] m"
        )
    _require(0.0 < shadowing_quantile < 1.0, "shadowing_quantile must be in (0, 1)")
    distance = max(distance_m, REFERENCE_DISTANCE_M)
    loss = free_space_loss_at_reference_db(budget.frequency_mhz)
    loss += 10.0 * env.path_loss_exponent * math.log10(distance / REFERENCE_DISTANCE_M)
    shadow = env.shadowing_sigma_db * NormalDist().inv_cdf(shadowing_quantile)
    return (
        budget.target_rx_power_dbm
        + loss
        + mob.fading_margin_db
        - budget.antenna_gains_db
        + shadow
    )


def derive_theta(
    env: EnvironmentSpec,
    mob: MobilitySpec,
    budget: LinkBudget,
    device_gamma_dbm: float,
    samples: int,
    seed: int = 0,
    max_state_rate_factor: float = 0.5,
    label: str = "",
) -> ContextProfile:
    """Monte Carlo estimate of the active-state probabilities.

    Draws ``samples`` user positions uniformly over the cell disc, one
    log-normal shadowing value each, and one line-of-sight indicator each
    (line of sight with probability ``exp(-d / los_probability_scale)``,
    propagating at exponent 2.0).  Each draw is classified by its required
    transmit power against ``device_gamma_dbm`` and the 23 dBm cap.

    The draw order (radius, shadowing, line of sight) is fixed, so runs
    with a common seed are comparable draw by draw and identical
    parameters reproduce ``theta`` bit for bit.
    """
    _require(samples >= 1000, "samples must be at least 1000")

    rng = np.random.default_rng(seed)
    radius = env.cell_radius_m
    distance = radius * np.sqrt(rng.random(samples))
    shadow = rng.normal(0.0, env.shadowing_sigma_db, samples)
    los = rng.random(samples) < np.exp(-distance / env.los_probability_scale_m)

    exponent = np.where(los, LOS_EXPONENT, env.path_loss_exponent)
    clamped = np.maximum(distance, REFERENCE_DISTANCE_M)
    loss = free_space_loss_at_reference_db(budget.frequency_mhz) + (
        10.0 * exponent * np.log10(clamped / REFERENCE_DISTANCE_M)
    )
    p_tx = (
        budget.target_rx_power_dbm
        + loss
        + mob.fading_margin_db
        - budget.antenna_gains_db
        + shadow
    )

    low = p_tx <= device_gamma_dbm
    capped = p_tx >= budget.tx_power_cap_dbm
    n_low = int(np.count_nonzero(low & ~capped))
    n_max = int(np.count_nonzero(capped))
    n_high = samples - n_low - n_max

    derivation = {
        "environment": {
            "name": env.name,
            "inter_site_distance_m": env.inter_site_distance_m,
            "path_loss_exponent": env.path_loss_exponent,
            "shadowing_sigma_db": env.shadowing_sigma_db,
            "los_probability_scale_m": env.los_probability_scale_m,
        },
        "mobility": {
            "name": mob.name,
            "speed_kmh": mob.speed_kmh,
            "fading_margin_db": mob.fading_margin_db,
        },
        "link_budget": {
            "target_rx_power_dbm": budget.target_rx_power_dbm,
            "frequency_mhz": budget.frequency_mhz,
            "antenna_gains_db": budget.antenna_gains_db,
            "tx_power_cap_dbm": budget.tx_power_cap_dbm,
        },
        "device_gamma_dbm": device_gamma_dbm,
        "samples": samples,
        "seed": seed,
    }
    return ContextProfile(
        theta=(n_low / samples, n_high / samples, n_max / samples),
        max_state_rate_factor=max_state_rate_factor,
        label=label or f"{env.name}/{mob.name}/{budget.frequency_mhz:g}",
        derivation=derivation,
    )


# Documented defaults behind the bundled context catalog.  All of them are
# plain configuration values and can be overridden per run.
BUNDLED_ENVIRONMENTS = (
    EnvironmentSpec(
        inter_site_distance_m=500.0,
        path_loss_exponent=3.8,
        shadowing_sigma_db=8.0,
        los_probability_scale_m=150.0,
        name="urban",
    ),
    EnvironmentSpec(
        inter_site_distance_m=1732.0,
        path_loss_exponent=3.5,
        shadowing_sigma_db=8.0,
        los_probability_scale_m=150.0,
        name="suburban",
    ),
    EnvironmentSpec(
        inter_site_distance_m=5000.0,
        path_loss_exponent=2.9,
        shadowing_sigma_db=6.0,
        los_probability_scale_m=10000.0,
        name="rural",
    ),
)

BUNDLED_MOBILITIES = (
    MobilitySpec(speed_kmh=0.0, fading_margin_db=0.0, name="awgn"),
    MobilitySpec(speed_kmh=3.0, fading_margin_db=3.0, name="pedestrian"),
    MobilitySpec(speed_kmh=60.0, fading_margin_db=4.0, name="vehicular"),
)

BUNDLED_BANDS_MHZ = (800.0, 2600.0)

#: Receive target of the bundled link budget, dBm.
DEFAULT_TARGET_RX_DBM = -108.0

#: Amplifier breakpoint used when generating the bundled contexts, dBm.
DEFAULT_GAMMA_DBM = 12.0

#: Sample count of the bundled Monte Carlo runs.
DEFAULT_SAMPLES = 200_000

_BUNDLED_SEED_BASE = 20_000


@lru_cache(maxsize=1)
def bundled_contexts() -> tuple[ContextProfile, ...]:
    """The 18 named context profiles (3 environments x 3 mobilities x 2 bands).

    Labels follow ``environment/mobility/band``, e.g. ``suburban/awgn/800``.
    Each profile is generated once per process with a fixed per-profile
    seed, so repeated lookups return identical values.
    """
    profiles = []
    index = 0
    for env in BUNDLED_ENVIRONMENTS:
        for mob in BUNDLED_MOBILITIES:
            for band in BUNDLED_BANDS_MHZ:
                budget = LinkBudget(
                    target_rx_power_dbm=DEFAULT_TARGET_RX_DBM, frequency_mhz=band
                )
                profiles.append(
                    derive_theta(
                        env,
                        mob,
                        budget,
                        device_gamma_dbm=DEFAULT_GAMMA_DBM,
                        samples=DEFAULT_SAMPLES,
                        seed=_BUNDLED_SEED_BASE + index,
                        label=f"{env.name}/{mob.name}/{band:g}",
                    )
                )
                index += 1
    return tuple(profiles)


def bundled_context(label: str) -> ContextProfile:
    """Look up one bundled context by its ``environment/mobility/band`` label."""
    for profile in bundled_contexts():
        if profile.label == label:
            return profile
    names = ", ".join(p.label for p in bundled_contexts())
    raise KeyError(f"unknown bundled context {label!r}; available: {names}")
