"""Run configuration documents and their resolution to domain objects.

Configs are JSON with unit suffixes spelled into every numeric key
(``lambda_per_s``, ``d_dl_bit``, ``p_low_mw``); nothing is converted
implicitly.  A device resolves from exactly one of ``bundled`` or
``inline``, a context from exactly one of ``bundled``, ``inline``, or
``derive``.  Scenario keys default to the stock simulation settings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .context import (
    EnvironmentSpec,
    LinkBudget,
    MobilitySpec,
    bundled_context,
    bundled_contexts,
    derive_theta,
)
from .devices import bundled_device, bundled_devices
from .errors import ConfigError, InvalidInputError
from .profiles import ContextProfile, DeviceBandProfile, TrafficScenario

#: Stock scenario settings used when a config omits a key.
DEFAULT_SCENARIO_CONFIG = {
    "lambda_per_s": 1.0 / 300.0,
    "d_dl_bit": 1e9,
    "d_dlul": 0.02,
    "r_dlul": 0.5,
    "r_dl_bit_per_s": 20e6,
    "a_ca": 2.0,
    "ca_enabled": True,
}

_DEVICE_KEYS = (
    "frequency_mhz",
    "p_idle_mw",
    "p_low_mw",
    "p_high_mw",
    "p_max_mw",
    "gamma_dbm",
    "delta_ca_mw",
    "rb_slope_mw_per_rb",
)


@dataclass(frozen=True)
class RunConfig:
    """A resolved run: device, context(s), scenario, optional sweep block."""

    device: DeviceBandProfile
    context: ContextProfile
    scenario: TrafficScenario
    sweep: dict | None = None
    paired_contexts: tuple[ContextProfile, ...] | None = None


def _exactly_one(section: dict, name: str, choices: tuple[str, ...]) -> str:
    present = [key for key in choices if key in section]
    if len(present) != 1:
        raise ConfigError(
            f"{name} must contain exactly one of {', '.join(choices)}; "
            f"found {present or 'none'}"
        )
    return present[0]


def device_from_config(section: dict) -> DeviceBandProfile:
    if not isinstance(section, dict):
        raise ConfigError("device section must be an object")
    kind = _exactly_one(section, "device", ("bundled", "inline"))
    if kind == "bundled":
        try:
            return bundled_device(section["bundled"])
        except KeyError as exc:
            raise ConfigError(str(exc.args[0])) from exc
    inline = section["inline"]
    unknown = set(inline) - set(_DEVICE_KEYS) - {"name"}
    if unknown:
        raise ConfigError(f"unknown device keys: {sorted(unknown)}")
    missing = [key for key in _DEVICE_KEYS[:-1] if key not in inline]
    if missing:
        raise ConfigError(f"device inline section missing keys: {missing}")
    try:
        return DeviceBandProfile(
            name=inline.get("name", "inline"),
            **{key: inline[key] for key in _DEVICE_KEYS if key in inline},
        )
    except InvalidInputError as exc:
        raise ConfigError(f"invalid device: {exc}") from exc


def context_from_config(section: dict, seed: int | None = None) -> ContextProfile:
    if not isinstance(section, dict):
        raise ConfigError("context section must be an object")
    kind = _exactly_one(section, "context", ("bundled", "inline", "derive"))
    if kind == "bundled":
        try:
            return bundled_context(section["bundled"])
        except KeyError as exc:
            raise ConfigError(str(exc.args[0])) from exc
    if kind == "inline":
        inline = section["inline"]
        # Invariant violations propagate as InvalidInputError with their
        # own message; only structural problems map to ConfigError here.
        try:
            return ContextProfile(
                theta=tuple(inline["theta"]),
                max_state_rate_factor=inline.get("max_state_rate_factor", 0.5),
                label=inline.get("label", "inline"),
            )
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"invalid inline context: {exc}") from exc
    derive = section["derive"]
    try:
        env = EnvironmentSpec(
            inter_site_distance_m=derive["environment"]["inter_site_distance_m"],
            path_loss_exponent=derive["environment"]["path_loss_exponent"],
            shadowing_sigma_db=derive["environment"]["shadowing_sigma_db"],
            los_probability_scale_m=derive["environment"]["los_probability_scale_m"],
            name=derive["environment"].get("name", "custom"),
        )
        mob = MobilitySpec(
            speed_kmh=derive["mobility"]["speed_kmh"],
            fading_margin_db=derive["mobility"]["fading_margin_db"],
            name=derive["mobility"].get("name", "custom"),
        )
        budget = LinkBudget(
            target_rx_power_dbm=derive["link_budget"]["target_rx_power_dbm"],
            frequency_mhz=derive["link_budget"]["frequency_mhz"],
            antenna_gains_db=derive["link_budget"].get("antenna_gains_db", 0.0),
        )
        return derive_theta(
            env,
            mob,
            budget,
            device_gamma_dbm=derive["device_gamma_dbm"],
            samples=int(derive.get("samples", 100_000)),
            seed=seed if seed is not None else int(derive.get("seed", 0)),
            max_state_rate_factor=derive.get("max_state_rate_factor", 0.5),
            label=derive.get("label", ""),
        )
    except KeyError as exc:
        raise ConfigError(f"context derive section missing key: {exc}") from exc


def scenario_from_config(section: dict | None) -> TrafficScenario:
    merged = dict(DEFAULT_SCENARIO_CONFIG)
    if section:
        unknown = set(section) - set(DEFAULT_SCENARIO_CONFIG)
        if unknown:
            raise ConfigError(f"unknown scenario keys: {sorted(unknown)}")
        merged.update(section)
    return TrafficScenario(**merged)


def paired_contexts_from_config(
    sweep_section: dict, seed: int | None = None
) -> tuple[ContextProfile, ...] | None:
    contexts = sweep_section.get("contexts")
    if contexts is None:
        return None
    if not isinstance(contexts, list) or not contexts:
        raise ConfigError("sweep.contexts must be a non-empty list")
    resolved = []
    for item in contexts:
        if isinstance(item, str):
            try:
                resolved.append(bundled_context(item))
            except KeyError as exc:
                raise ConfigError(str(exc.args[0])) from exc
        else:
            resolved.append(context_from_config(item, seed=seed))
    return tuple(resolved)


def load_run_config(path: str | Path, seed: int | None = None) -> RunConfig:
    """Load and resolve a JSON run configuration."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: config root must be an object")
    unknown = set(raw) - {"device", "context", "scenario", "sweep", "output"}
    if unknown:
        raise ConfigError(f"{path}: unknown top-level keys: {sorted(unknown)}")
    if "device" not in raw:
        raise ConfigError(f"{path}: missing device section")
    if "context" not in raw:
        raise ConfigError(f"{path}: missing context section")

    sweep = raw.get("sweep")
    paired = None
    if sweep is not None:
        if not isinstance(sweep, dict):
            raise ConfigError(f"{path}: sweep section must be an object")
        paired = paired_contexts_from_config(sweep, seed=seed)
    return RunConfig(
        device=device_from_config(raw["device"]),
        context=context_from_config(raw["context"], seed=seed),
        scenario=scenario_from_config(raw.get("scenario")),
        sweep=sweep,
        paired_contexts=paired,
    )


def device_to_config(device: DeviceBandProfile) -> dict:
    return {
        "name": device.name,
        "frequency_mhz": device.frequency_mhz,
        "p_idle_mw": device.p_idle_mw,
        "p_low_mw": device.p_low_mw,
        "p_high_mw": device.p_high_mw,
        "p_max_mw": device.p_max_mw,
        "gamma_dbm": device.gamma_dbm,
        "delta_ca_mw": device.delta_ca_mw,
        "rb_slope_mw_per_rb": device.rb_slope_mw_per_rb,
    }


def context_to_config(ctx: ContextProfile) -> dict:
    doc = {
        "label": ctx.label,
        "theta": list(ctx.theta),
        "max_state_rate_factor": ctx.max_state_rate_factor,
    }
    if ctx.derivation is not None:
        doc["derivation"] = ctx.derivation
    return doc


def scenario_to_config(scenario: TrafficScenario) -> dict:
    return {
        "lambda_per_s": scenario.lambda_per_s,
        "d_dl_bit": scenario.d_dl_bit,
        "d_dlul": scenario.d_dlul,
        "r_dlul": scenario.r_dlul,
        "r_dl_bit_per_s": scenario.r_dl_bit_per_s,
        "a_ca": scenario.a_ca,
        "ca_enabled": scenario.ca_enabled,
    }


def resolved_config_document(config: RunConfig) -> dict:
    """Fully resolved configuration snapshot for output provenance."""
    doc = {
        "device": device_to_config(config.device),
        "context": context_to_config(config.context),
        "scenario": scenario_to_config(config.scenario),
    }
    if config.sweep is not None:
        doc["sweep"] = config.sweep
        if config.paired_contexts:
            doc["sweep_contexts"] = [
                context_to_config(ctx) for ctx in config.paired_contexts
            ]
    return doc


def bundled_names() -> dict:
    """Names of everything the package bundles, for discovery commands."""
    return {
        "devices": [d.name for d in bundled_devices()],
        "contexts": [c.label for c in bundled_contexts()],
    }
