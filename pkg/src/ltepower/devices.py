"""Bundled reference handsets and carrier-combination lookup tables.

Two lab-characterized handsets ship with the package, each profiled at
800 MHz and 2600 MHz.  Their secondary-carrier penalties are band-level
defaults (same-band aggregation at the low band sits near the bottom of
the measured range, the 2600 MHz band a bit above); per-combination
values belong in a :class:`CaBandTable`.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .errors import TraceParseError, require as _require
from .profiles import DeviceBandProfile

#: Default extra draw per band while a secondary carrier is configured, mW.
DEFAULT_DELTA_CA_MW = {800.0: 190.0, 2600.0: 210.0}

#: Default decoding slope, mW per allocated resource block.
DEFAULT_RB_SLOPE_MW_PER_RB = 0.8

CA_TABLE_HEADER = ("pcc_band_mhz", "scc_band_mhz", "delta_mw", "supported")

_BUNDLED_DEVICES = (
    DeviceBandProfile(
        name="handset-a-800",
        frequency_mhz=800.0,
        p_idle_mw=97.0,
        p_low_mw=753.0,
        p_high_mw=1912.0,
        p_max_mw=3053.0,
        gamma_dbm=15.0,
        delta_ca_mw=DEFAULT_DELTA_CA_MW[800.0],
        rb_slope_mw_per_rb=DEFAULT_RB_SLOPE_MW_PER_RB,
    ),
    DeviceBandProfile(
        name="handset-a-2600",
        frequency_mhz=2600.0,
        p_idle_mw=97.0,
        p_low_mw=860.0,
        p_high_mw=1578.0,
        p_max_mw=2450.0,
        gamma_dbm=10.0,
        delta_ca_mw=DEFAULT_DELTA_CA_MW[2600.0],
        rb_slope_mw_per_rb=DEFAULT_RB_SLOPE_MW_PER_RB,
    ),
    DeviceBandProfile(
        name="handset-b-800",
        frequency_mhz=800.0,
        p_idle_mw=30.0,
        p_low_mw=604.0,
        p_high_mw=1309.0,
        p_max_mw=1873.0,
        gamma_dbm=12.0,
        delta_ca_mw=DEFAULT_DELTA_CA_MW[800.0],
        rb_slope_mw_per_rb=DEFAULT_RB_SLOPE_MW_PER_RB,
    ),
    DeviceBandProfile(
        name="handset-b-2600",
        frequency_mhz=2600.0,
        p_idle_mw=30.0,
        p_low_mw=980.0,
        p_high_mw=1515.0,
        p_max_mw=1993.0,
        gamma_dbm=12.0,
        delta_ca_mw=DEFAULT_DELTA_CA_MW[2600.0],
        rb_slope_mw_per_rb=DEFAULT_RB_SLOPE_MW_PER_RB,
    ),
)


def bundled_devices() -> tuple[DeviceBandProfile, ...]:
    """All bundled handset/band profiles."""
    return _BUNDLED_DEVICES


def bundled_device(name: str) -> DeviceBandProfile:
    """Look up one bundled device profile by name."""
    for device in _BUNDLED_DEVICES:
        if device.name == name:
            return device
    names = ", ".join(d.name for d in _BUNDLED_DEVICES)
    raise KeyError(f"unknown bundled device {name!r}; available: {names}")


def bandwidth_scale_delta(
    delta_ca_mw: float, ref_bandwidth_mhz: float, target_bandwidth_mhz: float
) -> float:
    """Rescale a secondary-carrier penalty linearly with carrier bandwidth."""
    _require(ref_bandwidth_mhz > 0, "ref_bandwidth_mhz must be > 0")
    _require(target_bandwidth_mhz > 0, "target_bandwidth_mhz must be > 0")
    return delta_ca_mw * (target_bandwidth_mhz / ref_bandwidth_mhz)


@dataclass(frozen=True)
class CaBandTable:
    """Extra draw per (primary band, secondary band) carrier combination.

    Keys are ordered pairs; primary and secondary roles are not
    interchangeable.  Combinations a device cannot aggregate are kept as
    explicit ``unsupported`` entries rather than silently dropped.
    """

    entries: tuple[tuple[tuple[float, float], float], ...]
    unsupported: tuple[tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        for combo, delta in self.entries:
            _require(delta >= 0.0, f"delta for {combo} must be >= 0")

    def delta_mw(self, pcc_band_mhz: float, scc_band_mhz: float) -> float:
        combo = (pcc_band_mhz, scc_band_mhz)
        if combo in self.unsupported:
            raise KeyError(f"combination {combo} is marked unsupported")
        for known, delta in self.entries:
            if known == combo:
                return delta
        raise KeyError(f"combination {combo} not present in the table")

    def is_supported(self, pcc_band_mhz: float, scc_band_mhz: float) -> bool:
        return (pcc_band_mhz, scc_band_mhz) not in self.unsupported and any(
            known == (pcc_band_mhz, scc_band_mhz) for known, _ in self.entries
        )


def read_ca_band_table_csv(path: str | Path) -> CaBandTable:
    """Read a carrier-combination table.

    Header: ``pcc_band_mhz,scc_band_mhz,delta_mw,supported`` with
    ``supported`` in {0, 1}.  Unsupported rows may leave ``delta_mw`` empty.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise TraceParseError(f"{path}: cannot read table: {exc}") from exc
    reader = csv.reader(text.splitlines())
    rows = [(n, row) for n, row in enumerate(reader, start=1) if row]
    if not rows:
        raise TraceParseError(f"{path}: file is empty")
    if tuple(c.strip() for c in rows[0][1]) != CA_TABLE_HEADER:
        raise TraceParseError(
            f"{path}:{rows[0][0]}: expected header {','.join(CA_TABLE_HEADER)!r}"
        )
    if len(rows) == 1:
        raise TraceParseError(f"{path}: header only, no data rows")

    entries = []
    unsupported = []
    for line, row in rows[1:]:
        if len(row) != 4:
            raise TraceParseError(f"{path}:{line}: expected 4 columns, got {len(row)}")
        try:
            combo = (float(row[0]), float(row[1]))
        except ValueError as exc:
            raise TraceParseError(f"{path}:{line}: bad band value") from exc
        flag = row[3].strip()
        if flag not in {"0", "1"}:
            raise TraceParseError(f"{path}:{line}: supported must be 0 or 1")
        if flag == "0":
            unsupported.append(combo)
            continue
        try:
            delta = float(row[2])
        except ValueError as exc:
            raise TraceParseError(f"{path}:{line}: bad delta_mw value") from exc
        entries.append((combo, delta))
    return CaBandTable(entries=tuple(entries), unsupported=tuple(unsupported))
