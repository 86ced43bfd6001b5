"""Recover device power parameters from measurement-style traces.

Two fits are supported:

* a two-segment fit of consumption versus transmit power.  The trace is
  split at a candidate breakpoint, each side gets an ordinary
  least-squares line, and the breakpoint minimizing the total squared
  residual over a 0.5 dB grid wins.  The state powers follow from the
  fitted lines: low at 0 dBm, high at the midpoint between breakpoint and
  cap, max at the 23 dBm cap.
* an affine fit of consumption versus allocated resource blocks with an
  indicator term for the secondary carrier, giving the decoding slope,
  the constant carrier jump, and the base draw in one regression.

CSV readers and writers for both trace kinds live here as well, so the
fits can run on files produced by external capture tooling.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import TraceParseError, UnderdeterminedFitError, require as _require
from .profiles import TX_POWER_CAP_DBM, TX_POWER_FLOOR_DBM

#: Candidate breakpoints for the two-segment search, dBm.
BREAKPOINT_GRID_MIN_DBM = -5.0
BREAKPOINT_GRID_MAX_DBM = 20.0
BREAKPOINT_GRID_STEP_DB = 0.5

#: Minimum points each segment needs for an affine fit.
_MIN_SEGMENT_POINTS = 3

PA_TRACE_HEADER = ("tx_power_dbm", "consumption_mw")
RB_TRACE_HEADER = ("total_rbs", "scc_active", "consumption_mw")


@dataclass(frozen=True)
class TxPowerTrace:
    """Consumption samples over the transmit power range of one band."""

    points: tuple[tuple[float, float], ...]
    band_mhz: float = 0.0
    device: str = ""

    def __post_init__(self) -> None:
        _require(len(self.points) >= 8, "need at least 8 trace points")
        tx = [p[0] for p in self.points]
        _require(
            all(a < b for a, b in zip(tx, tx[1:])),
            "tx_power_dbm must be strictly increasing",
        )
        _require(
            tx[0] <= TX_POWER_FLOOR_DBM + 1.0 and tx[-1] >= TX_POWER_CAP_DBM - 1.0,
            f"trace must cover [{TX_POWER_FLOOR_DBM:g}, {TX_POWER_CAP_DBM:g}] dBm "
            "within 1 dB at both ends",
        )

    @property
    def tx_dbm(self) -> np.ndarray:
        return np.array([p[0] for p in self.points])

    @property
    def consumption_mw(self) -> np.ndarray:
        return np.array([p[1] for p in self.points])


@dataclass(frozen=True)
class RbSweepTrace:
    """Consumption samples over allocated resource blocks, with and without SCC."""

    points: tuple[tuple[int, bool, float], ...]
    bandwidth_per_cc_mhz: float = 20.0

    def __post_init__(self) -> None:
        _require(len(self.points) >= 6, "need at least 6 trace points")
        _require(all(p[0] >= 1 for p in self.points), "total_rbs must be >= 1")
        n_on = sum(1 for p in self.points if p[1])
        _require(
            n_on >= 2 and len(self.points) - n_on >= 2,
            "need at least two points on each side of the SCC activation",
        )

    @property
    def rbs(self) -> np.ndarray:
        return np.array([p[0] for p in self.points], dtype=float)

    @property
    def scc_active(self) -> np.ndarray:
        return np.array([p[1] for p in self.points], dtype=float)

    @property
    def consumption_mw(self) -> np.ndarray:
        return np.array([p[2] for p in self.points])


@dataclass(frozen=True)
class Affine:
    """A fitted line ``value = intercept + slope * x``."""

    intercept: float
    slope: float

    def __call__(self, x: float) -> float:
        return self.intercept + self.slope * x


@dataclass(frozen=True)
class PaFitResult:
    """Outcome of the two-segment transmit-power fit."""

    gamma_dbm: float
    low_segment: Affine
    high_segment: Affine
    p_low_mw: float
    p_high_mw: float
    p_max_mw: float
    sse: float
    grid: tuple[tuple[float, float], ...]  # (candidate gamma, total SSE)


@dataclass(frozen=True)
class RbFitResult:
    """Outcome of the resource-block regression."""

    base_mw: float
    rb_slope_mw_per_rb: float
    delta_ca_mw: float
    sse: float

    def predict(self, total_rbs: float, scc_active: bool) -> float:
        return (
            self.base_mw
            + self.rb_slope_mw_per_rb * total_rbs
            + (self.delta_ca_mw if scc_active else 0.0)
        )


def _fit_line(x: np.ndarray, y: np.ndarray) -> tuple[Affine, float]:
    design = np.column_stack([np.ones_like(x), x])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    residual = y - design @ coef
    return Affine(intercept=float(coef[0]), slope=float(coef[1])), float(
        residual @ residual
    )


def fit_pa_model(trace: TxPowerTrace) -> PaFitResult:
    """Fit the two-segment amplifier model and extract the state powers.

    Every 0.5 dB candidate in [-5, 20] dBm that leaves at least three
    points on both sides is scored by the summed squared residual of the
    two per-side lines; the best candidate becomes the breakpoint.  Points
    at the candidate count as low side, matching the state classification.
    On exactly two-segment data the grid neighbors of the true breakpoint
    can tie at zero residual; ties within numerical noise resolve to the
    largest candidate, the highest power the low amplifier still covers.

    Raises
    ------
    UnderdeterminedFitError
        If no candidate leaves three points on each side.
    """
    tx = trace.tx_dbm
    y = trace.consumption_mw
    candidates = np.arange(
        BREAKPOINT_GRID_MIN_DBM,
        BREAKPOINT_GRID_MAX_DBM + BREAKPOINT_GRID_STEP_DB / 2,
        BREAKPOINT_GRID_STEP_DB,
    )

    fits = []
    for candidate in candidates:
        low_mask = tx <= candidate
        n_low = int(low_mask.sum())
        if n_low < _MIN_SEGMENT_POINTS or len(tx) - n_low < _MIN_SEGMENT_POINTS:
            continue
        low_line, low_sse = _fit_line(tx[low_mask], y[low_mask])
        high_line, high_sse = _fit_line(tx[~low_mask], y[~low_mask])
        fits.append((float(candidate), low_sse + high_sse, low_line, high_line))
    if not fits:
        raise UnderdeterminedFitError(
            "no breakpoint candidate leaves three points on each side"
        )

    best_sse = min(sse for _, sse, _, _ in fits)
    tie_band = best_sse + 1e-9 * (1.0 + best_sse)
    gamma, sse, low_line, high_line = max(
        (fit for fit in fits if fit[1] <= tie_band), key=lambda fit: fit[0]
    )
    grid = [(candidate, sse) for candidate, sse, _, _ in fits]
    midpoint = (gamma + TX_POWER_CAP_DBM) / 2.0
    return PaFitResult(
        gamma_dbm=gamma,
        low_segment=low_line,
        high_segment=high_line,
        p_low_mw=low_line(0.0),
        p_high_mw=high_line(midpoint),
        p_max_mw=high_line(TX_POWER_CAP_DBM),
        sse=sse,
        grid=tuple(grid),
    )


def fit_rb_model(trace: RbSweepTrace) -> RbFitResult:
    """Regress consumption on resource blocks and the SCC indicator.

    The model is ``consumption = base + slope * rbs + jump * [scc]``; how
    a given total is split across carriers never enters the design, so
    re-distributing blocks cannot change the fit.

    Raises
    ------
    UnderdeterminedFitError
        If the design matrix is rank deficient (e.g. constant block count).
    """
    design = np.column_stack(
        [np.ones(len(trace.points)), trace.rbs, trace.scc_active]
    )
    if np.linalg.matrix_rank(design) < 3:
        raise UnderdeterminedFitError(
            "resource-block design is collinear; vary both the block count "
            "and the SCC state"
        )
    coef, *_ = np.linalg.lstsq(design, trace.consumption_mw, rcond=None)
    residual = trace.consumption_mw - design @ coef
    return RbFitResult(
        base_mw=float(coef[0]),
        rb_slope_mw_per_rb=float(coef[1]),
        delta_ca_mw=float(coef[2]),
        sse=float(residual @ residual),
    )


def synthesize_pa_trace(
    p_low_mw: float,
    p_high_mw: float,
    p_max_mw: float,
    gamma_dbm: float,
    low_slope_mw_per_db: float | None = None,
    step_db: float = 0.5,
    noise_sigma_mw: float = 0.0,
    seed: int = 0,
    band_mhz: float = 0.0,
    device: str = "synthetic",
) -> TxPowerTrace:
    """Generate a two-segment trace from target state powers.

    The high segment passes through ``p_high_mw`` at the midpoint between
    ``gamma_dbm`` and the cap and through ``p_max_mw`` at the cap.  The low
    segment passes through ``p_low_mw`` at 0 dBm; by default its slope makes
    the two segments meet at the breakpoint.  Fitting a noiseless trace
    returns exactly the generating parameters.
    """
    midpoint = (gamma_dbm + TX_POWER_CAP_DBM) / 2.0
    high_slope = (p_max_mw - p_high_mw) / (TX_POWER_CAP_DBM - midpoint)
    high = Affine(intercept=p_max_mw - high_slope * TX_POWER_CAP_DBM, slope=high_slope)
    if low_slope_mw_per_db is None:
        if abs(gamma_dbm) < BREAKPOINT_GRID_STEP_DB:
            low_slope_mw_per_db = 12.0
        else:
            low_slope_mw_per_db = (high(gamma_dbm) - p_low_mw) / gamma_dbm
    low = Affine(intercept=p_low_mw, slope=low_slope_mw_per_db)

    tx = np.arange(TX_POWER_FLOOR_DBM, TX_POWER_CAP_DBM + step_db / 2, step_db)
    clean = np.where(
        tx <= gamma_dbm,
        low.intercept + low.slope * tx,
        high.intercept + high.slope * tx,
    )
    if noise_sigma_mw > 0.0:
        clean = clean + np.random.default_rng(seed).normal(
            0.0, noise_sigma_mw, len(tx)
        )
    return TxPowerTrace(
        points=tuple(zip(tx.tolist(), clean.tolist())),
        band_mhz=band_mhz,
        device=device,
    )


def synthesize_rb_trace(
    base_mw: float,
    rb_slope_mw_per_rb: float,
    delta_ca_mw: float,
    max_rbs_per_cc: int = 100,
    step: int = 2,
    noise_sigma_mw: float = 0.0,
    seed: int = 0,
    bandwidth_per_cc_mhz: float = 20.0,
) -> RbSweepTrace:
    """Generate a resource-block sweep in the shape of a lab capture.

    One series fills the primary carrier alone and then extends past its
    capacity with the secondary active; a second series runs the whole
    range with both carriers sharing the load.
    """
    rows: list[tuple[int, bool, float]] = []
    for rbs in range(8, max_rbs_per_cc + 1, step):
        rows.append((rbs, False, 0.0))
    for rbs in range(max_rbs_per_cc + step, 2 * max_rbs_per_cc + 1, step):
        rows.append((rbs, True, 0.0))
    for rbs in range(8, 2 * max_rbs_per_cc + 1, step):
        rows.append((rbs, True, 0.0))

    rng = np.random.default_rng(seed)
    points = []
    for rbs, scc, _ in rows:
        value = base_mw + rb_slope_mw_per_rb * rbs + (delta_ca_mw if scc else 0.0)
        if noise_sigma_mw > 0.0:
            value += rng.normal(0.0, noise_sigma_mw)
        points.append((rbs, scc, value))
    return RbSweepTrace(points=tuple(points), bandwidth_per_cc_mhz=bandwidth_per_cc_mhz)


def _read_rows(path: str | Path, header: tuple[str, ...]) -> list[tuple[int, list[str]]]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise TraceParseError(f"{path}: cannot read trace: {exc}") from exc
    reader = csv.reader(text.splitlines())
    rows = [(number, row) for number, row in enumerate(reader, start=1) if row]
    if not rows:
        raise TraceParseError(f"{path}: file is empty")
    first_number, first = rows[0]
    if tuple(cell.strip() for cell in first) != header:
        raise TraceParseError(
            f"{path}:{first_number}: expected header {','.join(header)!r}, "
            f"got {','.join(first)!r}"
        )
    data = rows[1:]
    if not data:
        raise TraceParseError(f"{path}: header only, no data rows")
    return data


def _parse_float(path: Path | str, line: int, name: str, cell: str) -> float:
    try:
        return float(cell)
    except ValueError as exc:
        raise TraceParseError(f"{path}:{line}: bad {name} value {cell!r}") from exc


def _parse_flag(path: Path | str, line: int, name: str, cell: str) -> bool:
    value = cell.strip()
    if value not in {"0", "1"}:
        raise TraceParseError(f"{path}:{line}: {name} must be 0 or 1, got {cell!r}")
    return value == "1"


def read_pa_trace_csv(
    path: str | Path, band_mhz: float = 0.0, device: str = ""
) -> TxPowerTrace:
    """Read a transmit-power trace (header ``tx_power_dbm,consumption_mw``)."""
    points = []
    for line, row in _read_rows(path, PA_TRACE_HEADER):
        if len(row) != 2:
            raise TraceParseError(f"{path}:{line}: expected 2 columns, got {len(row)}")
        points.append(
            (
                _parse_float(path, line, "tx_power_dbm", row[0]),
                _parse_float(path, line, "consumption_mw", row[1]),
            )
        )
    return TxPowerTrace(points=tuple(points), band_mhz=band_mhz, device=device)


def read_rb_trace_csv(path: str | Path, bandwidth_per_cc_mhz: float = 20.0) -> RbSweepTrace:
    """Read a resource-block sweep (header ``total_rbs,scc_active,consumption_mw``)."""
    points = []
    for line, row in _read_rows(path, RB_TRACE_HEADER):
        if len(row) != 3:
            raise TraceParseError(f"{path}:{line}: expected 3 columns, got {len(row)}")
        rbs = _parse_float(path, line, "total_rbs", row[0])
        if rbs != int(rbs) or rbs < 1:
            raise TraceParseError(
                f"{path}:{line}: total_rbs must be a positive integer, got {row[0]!r}"
            )
        points.append(
            (
                int(rbs),
                _parse_flag(path, line, "scc_active", row[1]),
                _parse_float(path, line, "consumption_mw", row[2]),
            )
        )
    return RbSweepTrace(points=tuple(points), bandwidth_per_cc_mhz=bandwidth_per_cc_mhz)


def write_pa_trace_csv(trace: TxPowerTrace, path: str | Path) -> None:
    """Write a transmit-power trace with LF line endings."""
    lines = [",".join(PA_TRACE_HEADER)]
    lines += [f"{tx:.12g},{mw:.12g}" for tx, mw in trace.points]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_rb_trace_csv(trace: RbSweepTrace, path: str | Path) -> None:
    """Write a resource-block sweep with LF line endings."""
    lines = [",".join(RB_TRACE_HEADER)]
    lines += [
        f"{rbs:d},{int(scc):d},{mw:.12g}" for rbs, scc, mw in trace.points
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
