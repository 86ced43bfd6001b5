"""Parameter sweeps, the aggregation breakeven point, and savings curves.

The carrier penalty and the idle time bought by the boost trade off
inside every active state in the same way, so the boost factor at which
aggregation starts paying has the closed form

    a_star = 1 + delta_ca / (p_low - p_idle)

independent of the channel context, the arrival rate, and the transfer
size.  The bisection solver here exists to confirm that on the full
model rather than to replace the formula.
"""

from __future__ import annotations

import io
import csv
from dataclasses import dataclass, replace

from .errors import (
    ClassicRegimeError,
    LtePowerError,
    NoBreakevenError,
    require as _require,
)
from .model import PowerReport, total_power
from .profiles import ContextProfile, DeviceBandProfile, TrafficScenario

SWEEP_AXES = ("file_size", "boost_factor")

#: Boosts beyond this are flagged as impractical in breakeven results.
PRACTICAL_BOOST_LIMIT = 2.0

#: Column order of the sweep CSV output.
SWEEP_CSV_COLUMNS = (
    "axis",
    "axis_value",
    "context_label",
    "total_power_mw",
    "baseline_power_mw",
    "savings_fraction",
    "p1",
    "p2",
    "p3",
    "p4",
    "error",
)


@dataclass(frozen=True)
class SweepSpec:
    """One sweep axis plus the fixed device/context/scenario tuple.

    ``paired_contexts`` optionally replaces the single context by a whole
    family (environment or mobility sets); the sweep then emits one curve
    per context label.
    """

    axis: str
    values: tuple[float, ...]
    device: DeviceBandProfile
    context: ContextProfile
    scenario: TrafficScenario
    paired_contexts: tuple[ContextProfile, ...] | None = None

    def __post_init__(self) -> None:
        _require(self.axis in SWEEP_AXES, f"axis must be one of {SWEEP_AXES}")
        _require(len(self.values) > 0, "values must not be empty")
        _require(
            all(a < b for a, b in zip(self.values, self.values[1:])),
            "values must be strictly increasing",
        )

    @property
    def contexts(self) -> tuple[ContextProfile, ...]:
        return self.paired_contexts if self.paired_contexts else (self.context,)


@dataclass(frozen=True)
class SweepRow:
    """One grid point: either a report or a per-row error message."""

    axis_value: float
    context_label: str
    report: PowerReport | None
    error: str | None = None


@dataclass(frozen=True)
class SweepResult:
    """Rows in request order plus the resolved configuration snapshot."""

    spec: SweepSpec
    rows: tuple[SweepRow, ...]


def _scenario_at(spec: SweepSpec, value: float) -> TrafficScenario:
    if spec.axis == "file_size":
        return replace(spec.scenario, d_dl_bit=value)
    return replace(spec.scenario, a_ca=value, ca_enabled=True)


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate the model at every grid point.

    Points that fall into the uplink-dominated regime are recorded as
    per-row errors; the sweep itself keeps going.  For a boost axis the
    successful rows are checked to be nonincreasing in total power, which
    the model guarantees analytically.
    """
    rows: list[SweepRow] = []
    for ctx in spec.contexts:
        previous: float | None = None
        for value in spec.values:
            try:
                scenario = _scenario_at(spec, value)
                report = total_power(spec.device, ctx, scenario)
            except ClassicRegimeError as exc:
                rows.append(
                    SweepRow(
                        axis_value=value,
                        context_label=ctx.label,
                        report=None,
                        error=str(exc),
                    )
                )
                continue
            if spec.axis == "boost_factor" and previous is not None:
                if report.total_power_mw > previous * (1.0 + 1e-12):
                    raise LtePowerError(
                        "boost sweep produced increasing total power; "
                        "model invariant violated"
                    )
            previous = report.total_power_mw
            rows.append(
                SweepRow(
                    axis_value=value, context_label=ctx.label, report=report
                )
            )
    return SweepResult(spec=spec, rows=tuple(rows))


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def sweep_result_to_csv(result: SweepResult) -> str:
    """Render a sweep as CSV with LF endings and dot decimal separators."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SWEEP_CSV_COLUMNS)
    for row in result.rows:
        if row.report is None:
            writer.writerow(
                [result.spec.axis, _fmt(row.axis_value), row.context_label]
                + [""] * 7
                + [row.error or "error"]
            )
            continue
        report = row.report
        writer.writerow(
            [
                result.spec.axis,
                _fmt(row.axis_value),
                row.context_label,
                _fmt(report.total_power_mw),
                _fmt(report.baseline_total_power_mw),
                _fmt(report.savings_fraction),
                _fmt(report.stationary.p[0]),
                _fmt(report.stationary.p[1]),
                _fmt(report.stationary.p[2]),
                _fmt(report.stationary.p[3]),
                "",
            ]
        )
    return buffer.getvalue()


@dataclass(frozen=True)
class BreakevenResult:
    """Breakeven boost from bisection, with its closed-form cross-check."""

    boost: float
    closed_form: float
    difference: float
    impractical: bool


def closed_form_breakeven(device: DeviceBandProfile) -> float:
    """``1 + delta_ca / (p_low - p_idle)``; equals 1 when there is no penalty."""
    return 1.0 + device.delta_ca_mw / (device.p_low_mw - device.p_idle_mw)


def breakeven_boost(
    device: DeviceBandProfile,
    ctx: ContextProfile,
    scenario: TrafficScenario,
    tolerance: float = 1e-9,
) -> BreakevenResult:
    """Bisect the boost at which aggregated and plain operation draw alike.

    The bracket is [1, r_dlul/d_dlul]; larger boosts would squeeze the
    uplink out of the active window.  The solver works on the full model
    and must land within 1e-6 of the closed form.

    Raises
    ------
    NoBreakevenError
        If even the largest admissible boost cannot offset the penalty.
    """
    _require(tolerance > 0, "tolerance must be positive")
    if device.delta_ca_mw == 0.0:
        # No penalty: aggregation pays from the first sliver of boost.
        return BreakevenResult(
            boost=1.0, closed_form=1.0, difference=0.0, impractical=False
        )

    def gap(boost: float) -> float:
        candidate = replace(scenario, a_ca=boost, ca_enabled=True)
        report = total_power(device, ctx, candidate)
        return report.total_power_mw - report.baseline_total_power_mw

    lo = 1.0
    hi = scenario.r_dlul / scenario.d_dlul
    _require(hi > lo, "admissible boost range is empty")
    gap_lo = gap(lo)
    gap_hi = gap(hi)
    if gap_lo <= 0.0:
        # Penalty already offset with no boost; closed form would be <= 1.
        boost = lo
    elif gap_hi > 0.0:
        raise NoBreakevenError(
            "extra carrier draw exceeds what any admissible boost can save "
            f"(gap at a={hi:g} is {gap_hi:g} mW)"
        )
    else:
        while hi - lo > tolerance:
            mid = 0.5 * (lo + hi)
            if gap(mid) > 0.0:
                lo = mid
            else:
                hi = mid
        boost = 0.5 * (lo + hi)

    reference = closed_form_breakeven(device)
    return BreakevenResult(
        boost=boost,
        closed_form=reference,
        difference=boost - reference,
        impractical=reference > PRACTICAL_BOOST_LIMIT,
    )


@dataclass(frozen=True)
class SavingsCurve:
    """Savings over a boost grid plus the per-interval marginal savings."""

    points: tuple[tuple[float, float], ...]
    marginals: tuple[tuple[float, float, float], ...]  # (a_lo, a_hi, dsavings/da)


def savings_curve(
    device: DeviceBandProfile,
    ctx: ContextProfile,
    scenario: TrafficScenario,
    boosts: tuple[float, ...],
) -> SavingsCurve:
    """Savings fraction versus boost, with marginal savings per interval.

    Aggregation stays active across the whole grid, so a boost of exactly
    1 shows the raw carrier penalty as negative savings.
    """
    _require(len(boosts) >= 1, "boosts must not be empty")
    _require(
        all(a < b for a, b in zip(boosts, boosts[1:])),
        "boosts must be strictly increasing",
    )
    points = []
    for boost in boosts:
        candidate = replace(scenario, a_ca=boost, ca_enabled=True)
        report = total_power(device, ctx, candidate)
        points.append((boost, report.savings_fraction))
    marginals = tuple(
        (a0, a1, (s1 - s0) / (a1 - a0))
        for (a0, s0), (a1, s1) in zip(points, points[1:])
    )
    return SavingsCurve(points=tuple(points), marginals=marginals)
