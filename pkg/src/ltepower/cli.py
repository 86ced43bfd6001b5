"""Command-line front end.

Subcommands
-----------
fit-trace     two-segment amplifier fit of a transmit-power trace CSV
fit-rb        resource-block regression of an RB sweep CSV
derive-theta  Monte Carlo context derivation from a config
simulate      single model evaluation from a config
sweep         grid evaluation, CSV or JSON document output
breakeven     bisection breakeven boost plus closed-form cross-check
list-bundled  names of bundled devices and contexts

Exit codes: 0 success, 2 configuration problem, 3 trace parse problem,
4 model-domain rejection (e.g. uplink-dominated traffic).  All documents
embed the fully resolved configuration; CSV output uses dot decimal
separators and LF endings, byte-identical across runs of one config.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import config as cfg
from .errors import (
    ConfigError,
    InvalidInputError,
    LtePowerError,
    TraceParseError,
)
from .fitting import fit_pa_model, fit_rb_model, read_pa_trace_csv, read_rb_trace_csv
from .model import PowerReport, total_power
from .sweeps import (
    SweepSpec,
    breakeven_boost,
    closed_form_breakeven,
    run_sweep,
    sweep_result_to_csv,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PARSE = 3
EXIT_MODEL = 4


def _dump(document: dict) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _report_document(report: PowerReport) -> dict:
    return {
        "total_power_mw": report.total_power_mw,
        "baseline_total_power_mw": report.baseline_total_power_mw,
        "savings_fraction": report.savings_fraction,
        "mixed_power_mw": list(report.mixed_power_mw),
        "stationary_p": list(report.stationary.p),
        "time_fractions": [list(t) for t in report.time_fractions],
    }


def cmd_fit_trace(args: argparse.Namespace) -> int:
    trace = read_pa_trace_csv(args.trace)
    fit = fit_pa_model(trace)
    document = {
        "kind": "pa-fit",
        "input": str(args.trace),
        "gamma_dbm": fit.gamma_dbm,
        "low_segment": {"intercept_mw": fit.low_segment.intercept,
                        "slope_mw_per_db": fit.low_segment.slope},
        "high_segment": {"intercept_mw": fit.high_segment.intercept,
                         "slope_mw_per_db": fit.high_segment.slope},
        "p_low_mw": fit.p_low_mw,
        "p_high_mw": fit.p_high_mw,
        "p_max_mw": fit.p_max_mw,
        "sse": fit.sse,
        "gamma_grid": [{"gamma_dbm": g, "sse": s} for g, s in fit.grid],
    }
    _emit(_dump(document), args.output)
    return EXIT_OK


def cmd_fit_rb(args: argparse.Namespace) -> int:
    trace = read_rb_trace_csv(args.trace)
    fit = fit_rb_model(trace)
    document = {
        "kind": "rb-fit",
        "input": str(args.trace),
        "base_mw": fit.base_mw,
        "rb_slope_mw_per_rb": fit.rb_slope_mw_per_rb,
        "delta_ca_mw": fit.delta_ca_mw,
        "sse": fit.sse,
    }
    _emit(_dump(document), args.output)
    return EXIT_OK


def cmd_derive_theta(args: argparse.Namespace) -> int:
    run = cfg.load_run_config(args.config, seed=args.seed)
    document = {
        "kind": "context",
        "context": cfg.context_to_config(run.context),
    }
    _emit(_dump(document), args.output)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    run = cfg.load_run_config(args.config, seed=args.seed)
    report = total_power(run.device, run.context, run.scenario)
    theta = "/".join(f"{t:.4f}" for t in run.context.theta)
    print(f"device   {run.device.name or 'inline'} ({run.device.frequency_mhz:g} MHz)")
    print(f"context  {run.context.label or 'inline'}  theta {theta}")
    print(f"total    {report.total_power_mw:.2f} mW")
    print(f"baseline {report.baseline_total_power_mw:.2f} mW (no aggregation)")
    print(f"savings  {100.0 * report.savings_fraction:.2f} %")
    document = {
        "kind": "report",
        "config": cfg.resolved_config_document(run),
        "report": _report_document(report),
    }
    if args.output:
        _emit(_dump(document), args.output)
    return EXIT_OK


def _sweep_spec(run: cfg.RunConfig) -> SweepSpec:
    if not run.sweep:
        raise ConfigError("config has no sweep section")
    axis = run.sweep.get("axis")
    values = run.sweep.get("values")
    if axis is None or values is None:
        raise ConfigError("sweep section needs axis and values")
    return SweepSpec(
        axis=axis,
        values=tuple(float(v) for v in values),
        device=run.device,
        context=run.context,
        scenario=run.scenario,
        paired_contexts=run.paired_contexts,
    )


def cmd_sweep(args: argparse.Namespace) -> int:
    run = cfg.load_run_config(args.config, seed=args.seed)
    result = run_sweep(_sweep_spec(run))
    if args.format == "csv":
        _emit(sweep_result_to_csv(result), args.output)
        return EXIT_OK
    document = {
        "kind": "sweep",
        "config": cfg.resolved_config_document(run),
        "rows": [
            {
                "axis_value": row.axis_value,
                "context_label": row.context_label,
                "error": row.error,
                "report": None if row.report is None else _report_document(row.report),
            }
            for row in result.rows
        ],
    }
    _emit(_dump(document), args.output)
    return EXIT_OK


def cmd_breakeven(args: argparse.Namespace) -> int:
    run = cfg.load_run_config(args.config, seed=args.seed)
    scenario = run.scenario
    if not scenario.ca_enabled:
        scenario = replace(scenario, ca_enabled=True, a_ca=max(scenario.a_ca, 1.0))
    result = breakeven_boost(run.device, run.context, scenario)
    print(f"breakeven boost      {result.boost:.9f}")
    print(f"closed form          {result.closed_form:.9f}")
    print(f"difference           {result.difference:.3e}")
    if result.impractical:
        print("note: breakeven lies beyond practical aggregation gains")
    document = {
        "kind": "breakeven",
        "config": cfg.resolved_config_document(run),
        "boost": result.boost,
        "closed_form": result.closed_form,
        "difference": result.difference,
        "impractical": result.impractical,
    }
    if args.output:
        _emit(_dump(document), args.output)
    return EXIT_OK


def cmd_list_bundled(args: argparse.Namespace) -> int:
    names = cfg.bundled_names()
    if args.format == "doc":
        _emit(_dump(names), args.output)
        return EXIT_OK
    print("devices:")
    for name in names["devices"]:
        print(f"  {name}")
    print("contexts:")
    for name in names["contexts"]:
        print(f"  {name}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ltepower",
        description="Average power draw of an LTE-A terminal under "
        "downlink carrier aggregation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, needs_config: bool = True) -> None:
        if needs_config:
            p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--output", help="write the result document here")
        p.add_argument(
            "--format", choices=("csv", "doc"), default="doc",
            help="output format where the command supports both",
        )
        p.add_argument("--seed", type=int, default=None,
                       help="override the sampling seed of derived contexts")
        p.add_argument("--jobs", type=int, default=1,
                       help="reserved concurrency hint; evaluation is serial")

    p = sub.add_parser("fit-trace", help="two-segment fit of a transmit-power trace")
    p.add_argument("trace", help="CSV with header tx_power_dbm,consumption_mw")
    common(p, needs_config=False)
    p.set_defaults(func=cmd_fit_trace)

    p = sub.add_parser("fit-rb", help="regression of a resource-block sweep")
    p.add_argument("trace", help="CSV with header total_rbs,scc_active,consumption_mw")
    common(p, needs_config=False)
    p.set_defaults(func=cmd_fit_rb)

    p = sub.add_parser("derive-theta", help="Monte Carlo context derivation")
    common(p)
    p.set_defaults(func=cmd_derive_theta)

    p = sub.add_parser("simulate", help="single model evaluation")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="evaluate a parameter grid")
    common(p)
    p.set_defaults(func=cmd_sweep, format="csv")

    p = sub.add_parser("breakeven", help="breakeven boost factor")
    common(p)
    p.set_defaults(func=cmd_breakeven)

    p = sub.add_parser("list-bundled", help="bundled device and context names")
    common(p, needs_config=False)
    p.set_defaults(func=cmd_list_bundled)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, InvalidInputError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except TraceParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except LtePowerError as exc:
        print(f"model error: {exc}", file=sys.stderr)
        return EXIT_MODEL


if __name__ == "__main__":
    sys.exit(main())
