"""Average power draw of LTE-A user equipment under downlink carrier aggregation.

The package combines a four-state power model with a geometry-driven
derivation of the state probabilities, least-squares fitting of device
parameters from lab-style traces, and a sweep/breakeven engine on top.
"""

from .context import (
    EnvironmentSpec,
    LinkBudget,
    MobilitySpec,
    bundled_context,
    bundled_contexts,
    derive_theta,
    required_tx_power_dbm,
)
from .devices import (
    CaBandTable,
    bandwidth_scale_delta,
    bundled_device,
    bundled_devices,
    read_ca_band_table_csv,
)
from .errors import (
    ClassicRegimeError,
    ConfigError,
    DegenerateRateError,
    InvalidInputError,
    LtePowerError,
    NoBreakevenError,
    OutOfCellError,
    TraceParseError,
    UnderdeterminedFitError,
)
from .fitting import (
    RbSweepTrace,
    TxPowerTrace,
    fit_pa_model,
    fit_rb_model,
    read_pa_trace_csv,
    read_rb_trace_csv,
    synthesize_pa_trace,
    synthesize_rb_trace,
    write_pa_trace_csv,
    write_rb_trace_csv,
)
from .model import (
    PowerReport,
    StationaryDistribution,
    classic_uplink_total_power,
    mixed_state_power,
    service_rates,
    stationary_distribution,
    time_partition,
    total_power,
)
from .profiles import ContextProfile, DeviceBandProfile, TrafficScenario
from .sweeps import (
    BreakevenResult,
    SavingsCurve,
    SweepResult,
    SweepSpec,
    breakeven_boost,
    closed_form_breakeven,
    run_sweep,
    savings_curve,
    sweep_result_to_csv,
)

__version__ = "0.1.0"

__all__ = [
    "BreakevenResult",
    "CaBandTable",
    "ClassicRegimeError",
    "ConfigError",
    "ContextProfile",
    "DegenerateRateError",
    "DeviceBandProfile",
    "EnvironmentSpec",
    "InvalidInputError",
    "LinkBudget",
    "LtePowerError",
    "MobilitySpec",
    "NoBreakevenError",
    "OutOfCellError",
    "PowerReport",
    "RbSweepTrace",
    "SavingsCurve",
    "StationaryDistribution",
    "SweepResult",
    "SweepSpec",
    "TraceParseError",
    "TrafficScenario",
    "TxPowerTrace",
    "UnderdeterminedFitError",
    "bandwidth_scale_delta",
    "breakeven_boost",
    "bundled_context",
    "bundled_contexts",
    "bundled_device",
    "bundled_devices",
    "classic_uplink_total_power",
    "closed_form_breakeven",
    "derive_theta",
    "fit_pa_model",
    "fit_rb_model",
    "mixed_state_power",
    "read_ca_band_table_csv",
    "read_pa_trace_csv",
    "read_rb_trace_csv",
    "required_tx_power_dbm",
    "run_sweep",
    "savings_curve",
    "service_rates",
    "stationary_distribution",
    "sweep_result_to_csv",
    "synthesize_pa_trace",
    "synthesize_rb_trace",
    "time_partition",
    "total_power",
    "write_pa_trace_csv",
    "write_rb_trace_csv",
]
