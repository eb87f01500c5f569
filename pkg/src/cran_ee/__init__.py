"""Energy efficiency of a C-RAN cluster with an ICN optical core and safe antenna sleep."""

from .config import SimConfig, parse_config
from .efficiency import EeResult, energy_efficiency
from .scenarios import (
    ScenarioResult,
    emit_csv,
    run_combined_scenario,
    run_wired_scenario,
    run_wireless_scenario,
)

__all__ = [
    "EeResult",
    "ScenarioResult",
    "SimConfig",
    "emit_csv",
    "energy_efficiency",
    "parse_config",
    "run_combined_scenario",
    "run_wired_scenario",
    "run_wireless_scenario",
]
