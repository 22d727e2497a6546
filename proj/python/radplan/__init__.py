"""Radial distribution planning: conductor sizing with capacitor and DG placement."""

from ._core import (
    CaseError,
    Design,
    NetworkCase,
    SwarmConfig,
    TopologyError,
    builtin_case_26bus,
    escalate,
    evaluate,
    exhaustive_oracle,
    load_case,
    loss_factor,
    objective,
    omega_sweep,
    optimize,
    parse_case,
    power_flow,
    selective_position_update,
    sigmoid,
    uniform_design,
    voltage_index,
)

__all__ = [
    "CaseError",
    "Design",
    "NetworkCase",
    "SwarmConfig",
    "TopologyError",
    "builtin_case_26bus",
    "escalate",
    "evaluate",
    "exhaustive_oracle",
    "load_case",
    "loss_factor",
    "objective",
    "omega_sweep",
    "optimize",
    "parse_case",
    "power_flow",
    "selective_position_update",
    "sigmoid",
    "uniform_design",
    "voltage_index",
]
