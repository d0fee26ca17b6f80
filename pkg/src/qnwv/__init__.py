"""Network verification as unstructured search, solved with Grover's algorithm
on a dense state-vector simulator and cross-checked by brute force."""

from .classical import brute_force, evaluate, forward_step, igp_routes, simulate_dataplane
from .errors import ConfigError, ResourceLimitError
from .grover import (
    Biased,
    GroverPlan,
    InitSpec,
    Uniform,
    bbht_search,
    find_all,
    make_plan,
    optimal_iterates,
    prepare_init,
    search,
    success_probability,
)
from .netmodel import (
    AvoidsWaypoint,
    ControlPlaneNetwork,
    DataPlaneNetwork,
    Disconnected,
    ExceedsHops,
    ReachWithin,
    format_bits,
    parse_controlplane,
    parse_dataplane,
    parse_network,
    parse_property,
    wildcard_match,
)
from .oracle import add_exclusion, compile_diagonal, compile_gate_controlplane, compile_gate_dataplane, compile_oracle
from .resources import ControlPlaneParams, DataPlaneParams, controlplane_qubits, dataplane_qubits

__version__ = "0.1.0"

__all__ = [
    "add_exclusion",
    "AvoidsWaypoint",
    "bbht_search",
    "Biased",
    "brute_force",
    "compile_diagonal",
    "compile_gate_controlplane",
    "compile_gate_dataplane",
    "compile_oracle",
    "ConfigError",
    "controlplane_qubits",
    "ControlPlaneNetwork",
    "ControlPlaneParams",
    "dataplane_qubits",
    "DataPlaneNetwork",
    "DataPlaneParams",
    "Disconnected",
    "evaluate",
    "ExceedsHops",
    "find_all",
    "format_bits",
    "forward_step",
    "GroverPlan",
    "igp_routes",
    "InitSpec",
    "make_plan",
    "optimal_iterates",
    "parse_controlplane",
    "parse_dataplane",
    "parse_network",
    "parse_property",
    "prepare_init",
    "ReachWithin",
    "ResourceLimitError",
    "search",
    "simulate_dataplane",
    "success_probability",
    "Uniform",
    "wildcard_match",
]
