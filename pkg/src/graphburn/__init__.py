"""Graph burning: exact solving, certificate checking and constructive strategies for trees."""

from .engine import (
    BurningSchedule,
    CoveringCertificate,
    covering_to_sequence,
    longest_path_lower_bound,
    simulate,
    verify_covering,
    verify_sequence,
)
from .exact import SolverLimits, burnable_within, burning_number_exact
from .graph import Graph, build_graph, parse_graph, path_graph, read_graph, write_graph
from .recognition import classify, spine_decompose
from .strategies import dispatch_strategy

__version__ = "0.1.0"

__all__ = [
    "BurningSchedule",
    "CoveringCertificate",
    "Graph",
    "SolverLimits",
    "build_graph",
    "burnable_within",
    "burning_number_exact",
    "classify",
    "covering_to_sequence",
    "dispatch_strategy",
    "longest_path_lower_bound",
    "parse_graph",
    "path_graph",
    "read_graph",
    "simulate",
    "spine_decompose",
    "verify_covering",
    "verify_sequence",
    "write_graph",
]
