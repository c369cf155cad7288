"""Monotone paths, cellular strings and coherence for zonotopes, with exact arithmetic."""
from .census import (
    count_chambers,
    discriminantal,
    enumerate_tilings,
    is_coherent_tiling,
)
from .classify import Classification, classify, family_path_polynomial
from .coherence import (
    decomposable_obstruction,
    induced_string,
    is_all_coherent,
    is_coherent,
    rank_sum_test,
    strip_coloops,
)
from .configfile import load_config, parse_config, serialize_config
from .configuration import CapExceeded, Configuration, ValidationError
from .matroid import OrientedMatroid
from .signs import SignVector
from .strings import (
    CellularString,
    baues_poset,
    enumerate_cellular_strings,
    enumerate_monotone_paths,
    flip_graph,
    l2_separation,
    order_complex_stats,
    q_distance_polynomial,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "CellularString",
    "Classification",
    "Configuration",
    "OrientedMatroid",
    "SignVector",
    "ValidationError",
    "baues_poset",
    "classify",
    "count_chambers",
    "decomposable_obstruction",
    "discriminantal",
    "enumerate_cellular_strings",
    "enumerate_monotone_paths",
    "enumerate_tilings",
    "family_path_polynomial",
    "flip_graph",
    "induced_string",
    "is_all_coherent",
    "is_coherent",
    "is_coherent_tiling",
    "l2_separation",
    "load_config",
    "order_complex_stats",
    "parse_config",
    "q_distance_polynomial",
    "rank_sum_test",
    "serialize_config",
    "strip_coloops",
]
