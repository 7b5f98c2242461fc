"""Maximum-weight k-cycle and k-path packing: approximation algorithms,
exact oracles, fixtures, and a CLI."""

from .graph import (
    FormatError,
    HamiltonianCycle,
    KCyclePacking,
    KPathPacking,
    Matching,
    PackingError,
    WeightedCompleteGraph,
    generate_instance,
    is_metric,
    load_instance,
    make_matching,
    matching_weight,
    packing_weight,
    save_instance,
    tilde_weight,
    validate_packing,
)

__all__ = [
    "FormatError",
    "HamiltonianCycle",
    "KCyclePacking",
    "KPathPacking",
    "Matching",
    "PackingError",
    "WeightedCompleteGraph",
    "generate_instance",
    "is_metric",
    "load_instance",
    "make_matching",
    "matching_weight",
    "packing_weight",
    "save_instance",
    "tilde_weight",
    "validate_packing",
]

__version__ = "0.1.0"
