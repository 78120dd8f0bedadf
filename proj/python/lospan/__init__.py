"""Localized LOS and PLOS spanners for quasi unit disk graphs."""

from ._lospan import (
    DisconnectedError,
    Graph,
    Instance,
    LocalityError,
    NotASpannerError,
    RoundLimitError,
    StepTag,
    derive_k,
    distributed_los,
    distributed_plos,
    greedy_spanner,
    is_planar,
    ldel1,
    los,
    metrics,
    mst,
    ordered_yao,
    pldel,
    plos,
    random_instance,
    stretch_factor,
    udel,
    weight_ratio,
)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
