"""Random-cluster, loop and six-vertex models on even domains."""

from ._bkw import (
    BudgetExceeded,
    Domain,
    cluster_stats,
    coupled_params,
    critical_p,
    drift,
    fk_distribution,
    fk_weight,
    height_from_arrows,
    holley_check,
    is_valid_6v,
    loop_arrows,
    loops,
    sample,
    six_vertex_configs,
    verify_coupling,
    verify_identities,
    vertex_types,
)

__all__ = [
    "BudgetExceeded",
    "Domain",
    "cluster_stats",
    "coupled_params",
    "critical_p",
    "drift",
    "fk_distribution",
    "fk_weight",
    "height_from_arrows",
    "holley_check",
    "is_valid_6v",
    "loop_arrows",
    "loops",
    "sample",
    "six_vertex_configs",
    "verify_coupling",
    "verify_identities",
    "vertex_types",
]
