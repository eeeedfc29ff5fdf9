"""Parametrized multipartite entanglement measures over bounded-block partitions.

The heavy lifting lives in the compiled ``_core`` module; this package
re-exports its surface.
"""

from ._core import (
    DensityOperator,
    PureState,
    as_density,
    classify,
    count_bounded,
    count_genuine,
    genuine_gpe,
    genuine_pe,
    ghz,
    gpe,
    partial_trace,
    partitions,
    pe,
    permute_subsystems,
    phi1,
    phi2,
    phi_theta,
    pi_lower_bound,
    pi_project,
    roof_upper,
    spectrum,
    tensor,
    trace_power,
    w,
)

__all__ = [
    "DensityOperator",
    "PureState",
    "as_density",
    "classify",
    "count_bounded",
    "count_genuine",
    "genuine_gpe",
    "genuine_pe",
    "ghz",
    "gpe",
    "partial_trace",
    "partitions",
    "pe",
    "permute_subsystems",
    "phi1",
    "phi2",
    "phi_theta",
    "pi_lower_bound",
    "pi_project",
    "roof_upper",
    "spectrum",
    "tensor",
    "trace_power",
    "w",
]
