from .counting import (
    SetInstance,
    convert_phase_t3,
    estimate_exact,
    estimate_quantum_t3,
    query_cost_report,
    u2_bounds,
)

__all__ = [
    "SetInstance",
    "convert_phase_t3",
    "estimate_exact",
    "estimate_quantum_t3",
    "query_cost_report",
    "u2_bounds",
]
