from .plan import (
    CircuitPlan,
    CircuitStep,
    StepKind,
    build_ud_plan,
    gray_code,
    net_cadd_shift,
    plan_to_json,
)
from .runner import (
    estimate_from_shots,
    execute_plan,
    hoeffding_radius,
    run_inner_product,
    run_shifted,
    run_shifted_with_state,
    run_t3_circuit,
    run_t3_hadamard,
    run_ud,
    run_ud_sampled,
)

__all__ = [
    "CircuitPlan",
    "CircuitStep",
    "StepKind",
    "build_ud_plan",
    "estimate_from_shots",
    "execute_plan",
    "gray_code",
    "hoeffding_radius",
    "net_cadd_shift",
    "plan_to_json",
    "run_inner_product",
    "run_shifted",
    "run_shifted_with_state",
    "run_t3_circuit",
    "run_t3_hadamard",
    "run_ud",
    "run_ud_sampled",
]
