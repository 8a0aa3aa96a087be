from .group import (
    GroupParams,
    GroupVector,
    UnitComplex,
    add,
    character_eval,
    check_cap,
    dot,
    enumerate_group,
    is_prime,
    neg,
    scalar_mul,
)

__all__ = [
    "GroupParams",
    "GroupVector",
    "UnitComplex",
    "add",
    "character_eval",
    "check_cap",
    "dot",
    "enumerate_group",
    "is_prime",
    "neg",
    "scalar_mul",
]
