from .planning import check_regime, gap_from_delta, plan_samples, regime_allows
from .procedures import (
    test_character_two_sided,
    test_degree_d_exact_vs_random,
    test_degree_d_far,
    test_linear,
)

__all__ = [
    "check_regime",
    "gap_from_delta",
    "plan_samples",
    "regime_allows",
    "test_character_two_sided",
    "test_degree_d_exact_vs_random",
    "test_degree_d_far",
    "test_linear",
]
