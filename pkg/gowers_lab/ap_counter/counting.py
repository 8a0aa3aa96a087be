"""
Counting 3-term progressions x, x+d, x+2d in a set S of F_p^n (p odd).

The quantum path encodes S as the +-1 phase g = 1 - 2*1_S, reads T(g) with a Hadamard test
and converts back with T(1_S) = (1 - 6a + 12a^2 - T(g)) / 8, where a is the density of S.
For odd p each pair of progression terms is uniform on G^2, so every bilinear cross term is a^2.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Union

import numpy as np

from gowers_lab.data_models.models import ApEstimate, ApMethod, QueryCostReport
from gowers_lab.errors import DomainError, ParameterError
from gowers_lab.gowers_circuit import run_t3_hadamard, run_ud
from gowers_lab.group_core import GroupParams, GroupVector, check_cap
from gowers_lab.harmonic import FunctionTable, count_3aps_exact, gowers_norm_bruteforce, t3
from gowers_lab.logger import logger
from gowers_lab.rng import make_rng

BOUND_TOLERANCE = 1e-10


@dataclass(frozen=True)
class SetInstance:
    indicator: FunctionTable

    def __post_init__(self):
        if not self.indicator.is_indicator():
            raise DomainError("Set indicator must take only the values 0 and 1")

    @property
    def params(self) -> GroupParams:
        return self.indicator.params

    @property
    def density(self) -> float:
        return float(np.mean(self.indicator.values.real))

    @property
    def size(self) -> int:
        return int(np.sum(self.indicator.values.real))

    @property
    def phase(self) -> FunctionTable:
        """(-1)^{1_S(x)} = 1 - 2 * 1_S(x)"""
        return FunctionTable(self.params, 1.0 - 2.0 * self.indicator.values.real)

    @classmethod
    def from_members(cls, params: GroupParams, members: Iterable[GroupVector]) -> "SetInstance":
        return cls(FunctionTable.indicator(params, members))

    @classmethod
    def random(cls, params: GroupParams, density: float, seed: int) -> "SetInstance":
        """Each element joins S independently with probability `density`"""
        if not 0 <= density <= 1:
            raise ParameterError(f"Density must lie in [0, 1], got {density}")
        check_cap(params.N)
        members = make_rng(seed, "subset").random(params.N) < density
        return cls(FunctionTable(params, members.astype(np.float64)))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "SetInstance":
        return cls(FunctionTable.load(path))


def _require_odd(params: GroupParams) -> None:
    if params.p == 2:
        raise DomainError("3-term progressions need odd characteristic (p >= 3)")


def convert_phase_t3(t_phase: float, density: float) -> float:
    """T(1_S) from T((-1)^{1_S}) and the density"""
    return (1.0 - 6.0 * density + 12.0 * density ** 2 - t_phase) / 8.0


def estimate_exact(instance: SetInstance) -> ApEstimate:
    _require_odd(instance.params)
    counted = count_3aps_exact(instance.indicator)
    return ApEstimate(
        method=ApMethod.EXACT,
        t_f=counted.t_value,
        count=float(counted.count),
        nontrivial_count=float(counted.nontrivial),
        diagnostics={"alpha": instance.density, "size": instance.size},
    )


def estimate_quantum_t3(instance: SetInstance, mode: str = "exact_readout", m: Optional[int] = None,
                        seed: Optional[int] = None) -> ApEstimate:
    """
    T(1_S) through the Hadamard-test readout of T(g)

    Args:
        instance: the set
        mode: "exact_readout" reads the ancilla probability from the state; "sampled" uses m shots
        m: shots for sampled mode
        seed: sampling seed for sampled mode
    """
    params = instance.params
    _require_odd(params)
    if mode not in ("exact_readout", "sampled"):
        raise ParameterError(f"mode must be 'exact_readout' or 'sampled', got '{mode}'")
    if mode == "sampled" and (m is None or seed is None):
        raise ParameterError("Sampled mode needs both m and seed")

    alpha = instance.density
    readout = run_t3_hadamard(instance.phase, part="real", m=m if mode == "sampled" else None, seed=seed)
    N2 = params.N ** 2
    diagnostics = {"alpha": alpha, "t_phase": readout.value, "queries": readout.query_count, "mode": mode}

    if mode == "exact_readout":
        t_f = convert_phase_t3(readout.value, alpha)
        t_interval = None
    else:
        assert readout.value_estimate is not None and readout.value_interval is not None
        t_f = convert_phase_t3(readout.value_estimate, alpha)
        # the conversion is decreasing in T(g)
        t_interval = (convert_phase_t3(readout.value_interval[1], alpha),
                      convert_phase_t3(readout.value_interval[0], alpha))
        diagnostics.update({"t_phase_estimate": readout.value_estimate, "m": m, "seed": seed})

    logger.info(f"Quantum T3 ({mode}): T(g)={readout.value:.6f}, alpha={alpha:.4f}, T(f)={t_f:.6f}")
    return ApEstimate(
        method=ApMethod.QUANTUM_T3,
        t_f=t_f,
        t_interval=t_interval,
        count=N2 * t_f,
        count_interval=None if t_interval is None else (N2 * t_interval[0], N2 * t_interval[1]),
        nontrivial_count=N2 * t_f - instance.size,
        diagnostics=diagnostics,
    )


def u2_bounds(instance: SetInstance) -> ApEstimate:
    """
    Interval [||1_S||_{U^2}^5, ||1_S||_{U^2}^2] for |T(1_S)|. Only the upper end is guaranteed;
    a lower-end violation is logged and flagged in the diagnostics.
    """
    params = instance.params
    _require_odd(params)
    f = instance.indicator
    norm = gowers_norm_bruteforce(f, 2)
    phase_norm = run_ud(instance.phase, 2).exact_expectation ** 0.25
    t_value = t3(f, f, f).real
    lower, upper = norm ** 5, norm ** 2

    lower_violated = abs(t_value) < lower - BOUND_TOLERANCE
    if lower_violated:
        logger.warning(f"|T| = {abs(t_value):.6g} falls below the ||f||_U2^5 bound {lower:.6g}")
    if abs(t_value) > upper + BOUND_TOLERANCE:
        logger.warning(f"|T| = {abs(t_value):.6g} exceeds ||f||_U2^2 = {upper:.6g}")

    N2 = params.N ** 2
    return ApEstimate(
        method=ApMethod.U2_BOUNDS,
        t_f=t_value,
        t_interval=(lower, upper),
        count=N2 * t_value,
        count_interval=(N2 * lower, N2 * upper),
        nontrivial_count=N2 * t_value - instance.size,
        diagnostics={
            "alpha": instance.density,
            "u2_indicator": norm,
            "u2_phase": phase_norm,
            "lower_bound_violated": lower_violated,
        },
    )


def query_cost_report(instance: SetInstance, epsilon: float) -> QueryCostReport:
    """Dominant terms 1/(eps^2 ||f||^10), 1/(eps^2 T^5) and sqrt(N^2 / M) / eps on this instance"""
    if not 0 < epsilon < 1:
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon}")
    params = instance.params
    _require_odd(params)
    counted = count_3aps_exact(instance.indicator)
    norm = gowers_norm_bruteforce(instance.indicator, 2)
    t_value = counted.t_value
    divergent = t_value <= 0
    if divergent:
        logger.warning("T(f) = 0: the Gowers-path query cost diverges")
    return QueryCostReport(
        epsilon=epsilon,
        group_size=params.N,
        progression_count=counted.count,
        t_f=t_value,
        u2_norm=norm,
        gowers_term=None if norm <= 0 else 1.0 / (epsilon ** 2 * norm ** 10),
        gowers_term_via_t=None if divergent else 1.0 / (epsilon ** 2 * t_value ** 5),
        grover_term=None if counted.count == 0 else float(np.sqrt(params.N ** 2 / counted.count)) / epsilon,
        divergent=divergent,
    )
