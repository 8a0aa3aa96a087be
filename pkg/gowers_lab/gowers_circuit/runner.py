"""
Running circuit plans on the statevector simulator.

Every run starts from the uniform (or, for shifted runs, a QFT-prepared basis) state, executes
the schedule, and reads the peak amplitude exactly. Sampled modes draw shots from the final
distribution on top of that.
"""
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import binomtest

from gowers_lab.config_utils import get_settings
from gowers_lab.data_models.models import EstimateReport, HadamardTestResult, RunResult
from gowers_lab.errors import DomainError, InternalConsistencyError, ParameterError
from gowers_lab.gowers_circuit.plan import CircuitPlan, StepKind, build_ud_plan
from gowers_lab.group_core import GroupParams, GroupVector, neg
from gowers_lab.harmonic import FunctionTable
from gowers_lab.logger import logger
from gowers_lab.qsim import RegisterLayout, StateVector

EXPECTATION_TOLERANCE = 1e-9


def hoeffding_radius(m: int, confidence: float) -> float:
    """sqrt(ln(2 / (1 - confidence)) / (2 m))"""
    return math.sqrt(math.log(2.0 / (1.0 - confidence)) / (2 * m))


def estimate_from_shots(successes: int, m: int, seed: int, exact: Optional[float] = None) -> EstimateReport:
    """Empirical frequency with a Clopper-Pearson interval and the Hoeffding radius"""
    confidence = get_settings().confidence
    interval = binomtest(successes, m).proportion_ci(confidence_level=confidence, method="exact")
    return EstimateReport(
        estimate=successes / m,
        exact=exact,
        m=m,
        successes=successes,
        ci=(float(interval.low), float(interval.high)),
        confidence=confidence,
        radius=hoeffding_radius(m, confidence),
        seed=seed,
    )


def _common_params(tables: Sequence[Optional[FunctionTable]]) -> GroupParams:
    present = [t for t in tables if t is not None]
    if not present:
        raise ParameterError("At least one vertex needs a table to fix the group")
    params = present[0].params
    if any(t.params != params for t in present):
        raise ParameterError("Vertex tables live on different groups")
    return params


def execute_plan(state: StateVector, plan: CircuitPlan, tables: Sequence[Optional[FunctionTable]]) -> StateVector:
    """Apply each step; oracle steps look their table up by vertex"""
    for step in plan.steps:
        if step.kind is StepKind.ORACLE:
            table = tables[step.vertex or 0]
            if table is None:
                continue
            state.apply_phase_oracle(step.register, table, conjugate=step.conjugate)
        elif step.kind is StepKind.CADD:
            state.apply_cadd(step.src, step.dst, step.sign)
        else:
            state.apply_qft(step.register, inverse=step.inverse)
    return state


def _check_counts(state: StateVector, plan: CircuitPlan, preparation_qfts: int = 0) -> None:
    counts = state.counts
    if counts.oracle != plan.query_count or counts.qft - preparation_qfts != plan.qft_count:
        raise InternalConsistencyError(
            f"Instrumentation mismatch: {counts.oracle} oracle calls / {counts.qft - preparation_qfts} QFTs "
            f"executed, plan declares {plan.query_count} / {plan.qft_count}"
        )


def _result(kind: str, plan: CircuitPlan, state: StateVector, peak: Sequence[GroupVector],
            real_expectation: bool, preparation_qfts: int = 0) -> RunResult:
    _check_counts(state, plan, preparation_qfts)
    amplitude = state.amplitude_of(peak)
    if real_expectation:
        if abs(amplitude.imag) > EXPECTATION_TOLERANCE or amplitude.real < -EXPECTATION_TOLERANCE:
            raise InternalConsistencyError(
                f"Peak amplitude {amplitude:.3e} is not a nonnegative real Gowers expectation"
            )
        expectation = max(amplitude.real, 0.0)
    else:
        expectation = abs(amplitude)
    probability = float(abs(amplitude) ** 2)
    return RunResult(
        kind=kind,
        order=plan.d,
        amplitudes=state.layout.total_dim,
        zero_probability=probability,
        exact_expectation=expectation,
        amplitude=(amplitude.real, amplitude.imag),
        peak=[list(v.coords) for v in peak],
        peak_probability=probability,
        query_count=state.counts.oracle,
        conjugate_query_count=state.counts.conjugate_oracle,
        qft_count=state.counts.qft - preparation_qfts,
        preparation_qft_count=preparation_qfts,
        cadd_count=state.counts.cadd,
    )


def _run(tables: List[Optional[FunctionTable]], d: int, kind: str, real_expectation: bool) -> RunResult:
    params = _common_params(tables)
    plan = build_ud_plan(d, selection=[t is not None for t in tables])
    state = StateVector.uniform(RegisterLayout(params, d + 1))
    execute_plan(state, plan, tables)
    result = _result(kind, plan, state, [params.zero()] * (d + 1), real_expectation)
    logger.info(f"{kind} run d={d} over {state.layout.total_dim} amplitudes: "
                f"zero probability {result.zero_probability:.12g}")
    return result


def run_ud(f: FunctionTable, d: int) -> RunResult:
    """Order-d circuit; the zero probability is ||f||_{U^d}^(2^(d+1))"""
    return _run([f] * 2 ** d, d, "ud", real_expectation=True)


def run_ud_sampled(f: FunctionTable, d: int, m: int, seed: int) -> RunResult:
    if m < 1:
        raise ParameterError(f"Shot count must be positive, got {m}")
    params = f.params
    plan = build_ud_plan(d)
    state = StateVector.uniform(RegisterLayout(params, d + 1))
    execute_plan(state, plan, [f] * 2 ** d)
    result = _result("ud", plan, state, [params.zero()] * (d + 1), real_expectation=True)
    shots = state.sample(m, seed)
    successes = int(np.count_nonzero(shots == 0))
    result.estimate = estimate_from_shots(successes, m, seed, exact=result.zero_probability)
    logger.info(f"Sampled U^{d}: p_hat={result.estimate.estimate:.6f} over m={m} (exact {result.zero_probability:.6f})")
    return result


def run_inner_product(fs: Sequence[Optional[FunctionTable]], d: int,
                      params: Optional[GroupParams] = None) -> RunResult:
    """
    Vertex-selective circuit; None (or a constant-1 table) skips that vertex's oracle.
    `params` fixes the group when every vertex is None; otherwise it must match the tables.
    The peak amplitude is the Gowers inner product itself; exact_expectation holds its modulus.
    """
    if len(fs) != 2 ** d:
        raise ParameterError(f"Expected {2 ** d} vertex tables, got {len(fs)}")
    tables: List[Optional[FunctionTable]] = [
        None if t is None or np.all(t.values == 1) else t for t in fs
    ]
    if any(t is not None for t in fs):
        common = _common_params(fs)
        if params is not None and params != common:
            raise ParameterError("params disagree with the vertex tables")
        params = common
    elif params is None:
        raise ParameterError("All vertices are None; pass params to fix the group")
    if all(t is None for t in tables):
        layout = RegisterLayout(params, d + 1)
        return RunResult(
            kind="inner_product", order=d, amplitudes=layout.total_dim, zero_probability=1.0,
            exact_expectation=1.0, amplitude=(1.0, 0.0), peak=[[0] * params.n] * (d + 1),
            peak_probability=1.0, query_count=0, qft_count=0,
        )
    return _run(tables, d, "inner_product", real_expectation=False)


def run_shifted(f: FunctionTable, d: int, shifts: Sequence[GroupVector]) -> RunResult:
    """
    Preparation starts from |shifts> and applies a QFT per register; the same schedule then
    moves the peak from zero to neg(shifts) without changing its probability
    """
    return run_shifted_with_state(f, d, shifts)[0]


def run_shifted_with_state(f: FunctionTable, d: int,
                           shifts: Sequence[GroupVector]) -> Tuple[RunResult, StateVector]:
    params = f.params
    if len(shifts) != d + 1:
        raise ParameterError(f"Expected {d + 1} shifts, got {len(shifts)}")
    plan = build_ud_plan(d)
    layout = RegisterLayout(params, d + 1)
    state = StateVector.basis(layout, shifts)
    for k in range(d + 1):
        state.apply_qft(k)
    execute_plan(state, plan, [f] * 2 ** d)
    peak = [neg(s) for s in shifts]
    result = _result("shifted", plan, state, peak, real_expectation=True, preparation_qfts=d + 1)
    logger.info(f"Shifted U^{d} run: peak {[v.coords for v in peak]} probability {result.peak_probability:.12g}")
    return result, state


def _t3_layout_check(g: FunctionTable) -> None:
    if g.params.p == 2:
        raise DomainError("3-term progressions need odd characteristic (p >= 3)")


def run_t3_circuit(g: FunctionTable) -> RunResult:
    """
    Registers (x, step): phases g(x), g(x+step), g(x+2 step) via stacked CADDs, then a QFT on both.
    The zero amplitude is T(g) = E g(x) g(x+step) g(x+2 step).
    """
    _t3_layout_check(g)
    params = g.params
    state = StateVector.uniform(RegisterLayout(params, 2))
    state.apply_phase_oracle(0, g)
    state.apply_cadd(1, 0, 1)
    state.apply_phase_oracle(0, g)
    state.apply_cadd(1, 0, 1)
    state.apply_phase_oracle(0, g)
    state.apply_cadd(1, 0, -1)
    state.apply_cadd(1, 0, -1)
    state.apply_qft(0)
    state.apply_qft(1)

    amplitude = state.amplitude_of([params.zero(), params.zero()])
    return RunResult(
        kind="t3",
        order=1,
        amplitudes=state.layout.total_dim,
        zero_probability=float(abs(amplitude) ** 2),
        exact_expectation=abs(amplitude),
        amplitude=(amplitude.real, amplitude.imag),
        peak=[[0] * params.n, [0] * params.n],
        peak_probability=float(abs(amplitude) ** 2),
        query_count=state.counts.oracle,
        qft_count=state.counts.qft,
        cadd_count=state.counts.cadd,
    )


def run_t3_hadamard(g: FunctionTable, part: str = "real", m: Optional[int] = None,
                    seed: Optional[int] = None) -> HadamardTestResult:
    """
    Hadamard test on the progression phase: ancilla H, controlled oracles around uncontrolled CADDs, H.
    P(ancilla 0) = (1 + Re T(g)) / 2; part="imag" inserts a -pi/2 ancilla phase to read Im T(g).
    With m shots the ancilla is sampled as well.
    """
    _t3_layout_check(g)
    if part not in ("real", "imag"):
        raise ParameterError(f"part must be 'real' or 'imag', got '{part}'")
    state = StateVector.uniform(RegisterLayout(g.params, 2, ancilla=True))
    state.apply_ancilla_hadamard()
    state.controlled_phase_oracle(0, g)
    state.apply_cadd(1, 0, 1)
    state.controlled_phase_oracle(0, g)
    state.apply_cadd(1, 0, 1)
    state.controlled_phase_oracle(0, g)
    state.apply_cadd(1, 0, -1)
    state.apply_cadd(1, 0, -1)
    if part == "imag":
        state.apply_ancilla_phase(-np.pi / 2)
    state.apply_ancilla_hadamard()

    zero_probability = state.ancilla_probability(0)
    result = HadamardTestResult(
        part=part,
        value=2 * zero_probability - 1,
        ancilla_zero_probability=zero_probability,
        query_count=state.counts.oracle,
        cadd_count=state.counts.cadd,
    )
    if m is not None:
        if seed is None:
            raise ParameterError("Sampled Hadamard tests need a seed")
        shots = state.sample(m, seed)
        successes = int(np.count_nonzero(shots < state.layout.register_dim))
        estimate = estimate_from_shots(successes, m, seed, exact=zero_probability)
        result.estimate = estimate
        result.value_estimate = 2 * estimate.estimate - 1
        result.value_interval = (2 * estimate.estimate - 1 - 2 * estimate.radius,
                                 2 * estimate.estimate - 1 + 2 * estimate.radius)
    return result
