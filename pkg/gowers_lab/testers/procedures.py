"""
Accept/reject procedures on top of the sampled U^(d+1) circuit.

Each tester fixes a gap between the YES-side and NO-side zero probabilities, plans m shots,
runs the circuit once per shot and accepts iff the empirical zero frequency reaches the
threshold.
"""
from typing import Any, Dict, Optional

from gowers_lab.data_models.models import GapProvenance, TestPlan, Verdict
from gowers_lab.errors import ParameterError
from gowers_lab.gowers_circuit import run_ud_sampled
from gowers_lab.group_core import check_cap
from gowers_lab.harmonic import FunctionTable
from gowers_lab.logger import logger
from gowers_lab.poly import certify_farness
from gowers_lab.testers.planning import check_regime, plan_samples


def _decide(kind: str, f: FunctionTable, order: int, plan: TestPlan, seed: int,
            ground_truth: Optional[Dict[str, Any]] = None) -> Verdict:
    check_cap(f.params.N ** (order + 1))
    result = run_ud_sampled(f, order, plan.m, seed)
    assert result.estimate is not None
    p_hat = result.estimate.estimate
    verdict = Verdict(
        kind=kind,
        accept=p_hat >= plan.threshold,
        p_hat=p_hat,
        m_used=plan.m,
        plan=plan,
        seed=seed,
        exact_probability=result.zero_probability,
        total_oracle_queries=plan.m * 2 ** order,
        total_qfts=plan.m * (order + 1),
        ground_truth=ground_truth,
    )
    logger.info(f"{kind}: {'accept' if verdict.accept else 'reject'} (p_hat={p_hat:.4f}, "
                f"threshold={plan.threshold:.4f}, m={plan.m})")
    return verdict


def _ground_truth(f: FunctionTable, degree: int, epsilon: float) -> Dict[str, Any]:
    return certify_farness(f, degree, epsilon).model_dump(mode="json")


def test_degree_d_exact_vs_random(f: FunctionTable, d: int, eta: float, seed: int) -> Verdict:
    """
    Degree-d phase polynomial (zero probability 1) versus a Haar-random table.
    Markov on E ||f||^(2^(d+2)) <= 1/N with slack 4 gives gap min(1/2, 1 - 4/N).
    """
    if d < 1:
        raise ParameterError(f"Degree must be at least 1, got {d}")
    gap = min(0.5, 1.0 - 4.0 / f.params.N)
    if gap <= 0:
        raise ParameterError(f"N = {f.params.N} is too small for a positive gap against random tables")
    plan = plan_samples(gap, eta, d=d, provenance=GapProvenance.EXACT_VS_RANDOM)
    return _decide("exact_vs_random", f, d + 1, plan, seed)


def test_linear(f: FunctionTable, epsilon: float, eta: float, seed: int, certify: bool = False) -> Verdict:
    """Order-2 circuit with gap 1 - eps^4: an eps-far f has ||f||_{U^2}^8 <= eps^4"""
    if not 0 < epsilon < 1:
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon}")
    plan = plan_samples(1.0 - epsilon ** 4, eta, d=1, provenance=GapProvenance.LINEAR_LEMMA)
    truth = _ground_truth(f, 1, epsilon) if certify else None
    return _decide("linear", f, 2, plan, seed, truth)


def test_character_two_sided(f: FunctionTable, epsilon_yes: float, epsilon_no: float, eta: float,
                             seed: int, certify: bool = False) -> Verdict:
    """
    YES: some character has |<f, chi>| > eps1, so the zero probability is at least eps1^8.
    NO: every character has |<f, chi>| <= eps2, so it is at most eps2^4. Threshold at the midpoint.
    """
    if not (0 < epsilon_yes <= 1 and 0 < epsilon_no < 1):
        raise ParameterError("Correlation levels must lie in (0, 1]")
    if epsilon_yes <= epsilon_no ** 0.5:
        raise ParameterError(f"Need eps1 > sqrt(eps2); got eps1={epsilon_yes}, sqrt(eps2)={epsilon_no ** 0.5:.6g}")
    high, low = epsilon_yes ** 8, epsilon_no ** 4
    plan = plan_samples(high - low, eta, d=1, provenance=GapProvenance.CHARACTER_CORRELATION)
    plan = plan.model_copy(update={"threshold": (high + low) / 2})
    truth = _ground_truth(f, 1, epsilon_no) if certify else None
    return _decide("character", f, 2, plan, seed, truth)


def test_degree_d_far(f: FunctionTable, d: int, gap: float, eta: float, seed: int,
                      allow_any_regime: bool = False, certify_epsilon: Optional[float] = None) -> Verdict:
    """Order-(d+1) circuit with a caller-supplied gap"""
    if d < 1:
        raise ParameterError(f"Degree must be at least 1, got {d}")
    check_regime(d, f.params.p, allow_any_regime)
    plan = plan_samples(gap, eta, d=d, provenance=GapProvenance.USER_SUPPLIED)
    truth = _ground_truth(f, d, certify_epsilon) if certify_epsilon is not None else None
    return _decide("degree_d_far", f, d + 1, plan, seed, truth)


# pytest would otherwise collect these as tests wherever they are imported
for _procedure in (test_degree_d_exact_vs_random, test_linear, test_character_two_sided, test_degree_d_far):
    _procedure.__test__ = False  # type: ignore[attr-defined]
