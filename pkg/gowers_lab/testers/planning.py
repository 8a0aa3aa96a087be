"""
Sample-size planning and gap bookkeeping for the norm-based testers.
"""
import math
from typing import Optional

from gowers_lab.data_models.models import GapProvenance, TestPlan
from gowers_lab.errors import ParameterError
from gowers_lab.logger import logger

GAP_EXPONENTS = ("readout", "theorem")


def plan_samples(gap: float, eta: float, d: Optional[int] = None,
                 provenance: Optional[GapProvenance] = None) -> TestPlan:
    """
    Two-sided Hoeffding plan: m = ceil((2 / gap^2) ln(2 / eta)), threshold 1 - gap / 2

    Raises:
        ParameterError: gap outside (0, 1] or eta outside (0, 1)
    """
    if not 0 < gap <= 1:
        raise ParameterError(f"Gap must lie in (0, 1], got {gap}")
    if not 0 < eta < 1:
        raise ParameterError(f"Failure probability must lie in (0, 1), got {eta}")
    m = math.ceil((2.0 / gap ** 2) * math.log(2.0 / eta))
    return TestPlan(d=d, gap=gap, threshold=1.0 - gap / 2, m=m, eta=eta, gap_provenance=provenance)


def gap_from_delta(delta: float, d: int, exponent: str = "theorem") -> float:
    """
    Gap 1 - delta^e for a tester of degree d, with e = 2^(d+2) ("theorem") or 2^(d+1) ("readout").
    The order-(d+1) circuit reads ||f||^(2^(d+2)); the alternative reading is kept for comparison.
    """
    if exponent not in GAP_EXPONENTS:
        raise ParameterError(f"exponent must be one of {GAP_EXPONENTS}, got '{exponent}'")
    if not 0 <= delta < 1:
        raise ParameterError(f"delta must lie in [0, 1), got {delta}")
    if d < 1:
        raise ParameterError(f"Degree must be at least 1, got {d}")
    power = 2 ** (d + 2) if exponent == "theorem" else 2 ** (d + 1)
    return 1.0 - delta ** power


def regime_allows(d: int, p: int) -> bool:
    """Degrees with a known inverse theorem: d <= 3 for every prime, d = 4, 5 for p = 2"""
    if d <= 3:
        return True
    return d <= 5 and p == 2


def check_regime(d: int, p: int, override: bool = False) -> None:
    if regime_allows(d, p):
        return
    if not override:
        raise ParameterError(
            f"Degree {d} over F_{p} is outside the supported inverse-theorem regime; pass the override to proceed"
        )
    logger.warning(f"Testing degree {d} over F_{p} outside the supported regime; the gap is unverified")
