from enum import Enum
from typing import Any, ClassVar, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field


class FunctionTablePayload(BaseModel):
    """Interchange format of a FunctionTable: values in linear_index order as [re, im] pairs"""
    p: int
    n: int
    values: List[Tuple[float, float]]


class PolynomialTerm(BaseModel):
    exps: List[int]
    coeff: int


class PolynomialPayload(BaseModel):
    p: int
    n: int
    terms: List[PolynomialTerm] = []


class EstimateReport(BaseModel):
    """A sampled estimate next to the exact value the simulator knows"""
    estimate: float
    exact: Optional[float] = None
    m: int
    successes: int
    ci: Tuple[float, float]
    confidence: float
    radius: float
    seed: int


class RunResult(BaseModel):
    kind: str = "ud"
    order: int
    amplitudes: int
    zero_probability: float
    exact_expectation: float
    amplitude: Tuple[float, float]
    peak: Optional[List[List[int]]] = None
    peak_probability: Optional[float] = None
    query_count: int
    conjugate_query_count: int = 0
    qft_count: int
    preparation_qft_count: int = 0
    cadd_count: int = 0
    estimate: Optional[EstimateReport] = None

    def report(self) -> Dict[str, Any]:
        """Flat JSON record: zero probability, peak, counters and (if sampled) p_hat / ci / seed"""
        record: Dict[str, Any] = {
            "zero_probability": self.zero_probability,
            "exact_expectation": self.exact_expectation,
            "peak": self.peak,
            "peak_probability": self.peak_probability,
            "query_count": self.query_count,
            "qft_count": self.qft_count,
        }
        if self.estimate is not None:
            record.update({
                "m": self.estimate.m,
                "p_hat": self.estimate.estimate,
                "ci": list(self.estimate.ci),
                "seed": self.estimate.seed,
            })
        return record


class HadamardTestResult(BaseModel):
    """Ancilla readout 2 P(0) - 1 of a controlled circuit: Re or Im of its phase average"""
    part: str
    value: float
    ancilla_zero_probability: float
    query_count: int
    cadd_count: int
    estimate: Optional[EstimateReport] = None
    value_estimate: Optional[float] = None
    value_interval: Optional[Tuple[float, float]] = None


class GapProvenance(str, Enum):
    LINEAR_LEMMA = "linear_lemma"
    USER_SUPPLIED = "user_supplied"
    EXACT_VS_RANDOM = "exact_vs_random"
    CHARACTER_CORRELATION = "character_correlation"


class TestPlan(BaseModel):
    __test__: ClassVar[bool] = False  # not a pytest class

    d: Optional[int] = None
    gap: float = Field(gt=0.0, le=1.0)
    threshold: float
    m: int = Field(ge=1)
    eta: float = Field(gt=0.0, lt=1.0)
    gap_provenance: Optional[GapProvenance] = None


class Verdict(BaseModel):
    kind: str
    accept: bool
    p_hat: float
    m_used: int
    plan: TestPlan
    seed: int
    exact_probability: float
    total_oracle_queries: int
    total_qfts: int
    ground_truth: Optional[Dict[str, Any]] = None


class FarnessCertificate(BaseModel):
    far: bool
    epsilon: float
    degree: int
    max_correlation: float
    witness: PolynomialPayload
    checked: int
    heuristic: bool = False


class ApMethod(str, Enum):
    EXACT = "exact"
    QUANTUM_T3 = "quantum_t3"
    U2_BOUNDS = "u2_bounds"


class ApEstimate(BaseModel):
    method: ApMethod
    t_f: float
    t_interval: Optional[Tuple[float, float]] = None
    count: float
    count_interval: Optional[Tuple[float, float]] = None
    nontrivial_count: Optional[float] = None
    diagnostics: Dict[str, Any] = {}


class QueryCostReport(BaseModel):
    epsilon: float
    group_size: int
    progression_count: int
    t_f: float
    u2_norm: float
    gowers_term: Optional[float]
    gowers_term_via_t: Optional[float]
    grover_term: Optional[float]
    divergent: bool


class ExperimentConfig(BaseModel):
    """Canonical echo of one CLI invocation"""
    subcommand: str
    p: Optional[int] = None
    n: Optional[int] = None
    d: Optional[int] = None
    poly: Optional[str] = None
    table: Optional[str] = None
    random: Optional[str] = None
    set_spec: Optional[str] = None
    method: Optional[str] = None
    seed: Optional[int] = None
    m: Optional[int] = None
    eta: Optional[float] = None
    eps: Optional[float] = None
    eps1: Optional[float] = None
    eps2: Optional[float] = None
    gap: Optional[float] = None
    delta: Optional[float] = None
    exponent: Optional[str] = None
    shifts: Optional[str] = None
    sweep: Optional[str] = None
    certify: bool = False
    allow_any_regime: bool = False
    top: Optional[int] = None
    cost_eps: Optional[float] = None
    check: bool = False
    format: str = "json"
    output: Optional[str] = None
    max_amplitudes: Optional[int] = None

    def echo(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)
