"""
Correlation with phase polynomials and exhaustive farness certification.

A function is certified eps-far from degree <= d when every classical polynomial P of degree
<= d has |<f, omega^P>| < eps. Constant terms only rotate the inner product by a unit phase, so
the sweep runs over the non-constant monomials alone.
"""
from typing import Optional

import numpy as np

from gowers_lab.config_utils import get_settings
from gowers_lab.data_models.models import FarnessCertificate
from gowers_lab.errors import ParameterError, SizeCapError
from gowers_lab.harmonic import FunctionTable
from gowers_lab.logger import logger
from gowers_lab.poly.polynomial import (
    PolynomialSpec,
    evaluate_all,
    monomial_values,
    monomials,
)
from gowers_lab.rng import make_rng

BATCH_ENTRIES = 1 << 20


def correlation(f: FunctionTable, poly: PolynomialSpec) -> float:
    """|E_x f(x) conj(omega^{P(x)})|"""
    if f.params != poly.params:
        raise ParameterError("Function and polynomial live over different groups")
    params = f.params
    conj_phase = params.roots[(-evaluate_all(poly)) % params.p]
    return float(abs(np.mean(f.values * conj_phase)))


def _correlations(f: FunctionTable, coeff_rows: np.ndarray, mono: np.ndarray) -> np.ndarray:
    p = f.params.p
    exponents = (coeff_rows @ mono) % p
    return np.abs(np.mean(f.values[None, :] * f.params.roots[(-exponents) % p], axis=1))


def certify_farness(f: FunctionTable, d: int, epsilon: float, cap: Optional[int] = None) -> FarnessCertificate:
    """
    Exhaustive sweep over every degree <= d polynomial (up to constants)

    Raises:
        SizeCapError: if p^(number of non-constant monomials) exceeds the enumeration cap
    """
    if not 0 < epsilon <= 1:
        raise ParameterError(f"epsilon must lie in (0, 1], got {epsilon}")
    params = f.params
    basis = [e for e in monomials(params, d) if sum(e) > 0]
    total = params.p ** len(basis)
    limit = get_settings().max_polynomials if cap is None else cap
    if total > limit:
        raise SizeCapError(
            f"Degree-{d} sweep over F_{params.p}^{params.n} needs {total} polynomials; cap is {limit}"
        )

    mono = monomial_values(params, basis)
    powers = params.p ** np.arange(len(basis), dtype=np.int64)
    batch = max(1, BATCH_ENTRIES // params.N)

    best_value, best_index = -1.0, 0
    for start in range(0, total, batch):
        index = np.arange(start, min(start + batch, total), dtype=np.int64)
        rows = (index[:, None] // powers[None, :]) % params.p
        values = _correlations(f, rows, mono)
        local = int(np.argmax(values))
        if values[local] > best_value:
            best_value, best_index = float(values[local]), int(index[local])

    coeffs = [(best_index // params.p ** k) % params.p for k in range(len(basis))]
    witness = PolynomialSpec.from_coefficients(params, basis, coeffs)
    logger.debug(f"Farness sweep checked {total} polynomials; best correlation {best_value:.6f}")
    return FarnessCertificate(
        far=best_value < epsilon,
        epsilon=epsilon,
        degree=d,
        max_correlation=best_value,
        witness=witness.to_payload(),
        checked=total,
    )


def certify_farness_sampled(f: FunctionTable, d: int, epsilon: float, samples: int, seed: int) -> FarnessCertificate:
    """Heuristic fallback: random degree <= d polynomials only; 'far' is not a proof"""
    if samples < 1:
        raise ParameterError("samples must be positive")
    params = f.params
    basis = [e for e in monomials(params, d) if sum(e) > 0]
    mono = monomial_values(params, basis)
    rng = make_rng(seed, "farness")
    rows = rng.integers(0, params.p, size=(samples, len(basis)))
    values = _correlations(f, rows, mono)
    best = int(np.argmax(values))
    logger.warning(
        f"Sampled farness certification over {samples} of {params.p ** len(basis)} polynomials is heuristic"
    )
    witness = PolynomialSpec.from_coefficients(params, basis, rows[best])
    return FarnessCertificate(
        far=float(values[best]) < epsilon,
        epsilon=epsilon,
        degree=d,
        max_correlation=float(values[best]),
        witness=witness.to_payload(),
        checked=samples,
        heuristic=True,
    )
