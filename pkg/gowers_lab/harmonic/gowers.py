"""
Brute-force Gowers norms and inner products, plus the U^2 / U^3 Fourier-side evaluations.

All of these are reference implementations: the circuits in gowers_lab.gowers_circuit are
tested against them.
"""
from typing import Optional, Sequence

import numpy as np

from gowers_lab.errors import InternalConsistencyError, ParameterError
from gowers_lab.group_core import check_cap
from gowers_lab.harmonic.fourier import fourier
from gowers_lab.harmonic.tables import FunctionTable
from gowers_lab.logger import logger

IMAGINARY_TOLERANCE = 1e-10


def gowers_expectation(f: FunctionTable, d: int) -> complex:
    """E_{x,h_1..h_d} Delta_{h_1..h_d} f(x), i.e. ||f||_{U^d}^{2^d} before taking roots"""
    if d < 1:
        raise ParameterError(f"Gowers order must be at least 1, got {d}")
    params = f.params
    check_cap(params.N ** (d + 1))
    add = params.add_table

    # After step j the array holds Delta_{h_1..h_j} f(x) with axes (x, h_j, ..., h_1)
    current = f.values
    for _ in range(d):
        current = current[:, None] * np.conj(current[add])
    return complex(np.mean(current))


def gowers_norm_bruteforce(f: FunctionTable, d: int) -> float:
    expectation = gowers_expectation(f, d)
    if abs(expectation.imag) > IMAGINARY_TOLERANCE:
        raise InternalConsistencyError(
            f"U^{d} expectation has imaginary part {expectation.imag:.3e}; it must be real"
        )
    if expectation.real < -IMAGINARY_TOLERANCE:
        raise InternalConsistencyError(
            f"U^{d} expectation is negative ({expectation.real:.3e}); it must be a norm power"
        )
    return max(expectation.real, 0.0) ** (1.0 / 2 ** d)


def gowers_inner_product(fs: Sequence[Optional[FunctionTable]], d: int) -> complex:
    """
    E_{x,h} prod_omega C^{|omega|} f_omega(x + omega.h)

    Args:
        fs: 2^d tables indexed by the vertex bitmask (bit i of the index is omega_{i+1});
            None stands for the constant function 1
        d: order

    Returns:
        complex: the Gowers inner product
    """
    if d < 1:
        raise ParameterError(f"Gowers order must be at least 1, got {d}")
    if len(fs) != 2 ** d:
        raise ParameterError(f"Expected {2 ** d} vertex tables, got {len(fs)}")
    present = [f for f in fs if f is not None]
    if not present:
        return 1.0 + 0.0j
    params = present[0].params
    if any(f.params != params for f in present):
        raise ParameterError("Vertex tables live on different groups")
    N = params.N
    check_cap(N ** (d + 1))
    add = params.add_table

    total = np.ones((N,) * (d + 1), dtype=np.complex128)
    for mask, table in enumerate(fs):
        if table is None:
            continue
        index = np.arange(N).reshape((N,) + (1,) * d)
        for i in range(d):
            if mask >> i & 1:
                h = np.arange(N).reshape((1,) * (i + 1) + (N,) + (1,) * (d - i - 1))
                index = add[index, h]
        values = table.values[index]
        total *= np.conj(values) if bin(mask).count("1") % 2 else values
    return complex(np.mean(total))


def gowers_u2_via_fourier(f: FunctionTable) -> float:
    """(sum_gamma |f^(gamma)|^4)^(1/4)"""
    spectrum = fourier(f).values
    return float(np.sum(np.abs(spectrum) ** 4)) ** 0.25


def gowers_u3_via_fourier(f: FunctionTable) -> float:
    """
    ||f||_{U^3}^8 as a constrained sum of eight Fourier coefficients.

    The free indices are (g, b1, b2, b3) and b4 = b1 + b2 - b3; with A_g(b) = f^(b+g) conj(f^(b))
    the sum is sum_g sum_{b1+b2=b3+b4} A_g(b1) A_g(b2) conj(A_g(b3) A_g(b4)),
    evaluated here by grouping on s = b1 + b2.
    """
    params = f.params
    N = params.N
    check_cap(N ** 3, what="U^3 constrained-sum terms")
    spectrum = fourier(f).values
    add = params.add_table
    sub = params.sub_table

    per_shift = np.empty(N)
    for g in range(N):
        a = spectrum[add[:, g]] * np.conj(spectrum)
        pair_sums = np.sum(a[None, :] * a[sub], axis=1)  # sum_b A(b) A(s - b)
        per_shift[g] = np.sum(np.abs(pair_sums) ** 2)
    value = float(np.sum(per_shift))
    logger.debug(f"U^3 Fourier sum over N={N}: {value:.12g}")
    return max(value, 0.0) ** 0.125
