"""
The 3-AP trilinear form T(f, g, h) = E_{x,y} f(x) g(x+y) h(x+2y) and exact progression counts.
"""
from typing import NamedTuple

import numpy as np

from gowers_lab.errors import DomainError, InternalConsistencyError
from gowers_lab.group_core import GroupParams
from gowers_lab.harmonic.fourier import fourier
from gowers_lab.harmonic.tables import FunctionTable, _check_same

FOURIER_AGREEMENT = 1e-10


class ProgressionCount(NamedTuple):
    count: int
    t_value: float
    nontrivial: int


def _require_odd_characteristic(params: GroupParams) -> None:
    if params.p == 2:
        raise DomainError("3-term progressions degenerate for p = 2 (x + 2y = x)")


def t3_via_fourier(f: FunctionTable, g: FunctionTable, h: FunctionTable) -> complex:
    """sum_gamma f^(gamma) g^(-2 gamma) h^(gamma)"""
    params = _check_same(f, g)
    _check_same(f, h)
    _require_odd_characteristic(params)
    minus_two = params.scalar_table((-2) % params.p)
    return complex(np.sum(fourier(f).values * fourier(g).values[minus_two] * fourier(h).values))


def t3(f: FunctionTable, g: FunctionTable, h: FunctionTable, verify: bool = False) -> complex:
    params = _check_same(f, g)
    _check_same(f, h)
    _require_odd_characteristic(params)
    add = params.add_table
    two = params.scalar_table(2)

    # rows x, columns y
    terms = f.values[:, None] * g.values[add] * h.values[add[:, two]]
    direct = complex(np.mean(terms))

    if verify:
        via_fourier = t3_via_fourier(f, g, h)
        if abs(direct - via_fourier) > FOURIER_AGREEMENT:
            raise InternalConsistencyError(
                f"T3 direct sum {direct} disagrees with Fourier sum {via_fourier}"
            )
    return direct


def count_3aps_exact(indicator: FunctionTable) -> ProgressionCount:
    """
    Ordered pairs (x, d) with x, x+d, x+2d all in S, degenerate d = 0 included.

    Returns:
        ProgressionCount: raw count, T(f) = count / N^2, and count minus the |S| degenerate pairs
    """
    params = indicator.params
    _require_odd_characteristic(params)
    if not indicator.is_indicator():
        raise DomainError("Set indicator must take only the values 0 and 1")
    s = indicator.values.real.astype(np.int64)
    add = params.add_table
    two = params.scalar_table(2)
    count = int(np.sum(s[:, None] * s[add] * s[add[:, two]]))
    return ProgressionCount(
        count=count,
        t_value=count / params.N ** 2,
        nontrivial=count - int(np.sum(s)),
    )
