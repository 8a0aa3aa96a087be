"""
Fourier analysis on F_p^n by direct summation.

Conventions: f^(gamma) = E_x f(x) conj(chi_gamma(x)), f(x) = sum_gamma f^(gamma) chi_gamma(x),
(f * g)(x) = E_y f(y) g(x - y).
"""
from typing import Sequence

import numpy as np

from gowers_lab.errors import ParameterError
from gowers_lab.group_core import GroupVector, check_cap
from gowers_lab.harmonic.tables import FunctionTable, SpectrumTable, _check_same


def _character_matrix(table: FunctionTable) -> np.ndarray:
    params = table.params
    check_cap(params.N * params.N, what="character-matrix entries")
    return params.roots[params.dot_table]


def fourier(f: FunctionTable) -> SpectrumTable:
    chars = _character_matrix(f)
    return SpectrumTable(f.params, np.conj(chars) @ f.values / f.params.N)


def inverse_fourier(spectrum: FunctionTable) -> FunctionTable:
    chars = _character_matrix(spectrum)
    return FunctionTable(spectrum.params, chars @ spectrum.values)


def parseval_gap(f: FunctionTable) -> float:
    """|sum |f^|^2 - E|f|^2|, zero up to rounding"""
    spectrum = fourier(f)
    return abs(float(np.sum(np.abs(spectrum.values) ** 2)) - float(np.mean(np.abs(f.values) ** 2)))


def convolve(f: FunctionTable, g: FunctionTable) -> FunctionTable:
    params = _check_same(f, g)
    shifted = g.values[params.sub_table]  # shifted[x, y] = g(x - y)
    return FunctionTable(params, np.mean(f.values[None, :] * shifted, axis=1))


def autocorrelation(f: FunctionTable, a: GroupVector) -> complex:
    """Corr_f(a) = E_x f(x) conj(f(x + a))"""
    if a.params != f.params:
        raise ParameterError("Shift belongs to a different group")
    shifted = f.values[f.params.add_table[:, a.linear_index]]
    return complex(np.mean(f.values * np.conj(shifted)))


def finite_difference(f: FunctionTable, a: GroupVector) -> FunctionTable:
    """Delta_a f(x) = f(x) conj(f(x + a))"""
    if a.params != f.params:
        raise ParameterError("Shift belongs to a different group")
    shifted = f.values[f.params.add_table[:, a.linear_index]]
    return FunctionTable(f.params, f.values * np.conj(shifted))


def iterated_difference(f: FunctionTable, x: GroupVector, hs: Sequence[GroupVector]) -> complex:
    """Delta_{h_1..h_k} f(x): product over subsets S of C^{|S|} f(x + sum_{i in S} h_i)"""
    k = len(hs)
    result = 1.0 + 0.0j
    for mask in range(1 << k):
        point = x
        for i in range(k):
            if mask >> i & 1:
                point = point + hs[i]
        value = f(point)
        result *= np.conj(value) if bin(mask).count("1") % 2 else value
    return complex(result)
