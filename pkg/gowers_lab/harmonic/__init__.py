from .fourier import (
    autocorrelation,
    convolve,
    finite_difference,
    fourier,
    inverse_fourier,
    iterated_difference,
    parseval_gap,
)
from .gowers import (
    gowers_expectation,
    gowers_inner_product,
    gowers_norm_bruteforce,
    gowers_u2_via_fourier,
    gowers_u3_via_fourier,
)
from .progressions import ProgressionCount, count_3aps_exact, t3, t3_via_fourier
from .tables import FunctionTable, SpectrumTable

__all__ = [
    "FunctionTable",
    "ProgressionCount",
    "SpectrumTable",
    "autocorrelation",
    "convolve",
    "count_3aps_exact",
    "finite_difference",
    "fourier",
    "gowers_expectation",
    "gowers_inner_product",
    "gowers_norm_bruteforce",
    "gowers_u2_via_fourier",
    "gowers_u3_via_fourier",
    "inverse_fourier",
    "iterated_difference",
    "parseval_gap",
    "t3",
    "t3_via_fourier",
]
