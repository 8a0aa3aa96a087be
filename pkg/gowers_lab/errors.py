"""
Exception hierarchy for gowers_lab
"""


class GowersLabError(Exception):
    """Base class for every error raised by the library"""


class ParameterError(GowersLabError, ValueError):
    """Mismatched group parameters, out-of-range arguments or violated preconditions"""


class SizeCapError(GowersLabError):
    """An operation would materialize more amplitudes or polynomials than the configured cap"""


class DomainError(GowersLabError, ValueError):
    """Input outside the mathematical domain of an operation (non-prime p, non-unitary oracle, ...)"""


class InternalConsistencyError(GowersLabError, RuntimeError):
    """A quantity that is real/nonnegative by construction came out otherwise, or counters disagree"""
