"""Gowers uniformity norms over F_p^n: classical references and simulated quantum estimators."""

__version__ = "0.1.0"
