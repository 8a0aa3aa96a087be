"""
Oracle instances: phase polynomials, Haar-random unimodular functions, and user tables.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from gowers_lab.errors import DomainError
from gowers_lab.group_core import GroupParams, check_cap
from gowers_lab.harmonic import FunctionTable
from gowers_lab.poly.polynomial import PolynomialSpec, phase_function
from gowers_lab.rng import make_rng


class InstanceKind(str, Enum):
    PHASE_POLY = "phase_poly"
    HAAR_RANDOM = "haar_random"
    CUSTOM = "custom"


def haar_random_function(params: GroupParams, seed: int) -> FunctionTable:
    """N independent values uniform on the unit circle"""
    check_cap(params.N)
    angles = make_rng(seed, "haar").uniform(0.0, 2 * np.pi, size=params.N)
    return FunctionTable(params, np.exp(1j * angles))


@dataclass(frozen=True)
class Instance:
    kind: InstanceKind
    table: FunctionTable
    polynomial: Optional[PolynomialSpec] = None
    seed: Optional[int] = None

    def __post_init__(self):
        if not self.table.is_unimodular():
            raise DomainError("Oracle instances must be unimodular")

    @property
    def params(self) -> GroupParams:
        return self.table.params

    @classmethod
    def phase_poly(cls, poly: PolynomialSpec) -> "Instance":
        return cls(InstanceKind.PHASE_POLY, phase_function(poly), polynomial=poly)

    @classmethod
    def haar(cls, params: GroupParams, seed: int) -> "Instance":
        return cls(InstanceKind.HAAR_RANDOM, haar_random_function(params, seed), seed=seed)

    @classmethod
    def custom(cls, table: FunctionTable) -> "Instance":
        return cls(InstanceKind.CUSTOM, table)

    def describe(self) -> str:
        if self.kind is InstanceKind.PHASE_POLY:
            return f"phase_poly({self.polynomial})"
        if self.kind is InstanceKind.HAAR_RANDOM:
            return f"haar({self.seed})"
        return "custom"
