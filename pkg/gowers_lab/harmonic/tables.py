"""
Dense complex-valued functions on F_p^n and their spectra.
"""
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Union

import numpy as np

from gowers_lab.data_models.models import FunctionTablePayload
from gowers_lab.errors import ParameterError
from gowers_lab.group_core import GroupParams, GroupVector, check_cap

UNIMODULAR_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class FunctionTable:
    """f: F_p^n -> C stored by linear index; immutable once built"""
    params: GroupParams
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.complex128).reshape(-1)
        if values.shape[0] != self.params.N:
            raise ParameterError(f"Table has {values.shape[0]} entries, expected N = {self.params.N}")
        if not np.all(np.isfinite(values)):
            raise ParameterError("Table values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @cached_property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def is_unimodular(self, tol: float = UNIMODULAR_TOLERANCE) -> bool:
        return bool(np.all(np.abs(np.abs(self.values) - 1.0) <= tol))

    def is_indicator(self) -> bool:
        return bool(np.all((self.values == 0) | (self.values == 1)))

    def mean(self) -> complex:
        return complex(np.mean(self.values))

    def __call__(self, x: GroupVector) -> complex:
        return complex(self.values[x.linear_index])

    def __mul__(self, other: "FunctionTable") -> "FunctionTable":
        _check_same(self, other)
        return type(self)(self.params, self.values * other.values)

    def conjugate(self) -> "FunctionTable":
        return type(self)(self.params, np.conj(self.values))

    def translate(self, a: GroupVector) -> "FunctionTable":
        """x -> f(x + a)"""
        if a.params != self.params:
            raise ParameterError("Translation vector belongs to a different group")
        return type(self)(self.params, self.values[self.params.add_table[:, a.linear_index]])

    def allclose(self, other: "FunctionTable", atol: float = 1e-10) -> bool:
        _check_same(self, other)
        return bool(np.allclose(self.values, other.values, rtol=0.0, atol=atol))

    @classmethod
    def constant(cls, params: GroupParams, value: complex = 1.0) -> "FunctionTable":
        check_cap(params.N)
        return cls(params, np.full(params.N, value, dtype=np.complex128))

    @classmethod
    def character(cls, gamma: GroupVector) -> "FunctionTable":
        """chi_gamma as a table"""
        params = gamma.params
        check_cap(params.N)
        exponents = (params.digits @ np.array(gamma.coords, dtype=np.int64)) % params.p
        return cls(params, params.roots[exponents])

    @classmethod
    def indicator(cls, params: GroupParams, members) -> "FunctionTable":
        check_cap(params.N)
        values = np.zeros(params.N)
        for x in members:
            values[x.linear_index if isinstance(x, GroupVector) else int(x)] = 1.0
        return cls(params, values)

    def to_payload(self) -> FunctionTablePayload:
        return FunctionTablePayload(
            p=self.params.p,
            n=self.params.n,
            values=[(float(v.real), float(v.imag)) for v in self.values],
        )

    @classmethod
    def from_payload(cls, payload: FunctionTablePayload) -> "FunctionTable":
        params = GroupParams(payload.p, payload.n)
        values = np.array([complex(re, im) for re, im in payload.values], dtype=np.complex128)
        return cls(params, values)

    def to_json(self) -> str:
        return self.to_payload().model_dump_json()

    @classmethod
    def from_json(cls, text: str) -> "FunctionTable":
        return cls.from_payload(FunctionTablePayload.model_validate_json(text))

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: Union[str, Path]) -> "FunctionTable":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(p={self.params.p}, n={self.params.n}, sup_norm={self.sup_norm:.6g})"


class SpectrumTable(FunctionTable):
    """Fourier coefficients indexed by character gamma"""


def _check_same(f: FunctionTable, g: FunctionTable) -> GroupParams:
    if f.params != g.params:
        raise ParameterError(
            f"Tables live on different groups: (p={f.params.p}, n={f.params.n}) vs "
            f"(p={g.params.p}, n={g.params.n})"
        )
    return f.params


