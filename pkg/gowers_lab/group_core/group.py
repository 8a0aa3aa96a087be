"""
Arithmetic, enumeration and characters for G = F_p^n.

Elements are addressed by a base-p linear index with digit 0 least significant. By
self-duality the same GroupVector also names the character chi_gamma(x) = omega^<gamma, x>.
"""
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np

from gowers_lab.config_utils import get_settings
from gowers_lab.errors import DomainError, ParameterError, SizeCapError

UnitComplex = complex


def is_prime(p: int) -> bool:
    """Trial division"""
    if p < 2:
        return False
    for q in range(2, math.isqrt(p) + 1):
        if p % q == 0:
            return False
    return True


def check_cap(count: int, cap: Optional[int] = None, what: str = "amplitudes") -> None:
    """Raise SizeCapError when `count` exceeds the cap (the configured amplitude cap by default)"""
    limit = get_settings().max_amplitudes if cap is None else cap
    if count > limit:
        raise SizeCapError(f"Refusing to materialize {count} {what}; cap is {limit}")


@dataclass(frozen=True)
class GroupParams:
    """F_p^n with N = p^n elements"""
    p: int
    n: int
    N: int = field(init=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not isinstance(self.n, (int, np.integer)):
            raise ParameterError("p and n must be integers")
        object.__setattr__(self, "p", int(self.p))
        object.__setattr__(self, "n", int(self.n))
        if self.n < 1:
            raise ParameterError(f"n must be at least 1, got {self.n}")
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")
        N = self.p ** self.n
        if N > np.iinfo(np.int64).max:
            raise SizeCapError(f"p^n = {self.p}^{self.n} does not fit a 64-bit index")
        object.__setattr__(self, "N", N)

    @cached_property
    def roots(self) -> np.ndarray:
        """The p roots of unity omega^k, one trigonometric evaluation per residue"""
        k = np.arange(self.p)
        table = np.cos(2 * np.pi * k / self.p) + 1j * np.sin(2 * np.pi * k / self.p)
        table[0] = 1.0
        if self.p == 2:
            table[1] = -1.0
        table.setflags(write=False)
        return table

    @cached_property
    def digits(self) -> np.ndarray:
        """(N, n) array of base-p digits of every linear index"""
        index = np.arange(self.N, dtype=np.int64)
        powers = self.p ** np.arange(self.n, dtype=np.int64)
        table = (index[:, None] // powers[None, :]) % self.p
        table.setflags(write=False)
        return table

    @cached_property
    def powers(self) -> np.ndarray:
        table = self.p ** np.arange(self.n, dtype=np.int64)
        table.setflags(write=False)
        return table

    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != self.n:
            raise ParameterError(f"Expected {self.n} coordinates, got {len(coords)}")
        index = 0
        for i, c in enumerate(coords):
            if not 0 <= c < self.p:
                raise ParameterError(f"Coordinate {c} outside 0..{self.p - 1}")
            index += int(c) * self.p ** i
        return index

    def decode(self, index: int) -> Tuple[int, ...]:
        if not 0 <= index < self.N:
            raise ParameterError(f"Linear index {index} outside 0..{self.N - 1}")
        return tuple((index // self.p ** i) % self.p for i in range(self.n))

    def _from_digits(self, digits: np.ndarray) -> np.ndarray:
        return (digits % self.p) @ self.powers

    @cached_property
    def add_table(self) -> np.ndarray:
        """add_table[x, y] = linear index of x + y"""
        check_cap(self.N * self.N, what="index-table entries")
        d = self.digits
        table = self._from_digits(d[:, None, :] + d[None, :, :])
        table.setflags(write=False)
        return table

    @cached_property
    def neg_table(self) -> np.ndarray:
        table = self._from_digits(-self.digits)
        table.setflags(write=False)
        return table

    @cached_property
    def sub_table(self) -> np.ndarray:
        """sub_table[x, y] = linear index of x - y"""
        check_cap(self.N * self.N, what="index-table entries")
        d = self.digits
        table = self._from_digits(d[:, None, :] - d[None, :, :])
        table.setflags(write=False)
        return table

    @cached_property
    def dot_table(self) -> np.ndarray:
        """dot_table[gamma, x] = <gamma, x> mod p"""
        check_cap(self.N * self.N, what="index-table entries")
        table = (self.digits @ self.digits.T) % self.p
        table.setflags(write=False)
        return table

    def scalar_table(self, c: int) -> np.ndarray:
        """Linear index of c*x for every x"""
        return self._from_digits(int(c) * self.digits)

    def zero(self) -> "GroupVector":
        return GroupVector(self, (0,) * self.n)

    def vector(self, coords: Sequence[int]) -> "GroupVector":
        return GroupVector(self, tuple(int(c) for c in coords))

    def element(self, index: int) -> "GroupVector":
        return GroupVector(self, self.decode(int(index)))


@dataclass(frozen=True)
class GroupVector:
    """An element of F_p^n, equally a character index"""
    params: GroupParams
    coords: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.params.n:
            raise ParameterError(f"Expected {self.params.n} coordinates, got {len(self.coords)}")
        for c in self.coords:
            if not 0 <= c < self.params.p:
                raise ParameterError(f"Coordinate {c} outside 0..{self.params.p - 1}")

    @property
    def linear_index(self) -> int:
        return self.params.encode(self.coords)

    def __add__(self, other: "GroupVector") -> "GroupVector":
        return add(self, other)

    def __sub__(self, other: "GroupVector") -> "GroupVector":
        return add(self, neg(other))

    def __neg__(self) -> "GroupVector":
        return neg(self)

    def __rmul__(self, c: int) -> "GroupVector":
        return scalar_mul(c, self)

    def __repr__(self) -> str:
        return f"GroupVector(p={self.params.p}, coords={self.coords})"


def _same_params(x: GroupVector, y: GroupVector) -> GroupParams:
    if x.params != y.params:
        raise ParameterError(
            f"Group parameters differ: (p={x.params.p}, n={x.params.n}) vs "
            f"(p={y.params.p}, n={y.params.n})"
        )
    return x.params


def add(x: GroupVector, y: GroupVector) -> GroupVector:
    params = _same_params(x, y)
    return GroupVector(params, tuple((a + b) % params.p for a, b in zip(x.coords, y.coords)))


def neg(x: GroupVector) -> GroupVector:
    p = x.params.p
    return GroupVector(x.params, tuple((-a) % p for a in x.coords))


def scalar_mul(c: int, x: GroupVector) -> GroupVector:
    p = x.params.p
    if not 0 <= c < p:
        raise ParameterError(f"Scalar {c} outside 0..{p - 1}")
    return GroupVector(x.params, tuple((c * a) % p for a in x.coords))


def dot(gamma: GroupVector, x: GroupVector) -> int:
    params = _same_params(gamma, x)
    return sum(g * a for g, a in zip(gamma.coords, x.coords)) % params.p


def character_eval(gamma: GroupVector, x: GroupVector) -> UnitComplex:
    """omega^<gamma, x>, read from the precomputed root table"""
    return complex(gamma.params.roots[dot(gamma, x)])


def enumerate_group(params: GroupParams, cap: Optional[int] = None) -> List[GroupVector]:
    """All N elements in linear_index order"""
    check_cap(params.N, cap, what="group elements")
    return [GroupVector(params, tuple(int(c) for c in row)) for row in params.digits]
