"""
Classical polynomials over F_p in n variables and their phase functions omega^{P(x)}.

Monomials are ordered by total degree, then lexicographically by exponent vector
(x0 exponent first). This order fixes both the compact-string rendering and the stream of
coefficients consumed by random_polynomial.
"""
import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Tuple, Union

import numpy as np

from gowers_lab.data_models.models import PolynomialPayload, PolynomialTerm
from gowers_lab.errors import ParameterError
from gowers_lab.group_core import GroupParams, GroupVector, check_cap
from gowers_lab.harmonic import FunctionTable
from gowers_lab.rng import make_rng

Exponents = Tuple[int, ...]
Term = Tuple[Exponents, int]


def reduce_exponent(e: int, p: int) -> int:
    """x^e as a function on F_p equals x^{((e - 1) mod (p - 1)) + 1} for e >= 1"""
    if e < 0:
        raise ParameterError(f"Negative exponent {e}")
    if e == 0:
        return 0
    return (e - 1) % (p - 1) + 1


def _monomial_key(exps: Exponents) -> Tuple[int, Exponents]:
    return (sum(exps), exps)


@lru_cache(maxsize=64)
def monomials(params: GroupParams, d: int) -> Tuple[Exponents, ...]:
    """All reduced exponent vectors of total degree <= d, in the documented order"""
    if d < 0:
        raise ParameterError(f"Degree must be nonnegative, got {d}")
    exps = [e for e in itertools.product(range(params.p), repeat=params.n) if sum(e) <= d]
    return tuple(sorted(exps, key=_monomial_key))


@dataclass(frozen=True)
class PolynomialSpec:
    """P = sum c * prod x_i^{e_i}; stored terms have nonzero coefficients and exponents < p"""
    params: GroupParams
    terms: Tuple[Term, ...]
    degree: int = field(init=False, compare=False)

    def __post_init__(self):
        p, n = self.params.p, self.params.n
        for exps, coeff in self.terms:
            if len(exps) != n:
                raise ParameterError(f"Exponent vector {exps} does not have {n} entries")
            if any(not 0 <= e < p for e in exps):
                raise ParameterError(f"Exponent vector {exps} is not reduced modulo x^p = x")
            if not 1 <= coeff < p:
                raise ParameterError(f"Stored coefficient {coeff} must lie in 1..{p - 1}")
        object.__setattr__(self, "terms", tuple(sorted(self.terms, key=lambda t: _monomial_key(t[0]))))
        object.__setattr__(self, "degree", max((sum(e) for e, _ in self.terms), default=0))

    @classmethod
    def from_terms(cls, params: GroupParams, terms: Union[Mapping[Exponents, int], Iterable[Term]]) -> "PolynomialSpec":
        """Reduce exponents (x^p = x), combine like terms mod p and drop zeros"""
        items = terms.items() if isinstance(terms, Mapping) else terms
        combined: Dict[Exponents, int] = {}
        for exps, coeff in items:
            if len(exps) != params.n:
                raise ParameterError(f"Exponent vector {tuple(exps)} does not have {params.n} entries")
            reduced = tuple(reduce_exponent(int(e), params.p) for e in exps)
            combined[reduced] = (combined.get(reduced, 0) + int(coeff)) % params.p
        return cls(params, tuple((e, c) for e, c in combined.items() if c != 0))

    @classmethod
    def zero(cls, params: GroupParams) -> "PolynomialSpec":
        return cls(params, ())

    @classmethod
    def linear(cls, gamma: GroupVector) -> "PolynomialSpec":
        """<gamma, x>"""
        n = gamma.params.n
        terms = [(tuple(1 if j == i else 0 for j in range(n)), c) for i, c in enumerate(gamma.coords)]
        return cls.from_terms(gamma.params, terms)

    @classmethod
    def from_coefficients(cls, params: GroupParams, basis: Iterable[Exponents], coeffs: Iterable[int]) -> "PolynomialSpec":
        return cls.from_terms(params, list(zip(basis, (int(c) for c in coeffs))))

    def __add__(self, other: "PolynomialSpec") -> "PolynomialSpec":
        if other.params != self.params:
            raise ParameterError("Polynomials live over different groups")
        return PolynomialSpec.from_terms(self.params, list(self.terms) + list(other.terms))

    # --- serialization ---

    def to_payload(self) -> PolynomialPayload:
        return PolynomialPayload(
            p=self.params.p,
            n=self.params.n,
            terms=[PolynomialTerm(exps=list(e), coeff=c) for e, c in self.terms],
        )

    @classmethod
    def from_payload(cls, payload: PolynomialPayload) -> "PolynomialSpec":
        params = GroupParams(payload.p, payload.n)
        return cls.from_terms(params, [(tuple(t.exps), t.coeff) for t in payload.terms])

    def to_json(self) -> str:
        return self.to_payload().model_dump_json()

    @classmethod
    def load(cls, path: Union[str, Path]) -> "PolynomialSpec":
        return cls.from_payload(PolynomialPayload.model_validate_json(Path(path).read_text(encoding="utf-8")))

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        rendered: List[str] = []
        for exps, coeff in self.terms:
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"x{i}")
                elif e > 1:
                    factors.append(f"x{i}^{e}")
            if not factors:
                rendered.append(str(coeff))
            elif coeff == 1:
                rendered.append("*".join(factors))
            else:
                rendered.append("*".join([str(coeff)] + factors))
        return " + ".join(rendered)

    def __str__(self) -> str:
        return self.to_string()


_VARIABLE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_polynomial(text: str, params: GroupParams) -> PolynomialSpec:
    """
    Parse the compact form, e.g. "2*x0*x1 + x2^2 - 1" ("**" is accepted for powers)

    Raises:
        ParameterError: on malformed terms or variables outside x0..x{n-1}
    """
    source = text.replace("**", "^").replace(" ", "")
    if not source:
        raise ParameterError("Empty polynomial string")
    source = source.replace("-", "+-")
    terms: List[Term] = []
    for chunk in source.split("+"):
        if chunk == "":
            continue
        sign = 1
        while chunk.startswith("-"):
            sign, chunk = -sign, chunk[1:]
        if not chunk:
            raise ParameterError(f"Dangling sign in polynomial '{text}'")
        coeff = sign
        exps = [0] * params.n
        for factor in chunk.split("*"):
            if factor.isdigit():
                coeff *= int(factor)
                continue
            match = _VARIABLE.match(factor)
            if not match:
                raise ParameterError(f"Cannot parse factor '{factor}' in polynomial '{text}'")
            index = int(match.group(1))
            if index >= params.n:
                raise ParameterError(f"Variable x{index} outside x0..x{params.n - 1}")
            exps[index] += int(match.group(2)) if match.group(2) else 1
        terms.append((tuple(exps), coeff % params.p))
    return PolynomialSpec.from_terms(params, terms)


def _power_mod(base: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.ones_like(base)
    for _ in range(e):
        result = (result * base) % p
    return result


def monomial_values(params: GroupParams, basis: Iterable[Exponents]) -> np.ndarray:
    """(len(basis), N) matrix of monomial values on every x"""
    check_cap(params.N)
    digits = params.digits
    rows = []
    for exps in basis:
        row = np.ones(params.N, dtype=np.int64)
        for i, e in enumerate(exps):
            if e:
                row = (row * _power_mod(digits[:, i], e, params.p)) % params.p
        rows.append(row)
    if not rows:
        return np.zeros((0, params.N), dtype=np.int64)
    return np.stack(rows)


def evaluate(poly: PolynomialSpec, x: GroupVector) -> int:
    if x.params != poly.params:
        raise ParameterError("Point belongs to a different group")
    p = poly.params.p
    total = 0
    for exps, coeff in poly.terms:
        term = coeff
        for xi, e in zip(x.coords, exps):
            for _ in range(e):
                term = (term * xi) % p
        total = (total + term) % p
    return total


def evaluate_all(poly: PolynomialSpec) -> np.ndarray:
    """P(x) for every x in linear_index order"""
    params = poly.params
    if not poly.terms:
        return np.zeros(params.N, dtype=np.int64)
    basis = [e for e, _ in poly.terms]
    coeffs = np.array([c for _, c in poly.terms], dtype=np.int64)
    return (coeffs @ monomial_values(params, basis)) % params.p


def phase_function(poly: PolynomialSpec) -> FunctionTable:
    """omega^{P(x)} from the root-of-unity table"""
    return FunctionTable(poly.params, poly.params.roots[evaluate_all(poly)])


def random_polynomial(params: GroupParams, d: int, seed: int) -> PolynomialSpec:
    """Each monomial of degree <= d gets a coefficient uniform on F_p"""
    if not 0 <= d <= params.n * (params.p - 1):
        raise ParameterError(f"Degree {d} outside 0..n(p-1) = {params.n * (params.p - 1)}")
    basis = monomials(params, d)
    coeffs = make_rng(seed, "polynomial").integers(0, params.p, size=len(basis))
    return PolynomialSpec.from_coefficients(params, basis, coeffs)
