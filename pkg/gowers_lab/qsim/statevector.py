"""
Dense statevector simulator over r registers of dimension N = p^n, with an optional qubit ancilla.

Composite index: sum_k reg_k * N^k + ancilla * N^r. In the numpy view every base-p digit
gets its own axis, so register k digit i sits on axis offset + (r - 1 - k) * n + (n - 1 - i),
where offset is 1 when the ancilla axis leads and 0 otherwise.
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Tuple, Union

import numpy as np

from gowers_lab.config_utils import get_settings
from gowers_lab.errors import DomainError, InternalConsistencyError, ParameterError
from gowers_lab.group_core import GroupParams, GroupVector, check_cap
from gowers_lab.harmonic import FunctionTable
from gowers_lab.rng import make_rng

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-9
GATE_NORM_TOLERANCE = 1e-12
HEADER_DTYPE = np.dtype("<u4")
AMPLITUDE_DTYPE = np.dtype("<c16")
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)


@dataclass(frozen=True)
class RegisterLayout:
    params: GroupParams
    register_count: int
    ancilla: bool = False
    total_dim: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.register_count < 1:
            raise ParameterError(f"A layout needs at least one register, got {self.register_count}")
        total = self.params.N ** self.register_count * (2 if self.ancilla else 1)
        check_cap(total)
        object.__setattr__(self, "total_dim", total)

    @property
    def register_dim(self) -> int:
        """p^(n r): the size of the register part without the ancilla"""
        return self.params.N ** self.register_count

    @property
    def offset(self) -> int:
        return 1 if self.ancilla else 0

    @property
    def digit_shape(self) -> Tuple[int, ...]:
        return (2,) * self.offset + (self.params.p,) * (self.params.n * self.register_count)

    @property
    def register_shape(self) -> Tuple[int, ...]:
        return (2,) * self.offset + (self.params.N,) * self.register_count

    def register_axis(self, k: int) -> int:
        """Axis of register k in the register-shaped view"""
        self.check_register(k)
        return self.offset + self.register_count - 1 - k

    def digit_axis(self, k: int, i: int) -> int:
        self.check_register(k)
        return self.offset + (self.register_count - 1 - k) * self.params.n + (self.params.n - 1 - i)

    def check_register(self, k: int) -> None:
        if not 0 <= k < self.register_count:
            raise ParameterError(f"Register {k} outside 0..{self.register_count - 1}")

    def composite_index(self, basis: Sequence[GroupVector], ancilla: int = 0) -> int:
        if len(basis) != self.register_count:
            raise ParameterError(f"Expected {self.register_count} register values, got {len(basis)}")
        index = 0
        for k, v in enumerate(basis):
            if v.params != self.params:
                raise ParameterError("Basis vector belongs to a different group")
            index += v.linear_index * self.params.N ** k
        if ancilla not in (0, 1):
            raise ParameterError("Ancilla level must be 0 or 1")
        if ancilla and not self.ancilla:
            raise ParameterError("Layout has no ancilla")
        return index + ancilla * self.register_dim

    def decompose(self, index: int) -> Tuple[Tuple[GroupVector, ...], int]:
        """Inverse of composite_index"""
        if not 0 <= index < self.total_dim:
            raise ParameterError(f"Composite index {index} outside 0..{self.total_dim - 1}")
        ancilla, rest = divmod(index, self.register_dim)
        registers = []
        for _ in range(self.register_count):
            rest, value = divmod(rest, self.params.N)
            registers.append(self.params.element(value))
        return tuple(registers), ancilla


@dataclass
class GateCounts:
    oracle: int = 0
    conjugate_oracle: int = 0
    controlled_oracle: int = 0
    cadd: int = 0
    qft: int = 0
    ancilla_gates: int = 0


class StateVector:
    """Amplitudes of a RegisterLayout; gates mutate in place and return self"""

    def __init__(self, layout: RegisterLayout, amps: np.ndarray):
        amps = np.asarray(amps, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != layout.total_dim:
            raise ParameterError(f"Expected {layout.total_dim} amplitudes, got {amps.shape[0]}")
        self.layout = layout
        self.amps = amps
        self.counts = GateCounts()
        self.debug_checks = get_settings().debug_norm_checks
        self._checked_norm = self.norm() if self.debug_checks else 1.0

    # --- preparation ---

    @classmethod
    def uniform(cls, layout: RegisterLayout) -> "StateVector":
        """Uniform over the registers; the ancilla, if any, starts at level 0"""
        amps = np.zeros(layout.total_dim, dtype=np.complex128)
        amps[: layout.register_dim] = 1.0 / np.sqrt(layout.register_dim)
        return cls(layout, amps)

    @classmethod
    def basis(cls, layout: RegisterLayout, shifts: Sequence[GroupVector], ancilla: int = 0) -> "StateVector":
        amps = np.zeros(layout.total_dim, dtype=np.complex128)
        amps[layout.composite_index(shifts, ancilla)] = 1.0
        return cls(layout, amps)

    # --- views ---

    @property
    def params(self) -> GroupParams:
        return self.layout.params

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))

    def _register_view(self) -> np.ndarray:
        return self.amps.reshape(self.layout.register_shape)

    def _after_gate(self, name: str) -> None:
        if not self.debug_checks:
            return
        norm = self.norm()
        step, drift = abs(norm - self._checked_norm), abs(norm - 1.0)
        self._checked_norm = norm
        logger.debug(f"{name}: norm change {step:.3e}, drift {drift:.3e}")
        if step > GATE_NORM_TOLERANCE:
            raise InternalConsistencyError(f"Norm changed by {step:.3e} in {name}")
        if drift > NORM_TOLERANCE:
            raise InternalConsistencyError(f"Norm drifted by {drift:.3e} after {name}")

    # --- gates ---

    def apply_phase_oracle(self, register: int, f: FunctionTable, conjugate: bool = False) -> "StateVector":
        """U_f (or U_f^dagger) on one register"""
        self._check_oracle(f)
        phases = np.conj(f.values) if conjugate else f.values
        self._multiply_register(self._register_view(), register, phases)
        self.counts.oracle += 1
        if conjugate:
            self.counts.conjugate_oracle += 1
        self._after_gate("oracle")
        return self

    def controlled_phase_oracle(self, register: int, f: FunctionTable, conjugate: bool = False) -> "StateVector":
        """U_f on the ancilla's 1 branch only"""
        if not self.layout.ancilla:
            raise ParameterError("Controlled oracles need a layout with an ancilla")
        self._check_oracle(f)
        phases = np.conj(f.values) if conjugate else f.values
        branch = self._register_view()[1]
        axis = self.layout.register_axis(register) - 1
        self._multiply_axis(branch, axis, phases)
        self.counts.oracle += 1
        self.counts.controlled_oracle += 1
        if conjugate:
            self.counts.conjugate_oracle += 1
        self._after_gate("controlled oracle")
        return self

    def apply_cadd(self, src: int, dst: int, sign: int = 1) -> "StateVector":
        """|x>_src |y>_dst -> |x>_src |y + sign * x>_dst, digit by digit mod p"""
        if src == dst:
            raise ParameterError("CADD source and destination must differ")
        if sign not in (1, -1):
            raise ParameterError(f"CADD sign must be +1 or -1, got {sign}")
        layout, p = self.layout, self.params.p
        values = np.arange(p)
        # new[y, x] = old[y - sign * x, x]
        gather = (values[:, None] - sign * values[None, :]) % p
        state = self.amps.reshape(layout.digit_shape)
        ndim = state.ndim
        for i in range(self.params.n):
            d_axis, s_axis = layout.digit_axis(dst, i), layout.digit_axis(src, i)
            moved = np.moveaxis(state, (d_axis, s_axis), (ndim - 2, ndim - 1))
            index = gather.reshape((1,) * (ndim - 2) + (p, p))
            moved = np.take_along_axis(moved, index, axis=ndim - 2)
            state = np.moveaxis(moved, (ndim - 2, ndim - 1), (d_axis, s_axis))
        self.amps = np.ascontiguousarray(state).reshape(-1)
        self.counts.cadd += 1
        self._after_gate("cadd")
        return self

    def apply_qft(self, register: int, inverse: bool = False) -> "StateVector":
        """n single-digit p-point transforms F[gamma, x] = omega^(gamma x) / sqrt(p)"""
        layout, p = self.layout, self.params.p
        exponents = np.outer(np.arange(p), np.arange(p)) % p
        matrix = self.params.roots[exponents] / np.sqrt(p)
        if inverse:
            matrix = np.conj(matrix)
        state = self.amps.reshape(layout.digit_shape)
        for i in range(self.params.n):
            axis = layout.digit_axis(register, i)
            state = np.moveaxis(np.tensordot(matrix, state, axes=([1], [axis])), 0, axis)
        self.amps = np.ascontiguousarray(state).reshape(-1)
        self.counts.qft += 1
        self._after_gate("qft")
        return self

    def apply_ancilla_hadamard(self) -> "StateVector":
        self._require_ancilla()
        view = self.amps.reshape(2, -1)
        self.amps = (HADAMARD @ view).reshape(-1)
        self.counts.ancilla_gates += 1
        self._after_gate("ancilla hadamard")
        return self

    def apply_ancilla_phase(self, theta: float) -> "StateVector":
        """|1> -> e^(i theta) |1> on the ancilla"""
        self._require_ancilla()
        self.amps[self.layout.register_dim:] *= np.exp(1j * theta)
        self.counts.ancilla_gates += 1
        self._after_gate("ancilla phase")
        return self

    # --- readout ---

    def amplitude_of(self, basis: Sequence[GroupVector], ancilla: int = 0) -> complex:
        return complex(self.amps[self.layout.composite_index(basis, ancilla)])

    def probability_of(self, basis: Sequence[GroupVector], ancilla: int = 0) -> float:
        return float(abs(self.amplitude_of(basis, ancilla)) ** 2)

    def distribution(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def ancilla_probability(self, level: int = 0) -> float:
        self._require_ancilla()
        probs = self.distribution().reshape(2, -1)
        return float(np.sum(probs[level]))

    def sample(self, m: int, seed: int) -> np.ndarray:
        """m i.i.d. composite indices by inverse CDF; deterministic given seed"""
        if m < 1:
            raise ParameterError(f"Sample count must be positive, got {m}")
        cdf = np.cumsum(self.distribution())
        draws = make_rng(seed, "sampling").random(m) * cdf[-1]
        outcomes = np.searchsorted(cdf, draws, side="right")
        return np.minimum(outcomes, self.layout.total_dim - 1)

    # --- dump ---

    def dump(self, path: Union[str, Path]) -> None:
        """16-byte header {p, n, r, ancilla} as little-endian uint32, then complex128 amplitudes"""
        layout = self.layout
        header = np.array([layout.params.p, layout.params.n, layout.register_count, int(layout.ancilla)],
                          dtype=HEADER_DTYPE)
        with open(path, "wb") as f:
            f.write(header.tobytes())
            f.write(self.amps.astype(AMPLITUDE_DTYPE).tobytes())

    @classmethod
    def load(cls, path: Union[str, Path]) -> "StateVector":
        raw = Path(path).read_bytes()
        if len(raw) < 16:
            raise ParameterError(f"State dump '{path}' is shorter than its header")
        p, n, r, ancilla = (int(v) for v in np.frombuffer(raw[:16], dtype=HEADER_DTYPE))
        layout = RegisterLayout(GroupParams(p, n), r, bool(ancilla))
        amps = np.frombuffer(raw[16:], dtype=AMPLITUDE_DTYPE)
        return cls(layout, amps.astype(np.complex128))

    # --- helpers ---

    def _check_oracle(self, f: FunctionTable) -> None:
        if f.params != self.params:
            raise ParameterError("Oracle table belongs to a different group")
        if not f.is_unimodular():
            raise DomainError("Phase oracles need a unimodular table; the gate must be unitary")

    def _require_ancilla(self) -> None:
        if not self.layout.ancilla:
            raise ParameterError("Layout has no ancilla")

    def _multiply_register(self, view: np.ndarray, register: int, phases: np.ndarray) -> None:
        self._multiply_axis(view, self.layout.register_axis(register), phases)

    @staticmethod
    def _multiply_axis(view: np.ndarray, axis: int, phases: np.ndarray) -> None:
        shape = [1] * view.ndim
        shape[axis] = phases.shape[0]
        view *= phases.reshape(shape)

    def __repr__(self) -> str:
        layout = self.layout
        return (f"StateVector(p={layout.params.p}, n={layout.params.n}, r={layout.register_count}, "
                f"ancilla={layout.ancilla})")


def init_uniform(layout: RegisterLayout) -> StateVector:
    return StateVector.uniform(layout)


def init_basis(layout: RegisterLayout, shifts: Sequence[GroupVector]) -> StateVector:
    return StateVector.basis(layout, shifts)
