"""
Gate schedules for the U^d circuit.

Register 0 is the accumulator: it starts as x and holds x + omega.h while vertex omega is
visited. Register j + 1 holds h_{j+1} and corresponds to bit j of the vertex bitmask.
Vertices are visited in Gray-code order so each transition costs one CADD.
"""
import json
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from gowers_lab.errors import ParameterError


class StepKind(str, Enum):
    ORACLE = "oracle"
    CADD = "cadd"
    QFT = "qft"


@dataclass(frozen=True)
class CircuitStep:
    kind: StepKind
    register: int = 0
    conjugate: bool = False
    vertex: Optional[int] = None
    src: Optional[int] = None
    dst: Optional[int] = None
    sign: int = 1
    inverse: bool = False

    @classmethod
    def oracle(cls, register: int, conjugate: bool, vertex: Optional[int] = None) -> "CircuitStep":
        return cls(StepKind.ORACLE, register=register, conjugate=conjugate, vertex=vertex)

    @classmethod
    def cadd(cls, src: int, dst: int, sign: int) -> "CircuitStep":
        return cls(StepKind.CADD, register=dst, src=src, dst=dst, sign=sign)

    @classmethod
    def qft(cls, register: int, inverse: bool = False) -> "CircuitStep":
        return cls(StepKind.QFT, register=register, inverse=inverse)

    def to_dict(self) -> Dict[str, Any]:
        if self.kind is StepKind.ORACLE:
            return {"op": "oracle", "register": self.register, "conjugate": self.conjugate,
                    "vertex": self.vertex}
        if self.kind is StepKind.CADD:
            return {"op": "cadd", "src": self.src, "dst": self.dst, "sign": self.sign}
        return {"op": "qft", "register": self.register, "inverse": self.inverse}


@dataclass(frozen=True)
class CircuitPlan:
    d: int
    steps: Tuple[CircuitStep, ...]
    oracle_selection: Optional[Tuple[bool, ...]] = None

    @property
    def register_count(self) -> int:
        return self.d + 1

    @property
    def query_count(self) -> int:
        return sum(1 for s in self.steps if s.kind is StepKind.ORACLE)

    @property
    def conjugate_query_count(self) -> int:
        return sum(1 for s in self.steps if s.kind is StepKind.ORACLE and s.conjugate)

    @property
    def qft_count(self) -> int:
        return sum(1 for s in self.steps if s.kind is StepKind.QFT)

    @property
    def cadd_count(self) -> int:
        return sum(1 for s in self.steps if s.kind is StepKind.CADD)


def gray_code(d: int) -> List[int]:
    return [k ^ (k >> 1) for k in range(2 ** d)]


def build_ud_plan(d: int, selection: Optional[Sequence[bool]] = None) -> CircuitPlan:
    """
    Gray-code schedule for the order-d circuit

    Args:
        d: order, at least 1
        selection: optional mask over the 2^d vertex bitmasks; unselected vertices get no oracle

    Returns:
        CircuitPlan: oracle / CADD steps, accumulator restore, then a QFT on each of the d+1 registers
    """
    if d < 1:
        raise ParameterError(f"Circuit order must be at least 1, got {d}")
    if selection is not None and len(selection) != 2 ** d:
        raise ParameterError(f"Vertex selection needs {2 ** d} entries, got {len(selection)}")

    steps: List[CircuitStep] = []
    previous = 0
    for vertex in gray_code(d):
        if vertex != previous:
            changed = vertex ^ previous
            j = changed.bit_length() - 1
            steps.append(CircuitStep.cadd(src=j + 1, dst=0, sign=1 if vertex & changed else -1))
        if selection is None or selection[vertex]:
            steps.append(CircuitStep.oracle(0, conjugate=bin(vertex).count("1") % 2 == 1, vertex=vertex))
        previous = vertex

    # restore x in the accumulator
    for j in range(d):
        if previous >> j & 1:
            steps.append(CircuitStep.cadd(src=j + 1, dst=0, sign=-1))
    steps.extend(CircuitStep.qft(k) for k in range(d + 1))
    return CircuitPlan(d, tuple(steps), None if selection is None else tuple(bool(s) for s in selection))


def net_cadd_shift(plan: CircuitPlan) -> Dict[int, Dict[int, int]]:
    """
    Composite of the plan's CADDs as dst -> {src: net coefficient}; all CADDs here read registers
    that no CADD writes, so the composite is identity exactly when every coefficient is zero
    """
    written = {s.dst for s in plan.steps if s.kind is StepKind.CADD}
    net: Dict[int, Dict[int, int]] = {}
    for step in plan.steps:
        if step.kind is not StepKind.CADD:
            continue
        if step.src in written:
            raise ParameterError("Shift bookkeeping assumes CADD sources are never CADD targets")
        row = net.setdefault(step.dst, {})
        row[step.src] = row.get(step.src, 0) + step.sign
    return {dst: {src: c for src, c in row.items() if c} for dst, row in net.items() if any(row.values())}


def plan_to_json(plan: CircuitPlan) -> str:
    return json.dumps({
        "d": plan.d,
        "query_count": plan.query_count,
        "qft_count": plan.qft_count,
        "cadd_count": plan.cadd_count,
        "steps": [s.to_dict() for s in plan.steps],
    })
