"""
Quantum Round Program - 轮次化量子程序

程序为 U_0, O, U_1, O, ..., U_k 加最终测量；每个 U_i 是门列表。
门词汇：H、X、Z、受控 H 层、扩散、经典函数相位、寄存器置换。
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..boolfn.function import BitsLike
from .._internal.errors import LayoutMismatch
from .._internal.seeding import make_rng
from .oracle import ParallelOracle, apply_oracle
from .statevector import RegisterLayout, StateVector, sample_outcomes

logger = logging.getLogger(__name__)

H_MATRIX = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
X_MATRIX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Z_MATRIX = np.array([[1, 0], [0, -1]], dtype=np.complex128)


class Gate:
    """门的基类：apply 原地作用，describe 返回追踪记录"""

    label = "gate"
    register: str

    def apply(self, state: StateVector) -> None:
        raise NotImplementedError

    def describe(self) -> Dict[str, Any]:
        return {"gate": self.label, "registers": [self.register]}


@dataclass
class _SingleQubitLayer(Gate):
    register: str
    matrix = H_MATRIX

    def apply(self, state: StateVector) -> None:
        for q in state.layout[self.register].qubits:
            state.apply_single(self.matrix, q)


@dataclass
class Hadamard(_SingleQubitLayer):
    label = "H"
    matrix = H_MATRIX


@dataclass
class PauliX(_SingleQubitLayer):
    label = "X"
    matrix = X_MATRIX


@dataclass
class PauliZ(_SingleQubitLayer):
    label = "Z"
    matrix = Z_MATRIX


@dataclass
class ControlledHadamard(Gate):
    """控制位等于 control_value 时在寄存器上作用 H 层"""

    control: str
    register: str
    control_value: int = 1
    label = "CH"

    def apply(self, state: StateVector) -> None:
        ctrl = state.layout[self.control]
        if ctrl.width != 1:
            raise LayoutMismatch(f"control register {self.control} must be one qubit")
        for q in state.layout[self.register].qubits:
            state.apply_controlled(H_MATRIX, q, ctrl.start, self.control_value)

    def describe(self) -> Dict[str, Any]:
        return {"gate": self.label, "registers": [self.control, self.register],
                "control_value": self.control_value}


@dataclass
class Diffusion(Gate):
    """寄存器上的 2|s⟩⟨s| - I"""

    register: str
    label = "D"

    def apply(self, state: StateVector) -> None:
        reg = state.layout[self.register]
        if reg.width == 0:
            return
        Hadamard(self.register).apply(state)
        values = reg.values(state.basis())
        state.apply_phase(np.where(values == 0, 1.0, -1.0))
        Hadamard(self.register).apply(state)


@dataclass
class PhaseFunction(Gate):
    """|v⟩ ↦ (-1)^{table[v]} |v⟩，table 为寄存器取值上的经典位表"""

    register: str
    table: np.ndarray = field(repr=False)
    label = "PHASE"

    def apply(self, state: StateVector) -> None:
        values = state.layout[self.register].values(state.basis())
        bits = np.asarray(self.table, dtype=np.int64)
        state.apply_phase(1.0 - 2.0 * bits[values])


@dataclass
class Permutation(Gate):
    """寄存器取值置换 v ↦ mapping[v]"""

    register: str
    mapping: np.ndarray = field(repr=False)
    label = "PERM"

    def __post_init__(self) -> None:
        self.mapping = np.asarray(self.mapping, dtype=np.int64)
        if sorted(self.mapping.tolist()) != list(range(self.mapping.shape[0])):
            raise LayoutMismatch("register mapping is not a permutation")

    def apply(self, state: StateVector) -> None:
        reg = state.layout[self.register]
        if self.mapping.shape[0] != 1 << reg.width:
            raise LayoutMismatch(f"mapping size does not match register {self.register}")
        basis = state.basis()
        values = reg.values(basis)
        cleared = basis & ~(((1 << reg.width) - 1) << reg.start)
        state.apply_permutation(cleared | (self.mapping[values] << reg.start))


def xor_constant(register: str, width: int, value: int) -> Permutation:
    """把寄存器从 |0⟩ 制备到 |value⟩ 的置换（v ↦ v ⊕ value）"""
    return Permutation(register, np.arange(1 << width, dtype=np.int64) ^ int(value))


@dataclass
class OracleSpec:
    """程序中预言机调用的寄存器绑定"""

    index_registers: List[str]
    mode: str = "bitflip"
    target_registers: List[str] = field(default_factory=list)
    offsets: Optional[List[int]] = None

    def bind(self, x: BitsLike) -> ParallelOracle:
        return ParallelOracle(np.asarray(x), list(self.index_registers), self.mode,
                              list(self.target_registers),
                              None if self.offsets is None else list(self.offsets))

    @property
    def parallelism(self) -> int:
        return len(self.index_registers)


@dataclass
class QuantumRoundProgram:
    """U_0, O, U_1, ..., O, U_k 与测量寄存器"""

    layout: RegisterLayout
    layers: List[List[Gate]]
    oracle: OracleSpec
    measure: List[str]
    name: str = "program"

    def __post_init__(self) -> None:
        if not self.layers:
            raise LayoutMismatch("a program needs at least one unitary layer")
        for reg in self.oracle.index_registers + self.oracle.target_registers + self.measure:
            self.layout[reg]

    @property
    def rounds(self) -> int:
        return len(self.layers) - 1

    @property
    def parallelism(self) -> int:
        return self.oracle.parallelism


@dataclass
class ProgramResult:
    distribution: Dict[Tuple[int, ...], float]
    rounds: int
    counts: Optional[Dict[Tuple[int, ...], int]] = None
    trace: List[Dict[str, Any]] = field(default_factory=list)

    def probability(self, predicate) -> float:
        return float(sum(p for o, p in self.distribution.items() if predicate(o)))

    def distribution_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["outcome", "probability"])
        for outcome in sorted(self.distribution):
            writer.writerow([" ".join(str(v) for v in outcome),
                             f"{self.distribution[outcome]:.12g}"])
        return buf.getvalue()

    def trace_jsonl(self) -> str:
        return "".join(json.dumps(row, ensure_ascii=False) + "\n" for row in self.trace)


def run_program(prog: QuantumRoundProgram, x: BitsLike, shots: Optional[int] = None,
                seed: int = 0) -> ProgramResult:
    """精确运行程序，返回测量分布（可选按种子采样 shots 次）"""
    state = StateVector(prog.layout)
    oracle = prog.oracle.bind(x)
    trace: List[Dict[str, Any]] = []
    step = 0
    for t, layer in enumerate(prog.layers):
        if t > 0:
            apply_oracle(state, oracle)
            state.check_norm()
            trace.append({"step": step, "oracle": oracle.mode,
                          "registers": list(prog.oracle.index_registers)})
            step += 1
        for gate in layer:
            gate.apply(state)
            state.check_norm()
            trace.append({"step": step, **gate.describe()})
            step += 1
    distribution = state.register_distribution(prog.measure)
    counts = None
    if shots:
        counts = sample_outcomes(distribution, shots, make_rng(seed))
    logger.debug("program %s: %d rounds, %d qubits", prog.name, prog.rounds,
                 prog.layout.qubit_count)
    return ProgramResult(distribution, prog.rounds, counts, trace)
