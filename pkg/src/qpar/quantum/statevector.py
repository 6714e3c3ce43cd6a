"""
StateVector - 态矢量与寄存器布局

基态下标的第 q 位对应第 q 个量子比特（小端）。寄存器是连续的量子比特区间；
读取寄存器值时低位在前。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import ceil, log2
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .._internal.config_tools import current_limits
from .._internal.errors import CapExceeded, LayoutMismatch
from .._internal.workers import ensure_memory

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-9


def index_width(n: int) -> int:
    """寻址 n 个位置所需的量子比特数"""
    return 0 if n <= 1 else ceil(log2(n))


@dataclass(frozen=True)
class Register:
    name: str
    start: int
    width: int

    @property
    def qubits(self) -> range:
        return range(self.start, self.start + self.width)

    def values(self, basis: np.ndarray) -> np.ndarray:
        """每个基态下标上该寄存器的取值"""
        if self.width == 0:
            return np.zeros(basis.shape, dtype=np.int64)
        return (basis >> self.start) & ((1 << self.width) - 1)


@dataclass
class RegisterLayout:
    """寄存器布局：按添加顺序连续分配量子比特"""

    registers: List[Register] = field(default_factory=list)

    @property
    def qubit_count(self) -> int:
        return max((r.start + r.width for r in self.registers), default=0)

    def add(self, name: str, width: int) -> Register:
        if name in self.names():
            raise LayoutMismatch(f"register {name} already defined", register=name)
        reg = Register(name, self.qubit_count, int(width))
        self.registers.append(reg)
        return reg

    def alias(self, name: str, start: int, width: int) -> Register:
        """在已分配的量子比特上定义另一个寄存器视图"""
        if name in self.names() or start + width > self.qubit_count:
            raise LayoutMismatch(f"alias {name} does not fit the layout", register=name)
        reg = Register(name, int(start), int(width))
        self.registers.append(reg)
        return reg

    def names(self) -> List[str]:
        return [r.name for r in self.registers]

    def __getitem__(self, name: str) -> Register:
        for r in self.registers:
            if r.name == name:
                return r
        raise LayoutMismatch(f"unknown register {name}", register=name,
                             available=self.names())

    @classmethod
    def parallel_query(cls, N: int, p: int, workspace: int = 0,
                       targets: bool = True) -> "RegisterLayout":
        """p 个下标寄存器（各 ⌈log2 N⌉ 位）、p 个目标位与工作区"""
        layout = cls()
        for j in range(p):
            layout.add(f"i{j}", index_width(N))
        if targets:
            for j in range(p):
                layout.add(f"b{j}", 1)
        if workspace:
            layout.add("work", workspace)
        return layout


class StateVector:
    """复振幅态矢量（独占使用）"""

    def __init__(self, layout: RegisterLayout, amplitudes: Optional[np.ndarray] = None) -> None:
        n = layout.qubit_count
        cap = current_limits().max_qubits
        if n > cap:
            raise CapExceeded(f"{n} qubits exceed the cap of {cap}", qubits=n, cap=cap)
        self.layout = layout
        if amplitudes is None:
            ensure_memory(16 << n, f"{n}-qubit state")
            amplitudes = np.zeros(1 << n, dtype=np.complex128)
            amplitudes[0] = 1.0
        self.amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << n,):
            raise LayoutMismatch("amplitude vector does not match the layout",
                                 expected=1 << n, got=self.amplitudes.shape[0])

    @property
    def qubit_count(self) -> int:
        return self.layout.qubit_count

    def basis(self) -> np.ndarray:
        return np.arange(self.amplitudes.shape[0], dtype=np.int64)

    def copy(self) -> "StateVector":
        return StateVector(self.layout, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def check_norm(self) -> None:
        deviation = abs(self.norm() - 1.0)
        if deviation > NORM_TOLERANCE:
            raise LayoutMismatch(f"state norm drifted by {deviation:.3e}", deviation=deviation)

    # ---------------------------------------------------------------- gates
    def apply_single(self, matrix: np.ndarray, qubit: int) -> None:
        """在第 qubit 个量子比特上作用 2x2 矩阵"""
        n = self.qubit_count
        view = self.amplitudes.reshape(1 << (n - qubit - 1), 2, 1 << qubit)
        self.amplitudes = np.einsum("ab,ibj->iaj", matrix, view).reshape(-1)

    def apply_controlled(self, matrix: np.ndarray, qubit: int, control: int,
                         control_value: int = 1) -> None:
        before = self.amplitudes.copy()
        self.apply_single(matrix, qubit)
        keep = ((self.basis() >> control) & 1) != control_value
        self.amplitudes[keep] = before[keep]

    def apply_phase(self, phases: np.ndarray) -> None:
        """对角作用：逐基态乘以 phases"""
        self.amplitudes = self.amplitudes * phases

    def apply_permutation(self, target: np.ndarray) -> None:
        """基态 |s⟩ ↦ |target[s]⟩（target 必须是置换）"""
        out = np.zeros_like(self.amplitudes)
        out[target] = self.amplitudes
        self.amplitudes = out

    # ---------------------------------------------------------------- measure
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def register_distribution(self, names: Sequence[str]) -> Dict[Tuple[int, ...], float]:
        """在给定寄存器上测量的精确分布（结果为寄存器取值组成的元组）"""
        regs = [self.layout[n] for n in names]
        basis = self.basis()
        probs = self.probabilities()
        key = np.zeros(basis.shape, dtype=np.int64)
        shift = 0
        for reg in regs:
            key |= reg.values(basis) << shift
            shift += reg.width
        mass = np.bincount(key, weights=probs, minlength=1 << shift)
        out: Dict[Tuple[int, ...], float] = {}
        for k in np.flatnonzero(mass > 1e-15):
            values, s = [], 0
            for reg in regs:
                values.append(int((k >> s) & ((1 << reg.width) - 1)) if reg.width else 0)
                s += reg.width
            out[tuple(values)] = float(mass[k])
        return out


def sample_outcomes(distribution: Dict[Tuple[int, ...], float], shots: int,
                    rng: np.random.Generator) -> Dict[Tuple[int, ...], int]:
    """按精确分布采样 shots 次"""
    outcomes = sorted(distribution)
    probs = np.array([distribution[o] for o in outcomes])
    counts = rng.multinomial(shots, probs / probs.sum())
    return {o: int(c) for o, c in zip(outcomes, counts) if c}
