"""
Parallel Oracle - p-并行查询预言机

比特翻转模式：|i_1..i_p⟩|b_1..b_p⟩ ↦ |i_1..i_p⟩|b_1⊕x_{i_1}..b_p⊕x_{i_p}⟩。
相位模式：乘以 (-1)^{Σ_j x_{i_j}}。下标寄存器可带偏移（用于分区搜索），
超出输入长度的下标读到 0。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..boolfn.function import BitsLike
from .._internal.errors import LayoutMismatch
from .statevector import StateVector

logger = logging.getLogger(__name__)

MODES = ("bitflip", "phase")


@dataclass
class ParallelOracle:
    """O_x^{p∥}：输入 x、模式与寄存器绑定"""

    x: np.ndarray
    index_registers: List[str]
    mode: str = "bitflip"
    target_registers: List[str] = field(default_factory=list)
    offsets: Optional[List[int]] = None

    def __post_init__(self) -> None:
        self.x = np.asarray(self.x, dtype=np.uint8).ravel()
        if self.mode not in MODES:
            raise LayoutMismatch(f"unknown oracle mode {self.mode}", mode=self.mode)
        if self.mode == "bitflip" and len(self.target_registers) != len(self.index_registers):
            raise LayoutMismatch("bit-flip oracle needs one target per index register",
                                 indices=len(self.index_registers),
                                 targets=len(self.target_registers))
        if self.offsets is None:
            self.offsets = [0] * len(self.index_registers)

    @property
    def parallelism(self) -> int:
        return len(self.index_registers)

    @classmethod
    def of(cls, x: BitsLike, p: int, mode: str = "bitflip") -> "ParallelOracle":
        """绑定到 RegisterLayout.parallel_query 的寄存器名"""
        targets = [f"b{j}" for j in range(p)] if mode == "bitflip" else []
        return cls(np.asarray(x), [f"i{j}" for j in range(p)], mode, targets)

    def lookup(self, positions: np.ndarray) -> np.ndarray:
        inside = positions < self.x.shape[0]
        values = np.zeros(positions.shape, dtype=np.int64)
        values[inside] = self.x[positions[inside]]
        return values


def apply_oracle(state: StateVector, oracle: ParallelOracle) -> StateVector:
    """原地作用预言机并返回该态"""
    layout = state.layout
    basis = state.basis()
    if oracle.mode == "phase":
        parity = np.zeros(basis.shape, dtype=np.int64)
        for name, offset in zip(oracle.index_registers, oracle.offsets):
            parity ^= oracle.lookup(layout[name].values(basis) + offset)
        state.apply_phase(1.0 - 2.0 * parity)
        return state
    target = basis.copy()
    for name, tname, offset in zip(oracle.index_registers, oracle.target_registers,
                                   oracle.offsets):
        treg = layout[tname]
        if treg.width != 1:
            raise LayoutMismatch(f"target register {tname} must be one qubit", register=tname)
        target ^= oracle.lookup(layout[name].values(basis) + offset) << treg.start
    state.apply_permutation(target)
    return state
