"""
Parity Program - PARITY∘f 的一轮并行程序

m 份内层程序在互不相交的寄存器块中同时运行（每份重复 r 次），
每份按阈值判定后经典地取奇偶。求解器为 Deutsch–Jozsa 且比特数不超过
上限时，构造 m·r 个寄存器的整体程序（带分块偏移的相位查询）并从其测量
分布读出结果；其余情况各块之间没有纠缠，按乘积态由每份的接受概率组合。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import ceil
from typing import List, Optional

import numpy as np

from ..boolfn.function import BitsLike, BooleanFunction, to_bits
from ..constructions.cor import CorParts
from .._internal.config_tools import current_limits
from .._internal.errors import ConstructionFailed, ParallelismTooSmall
from .program import Hadamard, OracleSpec, QuantumRoundProgram, run_program
from .solvers import (
    DJQuantumSolver,
    QuantumSolver,
    default_repetitions,
    majority_success,
    solver_for,
    solver_output,
)
from .statevector import RegisterLayout, index_width

logger = logging.getLogger(__name__)


@dataclass
class ParityProgram:
    """一轮 PARITY∘f 程序；offset 为输入中 PARITY∘f 部分的起始位"""

    m: int
    inner_arity: int
    solver: QuantumSolver
    repetitions: int
    offset: int = 0

    rounds = 1

    @property
    def parallelism(self) -> int:
        return self.m * self.repetitions * self.solver.queries

    def query_range(self) -> range:
        return range(self.offset, self.offset + self.m * self.inner_arity)

    def _blocks(self, x: BitsLike, arity: int) -> List[np.ndarray]:
        bits = to_bits(x, arity)
        a = self.inner_arity
        return [bits[self.offset + i * a:self.offset + (i + 1) * a] for i in range(self.m)]

    def _arity(self, arity: Optional[int]) -> int:
        return self.offset + self.m * self.inner_arity if arity is None else arity

    def joint_program(self) -> Optional[QuantumRoundProgram]:
        """Deutsch–Jozsa 求解器的整体程序：寄存器 b{i}r{t} 查询第 i 块；其余求解器为 None"""
        if not isinstance(self.solver, DJQuantumSolver):
            return None
        width = index_width(self.inner_arity)
        layout = RegisterLayout()
        names, offsets = [], []
        for i in range(self.m):
            for t in range(self.repetitions):
                names.append(layout.add(f"b{i}r{t}", width).name)
                offsets.append(self.offset + i * self.inner_arity)
        return QuantumRoundProgram(
            layout,
            [[Hadamard(n) for n in names], [Hadamard(n) for n in names]],
            OracleSpec(names, mode="phase", offsets=offsets),
            names,
            name=f"parity_dj_{self.m}x{self.repetitions}",
        )

    def method(self) -> str:
        prog = self.joint_program()
        if prog is not None and prog.layout.qubit_count <= current_limits().max_qubits:
            return "joint"
        return "product"

    def _parity_of(self, outcome) -> int:
        need = ceil(self.solver.cutoff * self.repetitions - 1e-12)
        out = 0
        for i in range(self.m):
            row = outcome[i * self.repetitions:(i + 1) * self.repetitions]
            out ^= int(sum(v != 0 for v in row) >= need)
        return out

    def one_probability(self, x: BitsLike, arity: Optional[int] = None) -> float:
        """输出 1 的精确概率"""
        arity = self._arity(arity)
        if self.method() == "joint":
            result = run_program(self.joint_program(), to_bits(x, arity))
            return result.probability(lambda o: self._parity_of(o) == 1)
        return self.product_one_probability(x, arity)

    def product_one_probability(self, x: BitsLike, arity: Optional[int] = None) -> float:
        """按乘积态组合每份的接受概率"""
        prod = 1.0
        for block in self._blocks(x, self._arity(arity)):
            q = majority_success(self.solver.accept_probability(block), self.repetitions,
                                 self.solver.cutoff, 1)
            prod *= 1.0 - 2.0 * q
        return (1.0 - prod) / 2.0

    def sample(self, x: BitsLike, rng: np.random.Generator, arity: Optional[int] = None) -> int:
        out = 0
        for block in self._blocks(x, self._arity(arity)):
            out ^= solver_output(self.solver, block, self.repetitions, rng)
        return out


def parity_parallel_program(m: int, p: int, solver: QuantumSolver, inner_arity: int,
                            repetitions: Optional[int] = None, offset: int = 0) -> ParityProgram:
    r = default_repetitions(m, solver.exact) if repetitions is None else int(repetitions)
    program = ParityProgram(m, inner_arity, solver, r, offset)
    if program.parallelism > p:
        raise ParallelismTooSmall(
            f"parity program needs {program.parallelism} parallel queries, got p = {p}",
            p=p, threshold=program.parallelism,
        )
    return program


def ana_quantum_program(fn: BooleanFunction, p: Optional[int] = None,
                        repetitions: Optional[int] = None) -> ParityProgram:
    """ANA 的一轮程序：只解 PARITY∘内层部分，不查询指针部分"""
    parts = fn.structure
    if fn.generator != "ana" or not isinstance(parts, CorParts):
        raise ConstructionFailed(f"{fn.name} is not an ANA function")
    inner = parts.g.params["g"]
    solver = solver_for(inner)
    m = parts.g.params["f"].arity
    r = default_repetitions(m, solver.exact) if repetitions is None else int(repetitions)
    program = parity_parallel_program(m, m * r * solver.queries if p is None else p, solver,
                                      inner.arity, r, offset=parts.f.arity)
    logger.info(f"🧮 ANA program on {fn.name}: {program.parallelism} parallel queries")
    return program
