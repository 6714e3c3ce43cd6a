"""
Solvers - 单轮量子求解器

Deutsch–Jozsa（精确，1 次查询）、Forrelation（1 次查询，接受概率 (1+Φ)/2）
与并行读取（每个位置一个寄存器，精确）。求解器给出单次运行的接受概率；
重复运行后按 cutoff 比例判定输出。
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Protocol

import numpy as np
from scipy.stats import binom

from ..boolfn.function import BitsLike, BooleanFunction, to_bits
from ..constructions.forrelation import NO_THRESHOLD, YES_THRESHOLD
from .._internal.errors import ArityMismatch
from .program import (
    ControlledHadamard,
    Hadamard,
    OracleSpec,
    QuantumRoundProgram,
    run_program,
    xor_constant,
)
from .statevector import RegisterLayout, index_width

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------- programs
@lru_cache(maxsize=32)
def deutsch_jozsa_program(N: int) -> QuantumRoundProgram:
    """H–相位查询–H，测量全零表示常数"""
    if N < 2 or N & (N - 1):
        raise ArityMismatch(f"Deutsch-Jozsa needs N a power of two, got {N}", N=N)
    layout = RegisterLayout()
    layout.add("i0", index_width(N))
    return QuantumRoundProgram(
        layout, [[Hadamard("i0")], [Hadamard("i0")]],
        OracleSpec(["i0"], mode="phase"), ["i0"], name=f"dj_{N}",
    )


@lru_cache(maxsize=32)
def forrelation_program(n: int) -> QuantumRoundProgram:
    """一次相位查询的 Forrelation 程序

    控制位 c 与 n 位寄存器组成 (n+1) 位下标，查询 (X‖Y) 的第 c·2^n + z 位：
    制备 (|0⟩|ψ_X⟩ + |1⟩|ψ_Y⟩)/√2，在 c = 0 分支作用 H^n，再对 c 作用 H。
    c 测得 0 的概率为 (1+Φ)/2。
    """
    layout = RegisterLayout()
    layout.add("z", n)
    layout.add("c", 1)
    layout.alias("zc", 0, n + 1)
    return QuantumRoundProgram(
        layout,
        [[Hadamard("z"), Hadamard("c")],
         [ControlledHadamard("c", "z", control_value=0), Hadamard("c")]],
        OracleSpec(["zc"], mode="phase"),
        ["c"],
        name=f"forrelation_{n}",
    )


def forrelation_accept_probability(x: BitsLike, n: int) -> float:
    """精确接受概率（控制位测得 0）"""
    bits = to_bits(x, 2 << n)
    prog = forrelation_program(n)
    return run_program(prog, bits).probability(lambda o: o[0] == 0)


def deutsch_jozsa_constant_probability(x: BitsLike, N: int) -> float:
    bits = to_bits(x, N)
    return run_program(deutsch_jozsa_program(N), bits).probability(lambda o: o[0] == 0)


# ---------------------------------------------------------------- solvers
class QuantumSolver(Protocol):
    """单轮量子求解器：queries 为每次运行占用的并行查询数"""

    queries: int
    cutoff: float
    exact: bool

    def accept_probability(self, bits: np.ndarray) -> float:
        ...


def majority_success(accept: float, repetitions: int, cutoff: float, value: int) -> float:
    """重复 repetitions 次、接受比例达到 cutoff 判 1 时输出 value 的概率"""
    need = int(np.ceil(cutoff * repetitions - 1e-12))
    p_one = float(binom.sf(need - 1, repetitions, accept))
    return p_one if value == 1 else 1.0 - p_one


def solver_output(solver: QuantumSolver, bits: np.ndarray, repetitions: int,
                  rng: np.random.Generator) -> int:
    accepts = int(rng.binomial(repetitions, solver.accept_probability(bits)))
    return int(accepts >= np.ceil(solver.cutoff * repetitions - 1e-12))


class DJQuantumSolver:
    """修改版 Deutsch–Jozsa：测得非零即判为平衡（输出 1）"""

    queries = 1
    cutoff = 0.5
    exact = True

    def __init__(self, N: int) -> None:
        self.N = N
        deutsch_jozsa_program(N)

    def accept_probability(self, bits: np.ndarray) -> float:
        return 1.0 - deutsch_jozsa_constant_probability(bits, self.N)


class ForrelationQuantumSolver:
    """Forrelation：接受概率 YES ≥ (1+3/5)/2，NO ≤ (1+1/100)/2；阈值取两者中点"""

    queries = 1
    exact = False

    def __init__(self, n: int) -> None:
        self.n = n
        self.cutoff = ((1 + YES_THRESHOLD) / 2 + (1 + NO_THRESHOLD) / 2) / 2

    def accept_probability(self, bits: np.ndarray) -> float:
        return forrelation_accept_probability(bits, self.n)


class ParallelReadSolver:
    """每个位置一个下标寄存器，制备基态后一次比特翻转查询读出全部位"""

    cutoff = 0.5
    exact = True

    def __init__(self, f: BooleanFunction) -> None:
        self.f = f
        self.queries = f.arity
        width = index_width(f.arity)
        layout = RegisterLayout()
        layout.add("i", width)
        layout.add("b", 1)
        self._programs = [
            QuantumRoundProgram(layout, [[xor_constant("i", width, j)], []],
                                OracleSpec(["i"], "bitflip", ["b"]), ["b"],
                                name=f"read_{j}")
            for j in range(f.arity)
        ]

    def read(self, bits: np.ndarray) -> np.ndarray:
        """逐寄存器模拟（寄存器之间无纠缠）"""
        out = np.zeros(self.f.arity, dtype=np.uint8)
        for j, prog in enumerate(self._programs):
            out[j] = int(run_program(prog, bits).probability(lambda o: o[0] == 1) > 0.5)
        return out

    def accept_probability(self, bits: np.ndarray) -> float:
        return float(self.f.value_or_none(self.read(bits)) or 0)


def solver_for(f: BooleanFunction) -> QuantumSolver:
    """按生成器选择求解器：dj / forrelation 用 1-查询程序，其余并行读取"""
    if f.generator == "dj":
        return DJQuantumSolver(f.arity)
    if f.generator == "forrelation":
        return ForrelationQuantumSolver(int(f.params["n"]))
    return ParallelReadSolver(f)


NONEXACT_REPETITIONS = 15


def default_repetitions(copies: int, exact: bool) -> int:
    """精确求解器运行一次；有界误差求解器每份重复 15 + 4⌈log2 c⌉ 次"""
    if exact:
        return 1
    return NONEXACT_REPETITIONS + 4 * index_width(max(copies, 1))
