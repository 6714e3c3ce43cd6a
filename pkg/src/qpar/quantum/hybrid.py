"""
Hybrid Algorithms - 经典/量子混合轮次算法

一轮可以是量子 p-并行预言机调用，也可以是经典 p-并行查询批次。
作弊表三轮算法：量子解出 c 份地址、经典读格子、经典验证证书。
2-Adaptive 两轮算法：量子估计每段 TG 并经典读取全部 BC，第二轮经典验证。
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..boolfn.function import BitsLike, BooleanFunction, to_bits, to_index
from ..classical.two_adaptive import (
    certified_answer,
    decode_bicertificates,
    verification_query,
)
from ..constructions.certificates import Certificate
from ..constructions.cheatsheet import cheatsheet_of
from ..constructions.two_adaptive import two_adaptive_of
from .._internal.errors import ParallelismTooSmall
from .._internal.seeding import make_rng
from .solvers import QuantumSolver, default_repetitions, solver_for, solver_output

logger = logging.getLogger(__name__)


@dataclass
class HybridTranscript:
    """每轮 (类型, 并行查询数)、答案与正确性"""

    rounds: List[Tuple[str, int]] = field(default_factory=list)
    answer: Optional[int] = None
    correct: Optional[bool] = None

    @property
    def round_count(self) -> int:
        return len(self.rounds)

    @property
    def max_parallelism(self) -> int:
        return max((size for _, size in self.rounds), default=0)

    def to_jsonl(self) -> str:
        lines = [json.dumps({"round": t + 1, "kind": kind, "queries": size})
                 for t, (kind, size) in enumerate(self.rounds)]
        lines.append(json.dumps({"answer": self.answer, "correct": self.correct}))
        return "\n".join(lines) + "\n"


class _HybridAlgorithm:
    fn: BooleanFunction
    p: int

    def _record(self, transcript: HybridTranscript, kind: str, size: int) -> None:
        if size > self.p:
            raise ParallelismTooSmall(f"{kind} round needs {size} queries, p = {self.p}",
                                      p=self.p, threshold=size)
        transcript.rounds.append((kind, size))

    def _finish(self, transcript: HybridTranscript, bits: np.ndarray, answer: int) -> HybridTranscript:
        transcript.answer = int(answer)
        truth = self.fn.value_or_none(bits)
        transcript.correct = None if truth is None else truth == transcript.answer
        return transcript

    def success_rate(self, inputs, seed: int = 0) -> float:
        """逐输入派生种子的平均正确率"""
        rng = make_rng(seed)
        results = [self.run(x, int(rng.integers(1 << 62))).correct for x in inputs]
        return float(np.mean([bool(r) for r in results])) if results else 0.0


class CheatSheetQuantum(_HybridAlgorithm):
    """作弊表三轮混合算法"""

    def __init__(self, fn: BooleanFunction, p: int, solver: Optional[QuantumSolver] = None,
                 repetitions: Optional[int] = None) -> None:
        self.fn = fn
        self.p = p
        self.sheet = cheatsheet_of(fn)
        layout = self.sheet.layout
        self.solver = solver or solver_for(self.sheet.inner)
        self.repetitions = (default_repetitions(layout.copies, self.solver.exact)
                            if repetitions is None else repetitions)
        self.first_round = layout.copies * self.repetitions * self.solver.queries
        threshold = max(self.first_round, layout.cell_size)
        if p < threshold:
            raise ParallelismTooSmall(f"parallelism {p} below threshold {threshold}",
                                      p=p, threshold=threshold)

    def run(self, x: BitsLike, seed: int = 0) -> HybridTranscript:
        layout = self.sheet.layout
        bits = to_bits(x, layout.total_bits)
        rng = make_rng(seed)
        transcript = HybridTranscript()

        self._record(transcript, "quantum", self.first_round)
        ell = [solver_output(self.solver, bits[list(layout.copy_range(i))], self.repetitions, rng)
               for i in range(layout.copies)]

        cell = list(layout.cell_range(to_index(ell)))
        self._record(transcript, "classical", len(cell))
        cert = Certificate.decode(bits[cell], layout.address_bits)

        entries = [] if cert is None else [idx for idx, _ in cert.entries]
        self._record(transcript, "classical", len(entries))
        if cert is None or not cert.matches(bits):
            return self._finish(transcript, bits, 0)
        return self._finish(transcript, bits, int(self.sheet.checker(cert, ell)))


def cheatsheet_quantum_3round(fn: BooleanFunction, p: int,
                              solver: Optional[QuantumSolver] = None,
                              repetitions: Optional[int] = None) -> CheatSheetQuantum:
    return CheatSheetQuantum(fn, p, solver, repetitions)


class TwoAdaptiveQuantum(_HybridAlgorithm):
    """2-Adaptive-F 两轮混合算法

    第一轮每段运行 r 次 f 的 1-查询量子求解器；每次 f-查询与 AND∘OR 复合，
    占用 n² 个并行查询（读取叠加下标对应的子段）。同一轮经典读取全部 BC。
    """

    def __init__(self, fn: BooleanFunction, solver: Optional[QuantumSolver] = None,
                 repetitions: Optional[int] = None, p: Optional[int] = None) -> None:
        self.fn = fn
        self.structure = two_adaptive_of(fn)
        layout = self.structure.layout
        self.solver = solver or solver_for(self.structure.f)
        self.repetitions = (default_repetitions(layout.segments, self.solver.exact)
                            if repetitions is None else repetitions)
        self.first_round = (layout.segments * self.repetitions * self.solver.queries
                            * layout.subsegment_bits + layout.bc_bits)
        second = layout.segments * layout.n * 2 * layout.n + 1
        self.p = max(self.first_round, second) if p is None else p

    def run(self, x: BitsLike, seed: int = 0) -> HybridTranscript:
        layout = self.structure.layout
        bits = to_bits(x, layout.total_bits)
        rng = make_rng(seed)
        transcript = HybridTranscript()

        self._record(transcript, "quantum+classical", self.first_round)
        tg = [solver_output(self.solver, np.array(self.structure.in_row(bits, i), dtype=np.uint8),
                            self.repetitions, rng)
              for i in range(layout.segments)]
        guess = to_index(tg)
        known: Dict[int, int] = {q: int(bits[q]) for q in range(layout.bc_start, layout.dt_start)}

        bicerts = decode_bicertificates(self.structure, known)
        query = verification_query(self.structure, bicerts, guess)
        self._record(transcript, "classical", len(query))
        known.update((q, int(bits[q])) for q in query)
        return self._finish(transcript, bits,
                            certified_answer(self.structure, known, bicerts, guess, rng))


def two_adaptive_quantum(fn: BooleanFunction, solver: Optional[QuantumSolver] = None,
                         repetitions: Optional[int] = None,
                         p: Optional[int] = None) -> TwoAdaptiveQuantum:
    return TwoAdaptiveQuantum(fn, solver, repetitions, p)
