"""
Query Model - p-并行经典查询模型

策略每轮给出至多 p 个位置（位或块）或给出最终答案；应答方可以是具体
输入，也可以是自适应对手。查询粒度显式：bit 粒度位置为位下标，应答为位；
block 粒度位置为块下标，应答为块的小端整数值。
"""

from __future__ import annotations

import json
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..boolfn.function import BitsLike, BooleanFunction, to_bits
from .._internal.errors import ArityMismatch, ConstructionFailed, StrategyViolation
from .._internal.seeding import make_rng

logger = logging.getLogger(__name__)

GRANULARITIES = ("bit", "block")


@dataclass(frozen=True)
class Positions:
    """查询位置空间：位置数与每个位置的取值个数"""

    granularity: str
    count: int
    width: int
    arity: int

    @classmethod
    def of(cls, f: BooleanFunction, granularity: str = "bit") -> "Positions":
        if granularity not in GRANULARITIES:
            raise ArityMismatch(f"unknown granularity: {granularity}", granularity=granularity)
        if granularity == "block":
            meta = f.block_meta
            if meta is None:
                raise ArityMismatch(f"{f.name} has no block metadata")
            return cls("block", meta.block_count, meta.block_bits, f.arity)
        return cls("bit", f.arity, 1, f.arity)

    @property
    def alphabet(self) -> int:
        return 1 << self.width

    def value_of(self, bits: np.ndarray, pos: int) -> int:
        if self.width == 1:
            return int(bits[pos])
        start = pos * self.width
        value = 0
        for b in range(self.width):
            if bits[start + b]:
                value |= 1 << b
        return value

    def expand(self, known: Dict[int, int]) -> Dict[int, int]:
        """位置赋值 → 位赋值"""
        if self.width == 1:
            return dict(known)
        out = {}
        for pos, val in known.items():
            for b in range(self.width):
                out[pos * self.width + b] = (val >> b) & 1
        return out


@dataclass(frozen=True)
class Decision:
    """一轮查询（query）或最终答案（answer）"""

    query: Optional[Tuple[int, ...]] = None
    answer: Optional[int] = None

    @classmethod
    def ask(cls, positions: Sequence[int]) -> "Decision":
        return cls(query=tuple(int(i) for i in positions))

    @classmethod
    def output(cls, value: int) -> "Decision":
        return cls(answer=int(value))


@dataclass(frozen=True)
class Round:
    indices: Tuple[int, ...]
    answers: Tuple[int, ...]


@dataclass
class Transcript:
    """查询记录：各轮 (位置集合, 应答)、最终答案与正确性"""

    granularity: str = "bit"
    rounds: List[Round] = field(default_factory=list)
    answer: Optional[int] = None
    correct: Optional[bool] = None

    @property
    def round_count(self) -> int:
        return len(self.rounds)

    @property
    def query_count(self) -> int:
        return sum(len(r.indices) for r in self.rounds)

    def known(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for r in self.rounds:
            out.update(zip(r.indices, r.answers))
        return out

    def to_jsonl(self) -> str:
        lines = [
            json.dumps({"round": t + 1, "granularity": self.granularity,
                        "indices": list(r.indices), "answers": list(r.answers)})
            for t, r in enumerate(self.rounds)
        ]
        lines.append(json.dumps({"answer": self.answer, "rounds": self.round_count,
                                 "queries": self.query_count, "correct": self.correct}))
        return "\n".join(lines) + "\n"


class QueryStrategy(ABC):
    """p-并行查询策略（确定性，或由显式种子驱动的随机策略）"""

    granularity = "bit"

    def __init__(self, p: int) -> None:
        if p < 1:
            raise StrategyViolation(f"parallelism must be positive, got {p}", p=p)
        self.p = int(p)
        self.rng = make_rng(0)

    def reset(self, seed: Optional[int] = None) -> None:
        """运行开始前调用；随机策略据此重建随机流"""
        self.rng = make_rng(0 if seed is None else seed)

    @abstractmethod
    def decide(self, transcript: Transcript) -> Decision:
        ...


class AdaptiveAnswerer(ABC):
    """自适应应答方：逐轮应答，并按需给出与全部应答一致的补全输入"""

    granularity = "bit"

    def __init__(self) -> None:
        self.history: List[Round] = []

    @abstractmethod
    def respond(self, positions: Tuple[int, ...]) -> Tuple[int, ...]:
        ...

    def answer(self, positions: Sequence[int]) -> Tuple[int, ...]:
        positions = tuple(int(i) for i in positions)
        answers = tuple(int(a) for a in self.respond(positions))
        self.history.append(Round(positions, answers))
        return answers

    @abstractmethod
    def completion(self, value: int) -> Optional[np.ndarray]:
        """输出为 value 且与全部应答一致的完整输入；不存在时返回 None"""

    def known(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for r in self.history:
            out.update(zip(r.indices, r.answers))
        return out


class InputOracle(AdaptiveAnswerer):
    """具体输入的应答方"""

    def __init__(self, f: BooleanFunction, x: BitsLike, granularity: str = "bit") -> None:
        super().__init__()
        self.f = f
        self.bits = to_bits(x, f.arity)
        self.positions = Positions.of(f, granularity)
        self.granularity = granularity

    def respond(self, positions: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(self.positions.value_of(self.bits, i) for i in positions)

    def completion(self, value: int) -> Optional[np.ndarray]:
        v = self.f.value_or_none(self.bits)
        return self.bits.copy() if v == value else None


def consistent_with(bits: np.ndarray, rounds: Sequence[Round], positions: Positions) -> bool:
    """补全输入是否与记录中的全部应答一致"""
    return all(
        positions.value_of(bits, i) == a
        for r in rounds
        for i, a in zip(r.indices, r.answers)
    )


def checked_completion(
    answerer: AdaptiveAnswerer, positions: Positions, value: int
) -> Optional[np.ndarray]:
    """取对手的补全并核对其与全部历史应答一致"""
    bits = answerer.completion(value)
    if bits is not None and not consistent_with(bits, answerer.history, positions):
        raise ConstructionFailed(
            f"{type(answerer).__name__} completion contradicts its answers",
            value=value, rounds=len(answerer.history),
        )
    return bits


def run_strategy(
    strategy: QueryStrategy,
    x: Union[BitsLike, AdaptiveAnswerer],
    f: BooleanFunction,
    seed: Optional[int] = None,
    max_rounds: Optional[int] = None,
) -> Transcript:
    """执行策略直到给出答案

    Args:
        strategy: 查询策略
        x: 具体输入或自适应应答方
        f: 目标函数（用于越界检查与正确性判定）
        seed: 随机策略的种子
        max_rounds: 轮数上限，超过时抛出 StrategyViolation
    """
    granularity = strategy.granularity
    positions = Positions.of(f, granularity)
    answerer = x if isinstance(x, AdaptiveAnswerer) else InputOracle(f, x, granularity)
    limit = max_rounds if max_rounds is not None else 4 * positions.count + 8
    strategy.reset(seed)
    transcript = Transcript(granularity=granularity)
    while True:
        decision = strategy.decide(transcript)
        if decision.answer is not None:
            transcript.answer = int(decision.answer)
            break
        query = decision.query or ()
        if len(query) > strategy.p:
            raise StrategyViolation(
                f"query set of size {len(query)} exceeds parallelism {strategy.p}",
                size=len(query), p=strategy.p,
            )
        if len(set(query)) != len(query):
            raise StrategyViolation("query set repeats a position", query=list(query))
        for i in query:
            if i < 0 or i >= positions.count:
                raise StrategyViolation(f"position {i} outside [0, {positions.count})",
                                        index=i)
        if transcript.round_count >= limit:
            raise StrategyViolation(f"strategy exceeded {limit} rounds", limit=limit)
        answers = answerer.answer(query)
        transcript.rounds.append(Round(tuple(query), tuple(answers)))
    if isinstance(answerer, InputOracle):
        truth = f.value_or_none(answerer.bits)
        transcript.correct = None if truth is None else truth == transcript.answer
    else:
        # 对手仍能给出另一输出的补全时，答案不可靠
        other = checked_completion(answerer, positions, 1 - transcript.answer)
        transcript.correct = other is None
    logger.debug("strategy finished: %d rounds, answer %s", transcript.round_count,
                 transcript.answer)
    return transcript


def decided_value(f: BooleanFunction, positions: Positions, known: Dict[int, int]) -> Optional[int]:
    """已知位置下输出唯一确定时返回该值；定义域内无一致输入时返回 0"""
    outcomes = f.partial_outcomes(positions.expand(known))
    if len(outcomes) == 1:
        return next(iter(outcomes))
    if not outcomes:
        return 0
    return None


class ReadAll(QueryStrategy):
    """按下标顺序每轮读取 p 个位置，读完后输出"""

    def __init__(self, f: BooleanFunction, p: int, granularity: str = "bit") -> None:
        super().__init__(p)
        self.f = f
        self.granularity = granularity
        self.positions = Positions.of(f, granularity)

    def decide(self, transcript: Transcript) -> Decision:
        known = transcript.known()
        pending = [i for i in range(self.positions.count) if i not in known]
        if pending:
            return Decision.ask(pending[:self.p])
        return Decision.output(decided_value(self.f, self.positions, known) or 0)


class Sequential(QueryStrategy):
    """按下标顺序读取，输出一经确定立即停止"""

    def __init__(self, f: BooleanFunction, p: int = 1, granularity: str = "bit") -> None:
        super().__init__(p)
        self.f = f
        self.granularity = granularity
        self.positions = Positions.of(f, granularity)

    def decide(self, transcript: Transcript) -> Decision:
        known = transcript.known()
        value = decided_value(self.f, self.positions, known)
        if value is not None:
            return Decision.output(value)
        pending = [i for i in range(self.positions.count) if i not in known]
        return Decision.ask(pending[:self.p])
