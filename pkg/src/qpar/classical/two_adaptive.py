"""
Two Adaptive Algorithms - 2-Adaptive-F 的两轮随机算法与确定性对手

随机算法：第一轮对每段重复运行 1-查询随机求解器（每次 f-查询读取整个
子段）并读取全部 BC；第二轮读取双证书位置与 DT[TG 猜测]。确定性对手
第一轮给出交点未被查询的双证书，第二轮选择落在未查询 DT 位置的目标。
"""

from __future__ import annotations

import logging
from itertools import product
from math import ceil, log2
from typing import Callable, Dict, List, Optional, Protocol, Set, Tuple

import numpy as np

from ..boolfn.function import BooleanFunction, all_bits, to_bits, to_index
from ..constructions.certificates import Bicertificate
from ..constructions.two_adaptive import (
    TwoAdaptive,
    build_two_adaptive_instance,
    output_balanced_distribution,
    sample_in_values,
    two_adaptive_of,
)
from .._internal.errors import BudgetExceeded, ConstructionFailed, ParallelismTooSmall, TooLarge
from .._internal.seeding import make_rng, spawn_seeds
from .._internal.workers import parallel_map
from .model import AdaptiveAnswerer, Decision, QueryStrategy, Transcript, run_strategy

logger = logging.getLogger(__name__)


class OneQuerySolver(Protocol):
    """f 的 1-查询随机求解器：选一个位置，由其值给出答案"""

    def pick(self, rng: np.random.Generator) -> int:
        ...

    def decide(self, value: int, rng: np.random.Generator) -> int:
        ...


class DJRandomSolver:
    """Deutsch–Jozsa 的 1-查询随机求解器

    查询随机位置：为 1 则答 1；为 0 则以 2/3 概率答 0。两类输入的成功率均为 2/3。
    """

    def __init__(self, n: int) -> None:
        self.n = n

    def pick(self, rng: np.random.Generator) -> int:
        return int(rng.integers(self.n))

    def decide(self, value: int, rng: np.random.Generator) -> int:
        if value:
            return 1
        return 0 if rng.random() < 2 / 3 else 1


def default_repetitions(n: int) -> int:
    return max(5, 4 * ceil(log2(n)) + 1)


def decode_bicertificates(structure: TwoAdaptive,
                          known: Dict[int, int]) -> Dict[Tuple[int, int], Bicertificate]:
    """由已读取的 BC 位解码全部双证书（未读位按 0）"""
    layout = structure.layout
    out = {}
    for i, j in layout.subsegments():
        cell = [known.get(q, 0) for q in layout.bc_range(i, j)]
        out[i, j] = Bicertificate.decode(cell, layout.n, layout.n)
    return out


def verification_query(structure: TwoAdaptive, bicerts: Dict[Tuple[int, int], Bicertificate],
                       guess: int) -> List[int]:
    """第二轮：有效双证书的全部位置与 DT[guess]"""
    layout = structure.layout
    query = {layout.dt_position(guess)}
    for (i, j), bc in bicerts.items():
        if bc.is_valid():
            base = layout.add_range(i, j).start
            query.update(base + loc for loc in bc.zero_part + bc.one_part)
    return sorted(query)


def certified_answer(structure: TwoAdaptive, known: Dict[int, int],
                     bicerts: Dict[Tuple[int, int], Bicertificate], guess: int,
                     rng: np.random.Generator) -> int:
    """条件不成立答 0；猜测等于证明出的 TG 时答 DT[TG]；否则随机一位"""
    layout = structure.layout
    rows: List[List[int]] = [[0] * layout.n for _ in range(layout.segments)]
    for (i, j), bc in bicerts.items():
        if not bc.is_valid():
            return 0
        base = layout.add_range(i, j).start
        add = np.zeros(layout.subsegment_bits, dtype=np.uint8)
        for loc in bc.zero_part + bc.one_part:
            add[loc] = known.get(base + loc, 0)
        value = bc.certified_value(add)
        if value is None:
            return 0
        rows[i][j] = value
    tg = []
    for row in rows:
        v = structure.f.value_or_none(row)
        if v is None:
            return 0
        tg.append(v)
    if to_index(tg) == guess:
        return int(known.get(layout.dt_position(guess), 0))
    return int(rng.integers(2))


class TwoAdaptiveRandomized(QueryStrategy):
    """两轮随机算法"""

    def __init__(self, fn: BooleanFunction, solver: OneQuerySolver, p: Optional[int] = None,
                 repetitions: Optional[int] = None) -> None:
        self.structure: TwoAdaptive = two_adaptive_of(fn)
        layout = self.structure.layout
        self.repetitions = default_repetitions(layout.n) if repetitions is None else repetitions
        first = layout.add_bits + layout.bc_bits
        second = layout.segments * layout.n * 2 * layout.n + 1
        self.threshold = max(first, second)
        if p is not None and p < self.threshold:
            raise ParallelismTooSmall(f"parallelism {p} below threshold {self.threshold}",
                                      p=p, threshold=self.threshold)
        super().__init__(self.threshold if p is None else p)
        self.solver = solver

    def reset(self, seed: Optional[int] = None) -> None:
        super().reset(seed)
        layout = self.structure.layout
        self.picks = [[self.solver.pick(self.rng) for _ in range(self.repetitions)]
                      for _ in range(layout.segments)]
        self.guess: Optional[int] = None

    def _round_one(self) -> Decision:
        layout = self.structure.layout
        query: Set[int] = set(range(layout.bc_start, layout.dt_start))
        for i, picks in enumerate(self.picks):
            for j in picks:
                query.update(layout.add_range(i, j))
        return Decision.ask(sorted(query))

    def decide(self, transcript: Transcript) -> Decision:
        layout = self.structure.layout
        if transcript.round_count == 0:
            return self._round_one()
        known = transcript.known()
        bicerts = decode_bicertificates(self.structure, known)
        if transcript.round_count == 1:
            bits = np.zeros(layout.total_bits, dtype=np.uint8)
            for q, a in known.items():
                bits[q] = a
            tg = []
            for i, picks in enumerate(self.picks):
                votes = [self.solver.decide(self.structure.in_value(bits, i, j), self.rng)
                         for j in picks]
                tg.append(int(2 * sum(votes) > len(votes)))
            self.guess = to_index(tg)
            return Decision.ask(verification_query(self.structure, bicerts, self.guess))
        return Decision.output(
            certified_answer(self.structure, known, bicerts, self.guess, self.rng))


def two_adaptive_rand_algorithm(fn: BooleanFunction, solver: Optional[OneQuerySolver] = None,
                                p: Optional[int] = None,
                                repetitions: Optional[int] = None) -> TwoAdaptiveRandomized:
    """两轮随机算法；缺省求解器为 Deutsch–Jozsa 的 1-查询随机求解器"""
    structure = two_adaptive_of(fn)
    solver = solver or DJRandomSolver(structure.layout.n)
    return TwoAdaptiveRandomized(fn, solver, p, repetitions)


def two_adaptive_success(fn: BooleanFunction, make_strategy: Callable[[], QueryStrategy],
                         instances, seed: int = 0,
                         threads: Optional[int] = None) -> Dict[str, float]:
    """策略在给定输入序列上的实测成功率（每个试验新建策略并使用派生种子）"""
    instances = list(instances)
    seeds = spawn_seeds(seed, len(instances))

    def trial(item) -> Tuple[bool, int]:
        x, s = item
        t = run_strategy(make_strategy(), x, fn, seed=s)
        return bool(t.correct), t.round_count

    results = parallel_map(trial, list(zip(instances, seeds)), threads)
    success = sum(ok for ok, _ in results) / max(1, len(results))
    logger.info(f"🎲 {fn.name}: success {success:.3f} over {len(results)} trials")
    return {"success": success, "trials": len(results),
            "max_rounds": max((r for _, r in results), default=0)}


def sample_hard_instances(fn: BooleanFunction, count: int, seed: int = 0) -> List[np.ndarray]:
    """困难分布的独立样本：每段 IN 行按输出平衡分布抽取，双证书与 DT 随机"""
    structure = two_adaptive_of(fn)
    dist = output_balanced_distribution(structure.f)
    rng = make_rng(seed)
    instances = []
    for s in spawn_seeds(seed, count):
        rows = sample_in_values(structure.f, dist, structure.layout.segments, rng)
        instances.append(build_two_adaptive_instance(fn, rows, seed=s))
    return instances


DT_FAMILIES = ("affine", "uniform")


def dt_tables(segments: int, family: str = "affine") -> np.ndarray:
    """DT 取值族，形状 (族大小, 2^segments)

    uniform：全部 2^(2^segments) 种取值；affine：DT[t] = <a, t> ⊕ b，(a, b) 取遍
    {0,1}^segments × {0,1}，任意三个不同位置的取值相互独立且均匀。
    """
    width = 1 << segments
    if family == "uniform":
        if width > 16:
            raise TooLarge(f"uniform DT family needs 2^{width} tables", segments=segments)
        return all_bits(width)
    if family != "affine":
        raise ConstructionFailed(f"unknown DT family: {family}", choices=list(DT_FAMILIES))
    t = np.arange(width, dtype=np.int64)
    a = np.arange(width, dtype=np.int64)
    masked = a[:, None] & t[None, :]
    parity = ((masked[:, :, None] >> np.arange(max(1, segments))) & 1).sum(axis=2) & 1
    tables = np.concatenate([parity, parity ^ 1])
    return tables.astype(np.uint8)


def fixed_bicert_distribution(fn: BooleanFunction, seed: int = 0,
                              dt_family: str = "affine") -> List[Tuple[np.ndarray, float]]:
    """固定双证书的困难分布：(输入位, 概率) 列表

    双证书由 seed 决定且对全部样本相同；IN 各行独立服从输出平衡分布；DT 在
    dt_family 中均匀选取。
    """
    structure = two_adaptive_of(fn)
    layout = structure.layout
    dist = output_balanced_distribution(structure.f)
    rows = sorted(dist)
    first = to_bits(rows[0], layout.n)
    base = build_two_adaptive_instance(fn, [first] * layout.segments,
                                       np.zeros(layout.dt_bits, dtype=np.uint8), seed)
    ips = [[layout.add_range(i, j).start + structure.bicertificate(base, i, j).intersection()
            for j in range(layout.n)] for i in range(layout.segments)]
    tables = dt_tables(layout.segments, dt_family)
    out: List[Tuple[np.ndarray, float]] = []
    for choice in product(rows, repeat=layout.segments):
        mass = float(np.prod([dist[r] for r in choice])) / tables.shape[0]
        bits = base.copy()
        for i, r in enumerate(choice):
            bits[ips[i]] = to_bits(r, layout.n)
        points = np.repeat(bits[None, :], tables.shape[0], axis=0)
        points[:, layout.dt_start:] = tables
        out.extend((point, mass) for point in points)
    logger.debug("fixed-bicert distribution: %d points (%s DT)", len(out), dt_family)
    return out


class TwoAdaptiveAdversary(AdaptiveAnswerer):
    """两轮确定性对手

    第一轮：每个子段固定一个双证书，交点取未被查询的最小位置；交点以外的
    ADD 位按双证书应答（one_part 为 1，其余为 0），BC 为其编码，DT 为 0。
    第二轮：选择一组定义域内的 IN 行，使 DT[TG] 未被查询，被查询的交点按其应答。
    """

    def __init__(self, fn: BooleanFunction, p: int) -> None:
        super().__init__()
        self.fn = fn
        self.p = p
        self.structure = two_adaptive_of(fn)
        self.fixed: Dict[int, int] = {}
        self.ips: Dict[int, Tuple[int, int]] = {}
        self.rows: Optional[Tuple[Tuple[int, ...], ...]] = None

    def _fix_bicertificates(self, queried: Set[int]) -> None:
        layout = self.structure.layout
        n = layout.n
        for i, j in layout.subsegments():
            base = layout.add_range(i, j).start
            free = [t for t in range(layout.subsegment_bits) if base + t not in queried]
            if not free:
                raise BudgetExceeded(f"subsegment ({i},{j}) fully queried in round one",
                                     segment=i, subsegment=j)
            ip = free[0]
            picks = [0] * n
            picks[ip // n] = ip % n
            bc = Bicertificate.build(ip // n, picks, n, n)
            for t in range(layout.subsegment_bits):
                if t != ip:
                    self.fixed[base + t] = int(t in bc.one_part)
            self.ips[base + ip] = (i, j)
            for q, bit in zip(layout.bc_range(i, j), bc.encode()):
                self.fixed[q] = int(bit)

    def _choose_rows(self, queried: Set[int]) -> Tuple[Tuple[int, ...], ...]:
        """字典序最小、目标 DT 位置未被查询的 IN 行组合"""
        layout = self.structure.layout
        f = self.structure.f
        domain = [tuple(int(b) for b in to_bits(int(x), f.arity)) for x in f.points()]
        for rows in product(domain, repeat=layout.segments):
            tg = to_index([f.evaluate(r) for r in rows])
            if layout.dt_position(tg) not in queried:
                return rows
        raise BudgetExceeded("every reachable target location was queried")

    def respond(self, positions: Tuple[int, ...]) -> Tuple[int, ...]:
        layout = self.structure.layout
        queried = set(positions) | set(self.known())
        if not self.history:
            self._fix_bicertificates(queried)
            return tuple(self.fixed.get(q, 0) for q in positions)
        if len(self.history) >= 2:
            raise BudgetExceeded("two-adaptive adversary answers only two rounds", budget=2)
        self.rows = self._choose_rows(queried)
        answers = []
        for q in positions:
            if q in self.ips:
                i, j = self.ips[q]
                answers.append(self.rows[i][j])
            else:
                answers.append(self.fixed.get(q, 0))
        return tuple(answers)

    def completion(self, value: int) -> Optional[np.ndarray]:
        layout = self.structure.layout
        if not self.fixed:
            self._fix_bicertificates(set(self.known()))
        rows = self.rows or self._choose_rows(set(self.known()))
        bits = np.zeros(layout.total_bits, dtype=np.uint8)
        for q, v in self.fixed.items():
            bits[q] = v
        for q, (i, j) in self.ips.items():
            bits[q] = rows[i][j]
        tg = to_index([self.structure.f.evaluate(r) for r in rows])
        bits[layout.dt_position(tg)] = int(value)
        return bits


def two_adaptive_det_adversary(fn: BooleanFunction, p: int) -> TwoAdaptiveAdversary:
    return TwoAdaptiveAdversary(fn, p)
