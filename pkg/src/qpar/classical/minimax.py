"""
Minimax - 精确 p-并行决策树求解

exact_parallel_D：对 (已查询位置, 应答) 状态做带记忆的迭代加深博弈搜索，
求所有确定性 p-并行策略的最少轮数。部分函数在全部一致补全输出相同时
结束。distributional_success：对显式分布做 expectimax，求 k 轮确定性
策略的最大成功概率。
"""

from __future__ import annotations

import logging
from itertools import combinations, product
from math import comb
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..boolfn.function import BooleanFunction, to_bits
from .._internal.config_tools import current_limits
from .._internal.errors import BudgetExceeded, OutOfDomain, TooLarge
from .._internal.memo_store import get_memo_store
from .model import (
    AdaptiveAnswerer,
    Decision,
    Positions,
    QueryStrategy,
    Transcript,
    run_strategy,
)

logger = logging.getLogger(__name__)

State = Tuple[Tuple[int, int], ...]


def _extend(state: State, query: Sequence[int], answers: Sequence[int]) -> State:
    return tuple(sorted(state + tuple(zip(query, answers))))


class GameSolver:
    """确定性 p-并行查询博弈

    memo[state] = (已知不可在 r 轮内确定的最大 r, 已知可以确定的最小 r)
    """

    def __init__(self, f: BooleanFunction, p: int, granularity: str = "bit") -> None:
        self.f = f
        self.p = int(p)
        self.positions = Positions.of(f, granularity)
        limits = current_limits()
        cap = limits.max_game_blocks if granularity == "block" else limits.max_game_bits
        if self.positions.count > cap:
            raise TooLarge(
                f"game over {self.positions.count} {granularity} positions exceeds cap {cap}",
                positions=self.positions.count, cap=cap, granularity=granularity,
            )
        self._bounds: Dict[State, List[int]] = {}
        self._decided: Dict[State, Optional[int]] = {}
        self._consistent: Dict[State, bool] = {}

    # ------------------------------------------------------------ state queries
    def decided(self, state: State) -> Optional[int]:
        if state not in self._decided:
            outcomes = self.f.partial_outcomes(self.positions.expand(dict(state)))
            self._decided[state] = next(iter(outcomes)) if len(outcomes) == 1 else (
                0 if not outcomes else None
            )
            self._consistent[state] = bool(outcomes)
        return self._decided[state]

    def consistent(self, state: State) -> bool:
        if self.f.is_total():
            return True
        self.decided(state)
        return self._consistent[state]

    def unqueried(self, state: State) -> List[int]:
        seen = {pos for pos, _ in state}
        return [i for i in range(self.positions.count) if i not in seen]

    def children(self, state: State, query: Sequence[int]) -> Iterator[Tuple[Tuple[int, ...], State]]:
        """查询 query 的全部一致应答及对应子状态"""
        for answers in product(range(self.positions.alphabet), repeat=len(query)):
            child = _extend(state, query, answers)
            if self.consistent(child):
                yield answers, child

    def query_sets(self, state: State) -> Iterator[Tuple[int, ...]]:
        free = self.unqueried(state)
        return combinations(free, min(self.p, len(free)))

    # ------------------------------------------------------------------ search
    def can_decide(self, state: State, r: int) -> bool:
        if self.decided(state) is not None:
            return True
        if r <= 0:
            return False
        bounds = self._bounds.setdefault(state, [-1, 1 << 30])
        if r <= bounds[0]:
            return False
        if r >= bounds[1]:
            return True
        free = len(self.unqueried(state))
        if -(-free // self.p) <= r:
            result = True
        else:
            result = any(
                all(self.can_decide(child, r - 1) for _, child in self.children(state, S))
                for S in self.query_sets(state)
            )
        if result:
            bounds[1] = min(bounds[1], r)
        else:
            bounds[0] = max(bounds[0], r)
        return result

    def rounds_needed(self, state: State = ()) -> int:
        r = 0
        while not self.can_decide(state, r):
            r += 1
        return r

    def best_query(self, state: State) -> Tuple[int, ...]:
        """达到最优轮数的字典序最小查询集合"""
        r = self.rounds_needed(state)
        for S in self.query_sets(state):
            if all(self.can_decide(child, r - 1) for _, child in self.children(state, S)):
                return S
        raise BudgetExceeded("no query set attains the optimal round count", rounds=r)


def exact_parallel_D(f: BooleanFunction, p: int, granularity: str = "bit") -> int:
    """D^{p∥}(f) 的精确值（bit 或 block 粒度）"""
    store = get_memo_store()
    key = f"{f.spec_expr()}|p={p}|{granularity}"
    cached = store.get("exact_parallel_D", key)
    if cached is not None:
        return int(cached)
    solver = GameSolver(f, p, granularity)
    value = solver.rounds_needed(())
    logger.info(f"🎯 D^{p}||({f.name}) = {value} ({granularity}, {len(solver._bounds)} states)")
    store.put("exact_parallel_D", key, value)
    return value


class OptimalStrategy(QueryStrategy):
    """由博弈求解器导出的最优确定性策略"""

    def __init__(self, f: BooleanFunction, p: int, granularity: str = "bit",
                 solver: Optional[GameSolver] = None) -> None:
        super().__init__(p)
        self.granularity = granularity
        self.solver = solver or GameSolver(f, p, granularity)

    def decide(self, transcript: Transcript) -> Decision:
        state: State = tuple(sorted(transcript.known().items()))
        value = self.solver.decided(state)
        if value is not None:
            return Decision.output(value)
        return Decision.ask(self.solver.best_query(state))


class MinimaxAdversary(AdaptiveAnswerer):
    """最优自适应应答：每轮选择使剩余最优轮数最大的一致应答（并列取字典序最小）"""

    def __init__(self, f: BooleanFunction, p: int, granularity: str = "bit",
                 budget: Optional[int] = None, solver: Optional[GameSolver] = None) -> None:
        super().__init__()
        self.f = f
        self.granularity = granularity
        self.solver = solver or GameSolver(f, p, granularity)
        self.budget = budget

    @classmethod
    def below_optimal(cls, f: BooleanFunction, p: int, granularity: str = "bit") -> "MinimaxAdversary":
        """预算为 D^{p∥}(f) - 1 轮的对手"""
        solver = GameSolver(f, p, granularity)
        return cls(f, p, granularity, budget=solver.rounds_needed(()) - 1, solver=solver)

    def state(self) -> State:
        return tuple(sorted(self.known().items()))

    def respond(self, positions: Tuple[int, ...]) -> Tuple[int, ...]:
        if self.budget is not None and len(self.history) >= self.budget:
            raise BudgetExceeded(
                f"minimax adversary budget of {self.budget} rounds exhausted",
                budget=self.budget,
            )
        state = self.state()
        fresh = tuple(i for i in positions if i not in dict(state))
        best, best_value = None, -1
        for answers, child in self.solver.children(state, fresh):
            value = self.solver.rounds_needed(child)
            if value > best_value:
                best, best_value = answers, value
        if best is None:
            raise BudgetExceeded("no consistent answer remains")
        chosen = dict(state)
        chosen.update(zip(fresh, best))
        return tuple(chosen[i] for i in positions)

    def completion(self, value: int) -> Optional[np.ndarray]:
        return consistent_point(self.f, self.solver.positions.expand(self.known()), value)


def consistent_point(f: BooleanFunction, known_bits: Mapping[int, int], value: int) -> Optional[np.ndarray]:
    """与已知位一致、输出为 value 的字典序最小定义域点"""
    pts = f.points(value)
    mask = 0
    vals = 0
    for pos, bit in known_bits.items():
        mask |= 1 << pos
        if bit:
            vals |= 1 << pos
    hits = pts[(pts & mask) == vals]
    if hits.size == 0:
        return None
    return to_bits(int(hits[0]), f.arity)


def optimal_transcript(f: BooleanFunction, p: int, granularity: str = "bit") -> Transcript:
    """最优策略对最优对手的记录"""
    solver = GameSolver(f, p, granularity)
    strategy = OptimalStrategy(f, p, granularity, solver)
    adversary = MinimaxAdversary(f, p, granularity, solver=solver)
    return run_strategy(strategy, adversary, f)


# ---------------------------------------------------------------- distributional
DistributionLike = Union[Mapping[int, float], Sequence[Tuple[object, float]]]


def _normalize(f: BooleanFunction, dist: DistributionLike) -> List[Tuple[np.ndarray, float, int]]:
    items = dist.items() if isinstance(dist, Mapping) else dist
    points = []
    total = 0.0
    for x, prob in items:
        if prob <= 0:
            continue
        bits = to_bits(x, f.arity)
        value = f.value_or_none(bits)
        if value is None:
            raise OutOfDomain("distribution puts mass outside the domain", function=f.name)
        points.append((bits, float(prob), value))
        total += float(prob)
    return [(b, p / total, v) for b, p, v in points]


def _position_table(positions: Positions, bits: np.ndarray) -> np.ndarray:
    """(点数, arity) 位矩阵 → (点数, 位置数) 的位置取值"""
    if positions.width == 1:
        return bits.astype(np.int64)
    weights = 1 << np.arange(positions.width, dtype=np.int64)
    shaped = bits[:, :positions.count * positions.width].astype(np.int64)
    return shaped.reshape(bits.shape[0], positions.count, positions.width) @ weights


def _group_ids(sub: np.ndarray, alphabet: int) -> np.ndarray:
    """按行取值分组，返回 0..G-1 的组号"""
    if sub.shape[1] * max(1, alphabet.bit_length()) < 62:
        keys = sub @ (alphabet ** np.arange(sub.shape[1], dtype=np.int64))
        _, inv = np.unique(keys, return_inverse=True)
    else:
        _, inv = np.unique(sub, axis=0, return_inverse=True)
    return inv.ravel()


def distributional_success(
    f: BooleanFunction,
    dist: DistributionLike,
    p: int,
    k: int,
    granularity: str = "bit",
) -> float:
    """k 轮 p-并行确定性策略对分布 dist 的最大成功概率（精确 expectimax）"""
    points = _normalize(f, dist)
    if not points:
        return 0.0
    positions = Positions.of(f, granularity)
    table = _position_table(positions, np.stack([b for b, _, _ in points]))
    probs = np.array([p_ for _, p_, _ in points])
    labels = np.array([v for _, _, v in points], dtype=np.int64)
    alphabet = positions.alphabet

    spread = table.max(axis=0) != table.min(axis=0)
    informative = [int(i) for i in np.flatnonzero(spread)]
    width = min(p, len(informative))
    work = (comb(len(informative), width) ** k) * len(points) if informative else len(points)
    cap = current_limits().max_game_work
    if work > cap:
        raise TooLarge(f"expectimax work estimate {work} exceeds cap {cap}",
                       work=work, cap=cap)

    memo: Dict[Tuple[Tuple[int, ...], int], float] = {}

    def value(idx: np.ndarray, r: int) -> float:
        key = (tuple(idx.tolist()), r)
        if key in memo:
            return memo[key]
        masses = np.bincount(labels[idx], weights=probs[idx], minlength=2)
        best = float(masses.max())
        if r > 0 and masses.min() > 0:
            sub = table[idx]
            live = [i for i in informative if sub[:, i].max() != sub[:, i].min()]
            for S in combinations(live, min(p, len(live))):
                groups = _group_ids(sub[:, list(S)], alphabet)
                if r == 1:
                    # 最后一轮：每组取多数标签
                    cells = np.bincount(groups * 2 + labels[idx], weights=probs[idx],
                                        minlength=2 * (int(groups.max()) + 1))
                    total = float(cells.reshape(-1, 2).max(axis=1).sum())
                else:
                    order = np.argsort(groups, kind="stable")
                    cuts = np.flatnonzero(np.diff(groups[order])) + 1
                    total = sum(value(part, r - 1) for part in np.split(idx[order], cuts))
                best = max(best, total)
        memo[key] = best
        return best

    result = value(np.arange(len(points)), k)
    logger.debug("distributional success p=%d k=%d: %.6f over %d states", p, k, result, len(memo))
    return result
