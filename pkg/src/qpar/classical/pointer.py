"""
Pointer Algorithms - 指针追踪的确定性算法、对手与随机实验

全部以块粒度计数：一次查询读取一个块（一个指针）。
"""

from __future__ import annotations

import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..boolfn.function import BooleanFunction
from ..constructions.pointer import chase, encode_pointers, make_pointer
from .._internal.errors import BudgetExceeded
from .._internal.seeding import make_rng, spawn_seeds
from .._internal.workers import parallel_map
from .model import AdaptiveAnswerer, Decision, QueryStrategy, Transcript, run_strategy

logger = logging.getLogger(__name__)


class PointerChase(QueryStrategy):
    """k ≤ N/p 时逐跳追踪链，否则分 N/p 轮读取全部块"""

    granularity = "block"

    def __init__(self, n_blocks: int, k: int, p: int) -> None:
        super().__init__(p)
        self.n_blocks = n_blocks
        self.k = k
        self.follow = k <= n_blocks // p

    def decide(self, transcript: Transcript) -> Decision:
        known = transcript.known()
        if self.follow:
            cur = 0
            for _ in range(self.k):
                if cur not in known:
                    return Decision.ask([cur])
                cur = known[cur]
            return Decision.output(cur & 1)
        pending = [i for i in range(self.n_blocks) if i not in known]
        if pending:
            return Decision.ask(pending[:self.p])
        return Decision.output(chase([known[i] for i in range(self.n_blocks)], self.k) & 1)


def pointer_det_algorithm(n_blocks: int, k: int, p: int) -> PointerChase:
    return PointerChase(n_blocks, k, p)


class PointerAdversary(AdaptiveAnswerer):
    """不允许"跳跃"的对手

    查询到链尾时回答一个新块（不在查询集合、未被回答、不在链上）；
    其余被查询的块指向查询集合之外编号最小的块。q 轮后至多暴露长度 q 的链。
    """

    granularity = "block"

    def __init__(self, n_blocks: int, k: int, p: int, budget: Optional[int] = None) -> None:
        super().__init__()
        self.n_blocks = n_blocks
        self.k = k
        self.p = p
        self.budget = min(k - 1, (n_blocks - k) // p) if budget is None else int(budget)
        self.chain: List[int] = [0]
        self.answered: Dict[int, int] = {}

    def _fresh(self, exclude) -> List[int]:
        return [b for b in range(self.n_blocks)
                if b not in self.answered and b not in self.chain and b not in exclude]

    def respond(self, positions: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(self.history) >= self.budget:
            raise BudgetExceeded(f"pointer adversary budget of {self.budget} rounds exhausted",
                                 budget=self.budget)
        queried = set(positions)
        for b in positions:
            if b in self.answered:
                continue
            if b == self.chain[-1]:
                fresh = self._fresh(queried)
                if not fresh:
                    raise BudgetExceeded("no fresh block left to extend the chain",
                                         chain=list(self.chain))
                self.answered[b] = fresh[0]
                self.chain.append(fresh[0])
            else:
                self.answered[b] = min(t for t in range(self.n_blocks) if t not in queried)
        return tuple(self.answered[b] for b in positions)

    @property
    def revealed_length(self) -> int:
        return len(self.chain) - 1

    def completion(self, value: int) -> Optional[np.ndarray]:
        remaining = self.k - self.revealed_length
        if remaining <= 0:
            label = chase(self._pointers(), self.k)
            return encode_pointers(self._pointers(), self.n_blocks) if label & 1 == value else None
        pointers = self._pointers()
        fresh = self._fresh(set())
        if len(fresh) < remaining - 1:
            return None
        cur = self.chain[-1]
        for nxt in fresh[:remaining - 1]:
            pointers[cur] = nxt
            cur = nxt
        pointers[cur] = int(value) & 1
        return encode_pointers(pointers, self.n_blocks)

    def _pointers(self) -> List[int]:
        pointers = [0] * self.n_blocks
        for b, v in self.answered.items():
            pointers[b] = v
        return pointers


def pointer_adversary(n_blocks: int, k: int, p: int, budget: Optional[int] = None) -> PointerAdversary:
    return PointerAdversary(n_blocks, k, p, budget)


class RandomBlockStrategy(QueryStrategy):
    """每轮随机查询 p 个块，rounds 轮后输出；链已知时输出正确值，否则猜测"""

    granularity = "block"

    def __init__(self, n_blocks: int, k: int, p: int, rounds: int, follow: bool = True) -> None:
        super().__init__(p)
        self.n_blocks = n_blocks
        self.k = k
        self.rounds = rounds
        self.follow = follow

    def _chain_end(self, known: Dict[int, int]) -> Tuple[int, int]:
        cur, hops = 0, 0
        while hops < self.k and cur in known:
            cur = known[cur]
            hops += 1
        return cur, hops

    def decide(self, transcript: Transcript) -> Decision:
        known = transcript.known()
        cur, hops = self._chain_end(known)
        if hops == self.k:
            return Decision.output(cur & 1)
        if transcript.round_count >= self.rounds:
            return Decision.output(int(self.rng.integers(2)))
        pending = [b for b in range(self.n_blocks) if b not in known]
        picks = [cur] if self.follow and cur in pending else []
        others = [b for b in pending if b not in picks]
        extra = self.rng.permutation(others)[:self.p - len(picks)]
        return Decision.ask(sorted(picks + [int(b) for b in extra]))


def random_permutation_pointer_input(n_blocks: int, seed: int) -> np.ndarray:
    """指针为 [N] 的均匀随机置换"""
    return encode_pointers(make_rng(seed).permutation(n_blocks), n_blocks)


def pointer_random_experiment(
    n_blocks: int, k: int, p: int, rounds: int, trials: int = 1000, seed: int = 0,
    threads: Optional[int] = None,
) -> Dict[str, float]:
    """随机置换输入上 rounds 轮预算策略的实测成功率"""
    f: BooleanFunction = make_pointer(n_blocks, k)
    seeds = spawn_seeds(seed, trials)

    def trial(s: int) -> Tuple[bool, int]:
        x = random_permutation_pointer_input(n_blocks, s)
        t = run_strategy(RandomBlockStrategy(n_blocks, k, p, rounds), x, f, seed=s ^ 0x9E37)
        return bool(t.correct), t.round_count

    results = parallel_map(trial, seeds, threads)
    success = sum(ok for ok, _ in results) / trials
    logger.info(f"🎲 pointer N={n_blocks} k={k} p={p} rounds={rounds}: success {success:.3f}")
    return {"success": success, "trials": trials, "rounds": rounds,
            "mean_rounds": float(np.mean([r for _, r in results]))}
