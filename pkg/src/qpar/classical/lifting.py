"""
Lifting - 复合算法、k-SUM 提升与星号查询统计

composition_strategy 把 f 的 p'-并行策略提升为 f∘g 的 p-并行策略：
每个外层查询读取对应内层块的全部位。build_ksum_lift 把 x 编码为每块
k-SUM 值等于 x_i 的输入。star_query_count 统计有限次查询命中的星号数。
"""

from __future__ import annotations

import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..boolfn.function import BitsLike, BooleanFunction, to_bits
from ..constructions.families import make_ksum
from .._internal.errors import ArityMismatch, ConstructionFailed
from .._internal.seeding import make_rng, spawn_seeds
from .._internal.workers import parallel_map
from .minimax import OptimalStrategy
from .model import Decision, QueryStrategy, Round, Transcript

logger = logging.getLogger(__name__)

InnerFactory = Callable[[BooleanFunction, int], QueryStrategy]


# ---------------------------------------------------------------- composition
class CompositionStrategy(QueryStrategy):
    """f∘g 的确定性复合策略

    内层并行度 p' = max(1, ⌊p/M⌋)；外层查询集合 S 展开为 |S|·M 位，
    按 p 分块读取，轮数为 ⌈|S|·M/p⌉。
    """

    def __init__(self, f: BooleanFunction, g: BooleanFunction, p: int,
                 inner_factory: Optional[InnerFactory] = None) -> None:
        super().__init__(p)
        self.f = f
        self.g = g
        self.inner_p = max(1, p // g.arity)
        factory = inner_factory or (lambda fn, q: OptimalStrategy(fn, q))
        self.inner = factory(f, self.inner_p)

    def reset(self, seed: Optional[int] = None) -> None:
        super().reset(seed)
        self.inner.reset(seed)
        self.inner_t = Transcript()
        self.current: Tuple[int, ...] = ()
        self.pending: List[Tuple[int, ...]] = []

    def _expand(self, blocks: Sequence[int]) -> List[int]:
        m = self.g.arity
        return [j * m + t for j in blocks for t in range(m)]

    def decide(self, transcript: Transcript) -> Decision:
        if self.pending:
            return Decision.ask(self.pending.pop(0))
        if self.current:
            known = transcript.known()
            m = self.g.arity
            values = []
            for j in self.current:
                v = self.g.value_or_none([known[j * m + t] for t in range(m)])
                values.append(0 if v is None else v)
            self.inner_t.rounds.append(Round(self.current, tuple(values)))
            self.current = ()
        d = self.inner.decide(self.inner_t)
        if d.answer is not None:
            return Decision.output(d.answer)
        self.current = tuple(d.query)
        bits = self._expand(self.current)
        self.pending = [tuple(bits[i:i + self.p]) for i in range(0, len(bits), self.p)]
        return Decision.ask(self.pending.pop(0))


def composition_strategy(f: BooleanFunction, g: BooleanFunction, p: int,
                         inner_factory: Optional[InnerFactory] = None) -> CompositionStrategy:
    return CompositionStrategy(f, g, p, inner_factory)


# ---------------------------------------------------------------- k-SUM lift
def _lift_block(bit: int, sub_blocks: int, k: int, block_bits: int,
                rng: np.random.Generator) -> Tuple[np.ndarray, int]:
    values = np.ones(sub_blocks, dtype=np.int64)
    values[:k - 1] = 0
    special = int(rng.integers(k - 1, sub_blocks))
    values[special] = 1 - int(bit)
    shifts = np.arange(block_bits, dtype=np.int64)
    bits = ((values[:, None] >> shifts[None, :]) & 1).astype(np.uint8).reshape(-1)
    return bits, special


def build_ksum_lift(
    x: BitsLike,
    sub_blocks: int,
    k: int,
    block_bits: int,
    modulus: int,
    seed: int = 0,
    length: Optional[int] = None,
    return_special: bool = False,
) -> Union[np.ndarray, Tuple[np.ndarray, List[int]]]:
    """把 x 编码为 Y，使每块 k-SUM(Y_i) = x_i

    每块前 k-1 个子块为 0，随机一个其余子块取 1 - x_i，其余子块为 1。
    要求子块数至少 k+1，且模数大于 k（k 个取值 0/1 的子块之和不会意外为 0）。
    """
    if sub_blocks < k + 1:
        raise ArityMismatch(f"lift needs at least k+1 = {k + 1} sub-blocks", sub_blocks=sub_blocks)
    if modulus <= k:
        raise ArityMismatch(f"lift needs modulus > k = {k}", modulus=modulus)
    if k < 1:
        raise ArityMismatch("k must be positive", k=k)
    if length is None:
        if isinstance(x, (int, np.integer)):
            raise ArityMismatch("integer input needs an explicit length")
        length = len(x)
    bits = to_bits(x, length)
    rng = make_rng(seed)
    parts, specials = [], []
    for b in bits:
        block, special = _lift_block(int(b), sub_blocks, k, block_bits, rng)
        parts.append(block)
        specials.append(special)
    y = np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint8)
    return (y, specials) if return_special else y


def ksum_lift_values(y: np.ndarray, blocks: int, sub_blocks: int, k: int, block_bits: int,
                     modulus: int) -> List[int]:
    """Y 每块的 k-SUM 值"""
    inner = make_ksum(sub_blocks, k, block_bits, modulus)
    width = inner.arity
    if y.shape[0] != blocks * width:
        raise ArityMismatch(f"expected {blocks * width} bits", got=int(y.shape[0]))
    return [inner.evaluate(y[i * width:(i + 1) * width]) for i in range(blocks)]


# ---------------------------------------------------------------- star lemma
class StarScanner:
    """顺序扫描：逐块从头查询，命中星号后转入下一块"""

    name = "greedy"

    def run(self, stars: np.ndarray, m: int, budget: int, rng: np.random.Generator) -> int:
        hits = 0
        block, offset = 0, 0
        for _ in range(budget):
            if block >= stars.shape[0]:
                break
            if offset == stars[block]:
                hits += 1
                block, offset = block + 1, 0
            else:
                offset += 1
        return hits


class StarRandomQueries:
    """随机查询：每次在尚未命中星号的块中均匀选取一个未查询位置"""

    name = "random"

    def run(self, stars: np.ndarray, m: int, budget: int, rng: np.random.Generator) -> int:
        n = stars.shape[0]
        seen = np.zeros((n, m), dtype=bool)
        done = np.zeros(n, dtype=bool)
        hits = 0
        for _ in range(budget):
            free = np.flatnonzero(~seen[~done].reshape(-1)) if not done.all() else np.zeros(0)
            if free.size == 0:
                break
            live = np.flatnonzero(~done)
            pick = int(rng.choice(free))
            block, offset = int(live[pick // m]), pick % m
            seen[block, offset] = True
            if offset == stars[block]:
                hits += 1
                done[block] = True
        return hits


STAR_STRATEGIES: Dict[str, Callable[[], object]] = {
    "greedy": StarScanner,
    "random": StarRandomQueries,
}


def star_query_count(l: int, n: int, m: int, strategy: str = "greedy", seed: int = 0) -> int:
    """n 个长 m 的串各有一个均匀随机星号；策略做 l 次查询，返回命中星号数"""
    if strategy not in STAR_STRATEGIES:
        raise ConstructionFailed(f"unknown star strategy: {strategy}",
                                 available=sorted(STAR_STRATEGIES))
    rng = make_rng(seed)
    stars = rng.integers(0, m, size=n)
    return STAR_STRATEGIES[strategy]().run(stars, m, int(l), rng)


def star_statistics(l: int, n: int, m: int, strategy: str = "greedy", trials: int = 10000,
                    seed: int = 0, threads: Optional[int] = None) -> Dict[str, float]:
    """命中数超过 20l/m 的经验概率与平均命中数"""
    seeds = spawn_seeds(seed, trials)
    counts = np.array(parallel_map(lambda s: star_query_count(l, n, m, strategy, s),
                                   seeds, threads))
    threshold = 20 * l / m
    stats = {
        "threshold": threshold,
        "exceed_probability": float(np.mean(counts > threshold)),
        "mean": float(counts.mean()),
        "expectation_bound": 2 * l / m,
        "trials": trials,
    }
    logger.info(f"⭐ star lemma n={n} m={m} l={l} {strategy}: "
                f"P[count>{threshold:g}]={stats['exceed_probability']:.4f} mean={stats['mean']:.3f}")
    return stats
