"""
Cheat Sheet Algorithms - 作弊表的并行算法与确定性对手

三阶段算法：解出 c 份地址输入（可交给内层策略），一轮读取格子 ℓ，
一轮读取证书条目完成验证。确定性对手把地址查询交给每份的最优对手，
格子查询一律回答 0，并按需构造一致的 0-/1-补全。
"""

from __future__ import annotations

import logging
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..boolfn.function import BooleanFunction, to_index
from ..boolfn.measures import minimal_certificate
from ..constructions.certificates import COUNT_BITS, Certificate, index_width
from ..constructions.cheatsheet import CheatSheet, cheatsheet_of
from .._internal.errors import BudgetExceeded, ParallelismTooSmall
from .minimax import GameSolver, MinimaxAdversary
from .model import AdaptiveAnswerer, Decision, QueryStrategy, Round, Transcript

logger = logging.getLogger(__name__)

InnerFactory = Callable[[int], QueryStrategy]

INCOMPATIBLE = 1e6


def _chunks(items: Sequence[int], size: int) -> List[Tuple[int, ...]]:
    return [tuple(items[i:i + size]) for i in range(0, len(items), size)]


class CheatSheetStrategy(QueryStrategy):
    """作弊表三阶段策略

    Args:
        fn: 作弊表函数
        p: 并行度
        inner: 内层策略工厂（参数为分给每份的并行度）；缺省时按顺序读取全部地址位
        strict: True 时格子与证书各用一轮，要求 p 不低于格子宽度；
            False 时按 p 分块读取（顺序算法）
    """

    def __init__(self, fn: BooleanFunction, p: int, inner: Optional[InnerFactory] = None,
                 strict: bool = True) -> None:
        super().__init__(p)
        self.sheet: CheatSheet = cheatsheet_of(fn)
        layout = self.sheet.layout
        self.threshold = layout.cell_size
        if strict and p < self.threshold:
            raise ParallelismTooSmall(
                f"parallelism {p} below cell width {self.threshold}",
                p=p, threshold=self.threshold,
            )
        self.strict = strict
        self.inner_factory = inner
        self.copy_p = max(1, p // layout.copies)

    def reset(self, seed: Optional[int] = None) -> None:
        super().reset(seed)
        self.inner: List[QueryStrategy] = []
        if self.inner_factory is not None:
            for _ in range(self.sheet.layout.copies):
                strategy = self.inner_factory(self.copy_p)
                strategy.reset(int(self.rng.integers(1 << 62)))
                self.inner.append(strategy)
        self.results: Dict[int, int] = {}
        self.ell: Optional[List[int]] = None
        self.cert: Optional[Certificate] = None
        self.phase = 1
        self.pending: List[Tuple[int, ...]] = []

    # ---------------------------------------------------------------- phase 1
    def _copy_transcript(self, transcript: Transcript, i: int) -> Transcript:
        span = self.sheet.layout.copy_range(i)
        out = Transcript()
        for r in transcript.rounds:
            local = [(q - span.start, a) for q, a in zip(r.indices, r.answers) if q in span]
            if local:
                out.rounds.append(Round(tuple(q for q, _ in local), tuple(a for _, a in local)))
        return out

    def _solve_addresses(self, transcript: Transcript) -> Optional[Decision]:
        """返回下一轮地址查询；全部份解出后设置 self.ell 并返回 None"""
        layout = self.sheet.layout
        if not self.inner:
            known = transcript.known()
            pending = [i for i in range(layout.address_bits) if i not in known]
            if pending:
                return Decision.ask(pending[:self.p])
            bits = np.zeros(layout.total_bits, dtype=np.uint8)
            for i in range(layout.address_bits):
                bits[i] = known[i]
            values = self.sheet.address_values(bits)
            self.ell = [0 if v is None else int(v) for v in values]
            return None
        query: List[int] = []
        for i, strategy in enumerate(self.inner):
            if i in self.results:
                continue
            d = strategy.decide(self._copy_transcript(transcript, i))
            if d.answer is not None:
                self.results[i] = int(d.answer)
            else:
                query.extend(layout.copy_range(i).start + q for q in d.query)
        if query:
            return Decision.ask(sorted(query))
        self.ell = [self.results[i] for i in range(layout.copies)]
        return None

    # ---------------------------------------------------------------- rounds
    def decide(self, transcript: Transcript) -> Decision:
        layout = self.sheet.layout
        if self.phase == 1:
            d = self._solve_addresses(transcript)
            if d is not None:
                return d
            self.phase = 2
            self.pending = _chunks(list(layout.cell_range(to_index(self.ell))), self.p)
        if self.phase == 2:
            if self.pending:
                return Decision.ask(self.pending.pop(0))
            known = transcript.known()
            cell = [known[i] for i in layout.cell_range(to_index(self.ell))]
            self.cert = Certificate.decode(cell, layout.address_bits)
            if self.cert is None:
                return Decision.output(0)
            self.phase = 3
            self.pending = _chunks([idx for idx, _ in self.cert.entries], self.p)
        if self.phase == 3 and self.pending:
            return Decision.ask(self.pending.pop(0))
        known = transcript.known()
        if not all(known[idx] == v for idx, v in self.cert.entries):
            return Decision.output(0)
        return Decision.output(int(self.sheet.checker(self.cert, self.ell)))


def cheatsheet_parallel_algorithm(fn: BooleanFunction, p: int, model: str = "det",
                                  inner: Optional[InnerFactory] = None) -> CheatSheetStrategy:
    """p-并行作弊表算法；model="rand" 时必须提供随机内层策略工厂"""
    if model == "rand" and inner is None:
        raise ParallelismTooSmall("randomized model needs an inner solver factory", model=model)
    return CheatSheetStrategy(fn, p, inner=inner, strict=True)


def cheatsheet_sequential_algorithm(fn: BooleanFunction) -> CheatSheetStrategy:
    """确定性顺序算法（p = 1，逐位读取）"""
    return CheatSheetStrategy(fn, 1, strict=False)


class CheatSheetAdversary(AdaptiveAnswerer):
    """作弊表确定性对手：地址交给每份最优对手，格子位回答 0"""

    def __init__(self, fn: BooleanFunction, p: int) -> None:
        super().__init__()
        self.fn = fn
        self.sheet = cheatsheet_of(fn)
        solver = GameSolver(self.sheet.inner, p)
        self.budget = solver.rounds_needed(()) - 1
        self.copies = [MinimaxAdversary(self.sheet.inner, p, solver=solver)
                       for _ in range(self.sheet.layout.copies)]

    def respond(self, positions: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(self.history) >= self.budget:
            raise BudgetExceeded(
                f"cheat sheet adversary budget of {self.budget} rounds exhausted",
                budget=self.budget,
            )
        layout = self.sheet.layout
        answers: Dict[int, int] = {}
        for i, adv in enumerate(self.copies):
            span = layout.copy_range(i)
            local = tuple(q - span.start for q in positions if q in span)
            if local:
                answers.update((span.start + q, a) for q, a in zip(local, adv.answer(local)))
        return tuple(answers.get(q, 0) for q in positions)

    def completion(self, value: int) -> Optional[np.ndarray]:
        layout = self.sheet.layout
        queried = self.known()
        for ell in product((0, 1), repeat=layout.copies):
            parts = [adv.completion(v) for adv, v in zip(self.copies, ell)]
            if any(a is None for a in parts):
                continue
            address = np.concatenate(parts).astype(np.uint8)
            bits = np.zeros(layout.total_bits, dtype=np.uint8)
            bits[:layout.address_bits] = address
            if value == 0:
                return bits
            cell = self._fit_cell(address, to_index(ell), queried)
            if cell is None:
                continue
            bits[list(layout.cell_range(to_index(ell)))] = cell
            if self.fn.evaluate(bits) == 1:
                return bits
        return None

    def _fit_cell(self, address: np.ndarray, ell: int,
                  queried: Dict[int, int]) -> Optional[np.ndarray]:
        """在格子 ℓ 中写入证书，已查询（答 0）的格子位保持为 0

        条目数从最小证书大小增加到地址长度；每个条目数下用最小代价指派
        把条目放入槽位，与零位冲突的放置代价为 INCOMPATIBLE。
        """
        layout = self.sheet.layout
        L = layout.address_bits
        span = layout.cell_range(ell)
        zeros = {q - span.start for q in queried if q in span}
        w = index_width(L) + 1
        F = layout.inner_arity
        needed = set()
        for i in range(layout.copies):
            local = minimal_certificate(self.sheet.inner, address[i * F:(i + 1) * F])
            needed.update(i * F + t for t in local)
        entries = [(idx, int(address[idx])) for idx in range(L)]

        def fits(slot: int, idx: int, val: int) -> bool:
            base = COUNT_BITS + slot * w
            code = idx | (val << (w - 1))
            return all(not (code >> b) & 1 or base + b not in zeros for b in range(w))

        capacity = Certificate.capacity(layout.cell_size, L)
        for count in range(max(1, len(needed)), min(capacity, L) + 1):
            if any((count >> b) & 1 and b in zeros for b in range(COUNT_BITS)):
                continue
            cost = np.zeros((count, L))
            for s in range(count):
                for e, (idx, val) in enumerate(entries):
                    if not fits(s, idx, val):
                        cost[s, e] = INCOMPATIBLE
                    elif idx in needed:
                        cost[s, e] = -1.0
            rows, cols = linear_sum_assignment(cost)
            if cost[rows, cols].max() >= INCOMPATIBLE:
                continue
            chosen = [entries[c] for c in cols]
            if not needed <= {idx for idx, _ in chosen}:
                continue
            return Certificate(tuple(chosen), L).encode(layout.cell_size)
        return None


def cheatsheet_det_adversary(fn: BooleanFunction, p: int) -> CheatSheetAdversary:
    return CheatSheetAdversary(fn, p)
