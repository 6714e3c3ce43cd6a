"""
Combinatorial - 并行组合对抗方法及其证书壁垒

关系 R ⊆ X×Y（f(x)=0, f(y)=1）取 0/1 权重：
    w_x = |{y : (x,y)∈R}|，w_{x,S} = |{y : (x,y)∈R, x_S ≠ y_S}|
    m = min_x w_x，ℓ = max_{x,|S|≤p} w_{x,S}（y 侧对称）
界为 √(m·m'/(ℓ·ℓ'))。w_{x,S} 关于 S 单调，最大值在 |S| = min(p, N) 处取得。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import ceil, sqrt
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..boolfn.function import BooleanFunction
from ..boolfn.measures import SensitivityGraph, certificate_complexity
from .._internal.errors import ConstructionFailed, EmptyRelation, NotTotal
from .ratio import candidate_subsets

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]

EXHAUSTIVE_PAIR_CAP = 12


@dataclass
class RelationWeights:
    """0/1 关系 R 的权重和；pairs 按 (0 侧输入, 1 侧输入) 定向"""

    function: BooleanFunction
    pairs: Tuple[Pair, ...]
    name: str = "relation"
    _by_side: Dict[int, Dict[int, np.ndarray]] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.pairs:
            raise EmptyRelation("relation has no pairs", function=self.function.name)
        oriented = []
        for x, y in self.pairs:
            fx, fy = self.function.value_or_none(int(x)), self.function.value_or_none(int(y))
            if fx is None or fy is None or fx == fy:
                raise ConstructionFailed("relation pair does not separate outputs",
                                         pair=[int(x), int(y)])
            oriented.append((int(x), int(y)) if fx == 0 else (int(y), int(x)))
        self.pairs = tuple(sorted(set(oriented)))
        arr = np.array(self.pairs, dtype=np.int64)
        for side in (0, 1):
            groups: Dict[int, List[int]] = {}
            for a, b in arr[:, [side, 1 - side]].tolist():
                groups.setdefault(a, []).append(a ^ b)
            self._by_side[side] = {k: np.array(v, dtype=np.int64) for k, v in groups.items()}

    @classmethod
    def of(cls, f: BooleanFunction, pairs: Sequence[Pair], name: str = "relation") -> "RelationWeights":
        return cls(f, tuple((int(x), int(y)) for x, y in pairs), name)

    @property
    def X(self) -> List[int]:
        return sorted(self._by_side[0])

    @property
    def Y(self) -> List[int]:
        return sorted(self._by_side[1])

    def w(self, side: int, point: int) -> int:
        return int(self._by_side[side][point].shape[0])

    def w_S(self, side: int, point: int, S: Sequence[int]) -> int:
        mask = 0
        for i in S:
            mask |= 1 << int(i)
        return int(np.count_nonzero(self._by_side[side][point] & mask))

    @property
    def m(self) -> int:
        return min(self.w(0, x) for x in self.X)

    @property
    def m_prime(self) -> int:
        return min(self.w(1, y) for y in self.Y)

    def ell(self, p: int, side: int = 0) -> Tuple[int, Tuple[int, ...]]:
        """(max_{x,|S|≤p} w_{x,S}, 取到最大值的 S)"""
        n = self.function.arity
        q = max(0, min(int(p), n))
        subsets, _, _ = candidate_subsets(n, q)
        masks = np.array([sum(1 << i for i in S) for S in subsets], dtype=np.int64)
        best, best_S = 0, subsets[0] if subsets else ()
        for diffs in self._by_side[side].values():
            counts = np.count_nonzero(diffs[:, None] & masks[None, :], axis=0)
            j = int(np.argmax(counts))
            if counts[j] > best:
                best, best_S = int(counts[j]), subsets[j]
        return best, tuple(best_S)

    def ell_prime(self, p: int) -> Tuple[int, Tuple[int, ...]]:
        return self.ell(p, side=1)


@dataclass
class CombBound:
    value: float
    m: int
    m_prime: int
    ell: int
    ell_prime: int
    relation: str

    def as_dict(self) -> Dict[str, object]:
        return {"value": self.value, "m": self.m, "m_prime": self.m_prime,
                "ell": self.ell, "ell_prime": self.ell_prime, "relation": self.relation}


def comb_adv_bound_details(rw: RelationWeights, p: int) -> CombBound:
    ell, _ = rw.ell(p)
    ell_p, _ = rw.ell_prime(p)
    value = sqrt(rw.m * rw.m_prime / (ell * ell_p)) if ell and ell_p else 0.0
    return CombBound(value, rw.m, rw.m_prime, ell, ell_p, rw.name)


def comb_adv_bound(rw: RelationWeights, p: int) -> float:
    """√(m·m'/(ℓ·ℓ'))"""
    return comb_adv_bound_details(rw, p).value


def barrier_bound(f: BooleanFunction, p: int) -> float:
    """√(⌈C0/p⌉·⌈C1/p⌉)"""
    if not f.is_total():
        raise NotTotal("the certificate barrier is stated for total functions",
                       function=f.name)
    p = max(1, int(p))
    c0 = certificate_complexity(f, 0)
    c1 = certificate_complexity(f, 1)
    return sqrt(ceil(c0 / p) * ceil(c1 / p))


# ------------------------------------------------------------------ relations
def full_relation(f: BooleanFunction) -> RelationWeights:
    """极大二部关系 f^{-1}(0) × f^{-1}(1)"""
    zeros, ones = f.points(0), f.points(1)
    return RelationWeights.of(f, [(x, y) for x in zeros.tolist() for y in ones.tolist()], "full")


def distance_relation(f: BooleanFunction, d: int) -> Optional[RelationWeights]:
    """汉明距离恰为 d 的输出不同对；为空时返回 None"""
    zeros, ones = f.points(0), f.points(1)
    diff = zeros[:, None] ^ ones[None, :]
    weight = np.zeros(diff.shape, dtype=np.int64)
    for i in range(f.arity):
        weight += (diff >> i) & 1
    xi, yi = np.nonzero(weight == d)
    if xi.size == 0:
        return None
    return RelationWeights.of(f, list(zip(zeros[xi].tolist(), ones[yi].tolist())), f"distance-{d}")


def sensitivity_relation(f: BooleanFunction) -> RelationWeights:
    edges = SensitivityGraph.of(f).edges
    return RelationWeights.of(f, [tuple(e) for e in edges.tolist()], "sensitivity")


def or_witness_relation(n: int, f: BooleanFunction) -> RelationWeights:
    """OR_n：R = {(0^n, e_i)}"""
    return RelationWeights.of(f, [(0, 1 << i) for i in range(n)], "or-witness")


def candidate_relations(
    f: BooleanFunction, exhaustive_cap: int = EXHAUSTIVE_PAIR_CAP
) -> Iterator[RelationWeights]:
    """壁垒扫描用的关系族

    总是给出全关系与各汉明距离层；|X|·|Y| ≤ exhaustive_cap 时再枚举全部非空子关系。
    """
    if f.is_constant():
        return
    yield full_relation(f)
    for d in range(1, f.arity + 1):
        rel = distance_relation(f, d)
        if rel is not None:
            yield rel
    zeros, ones = f.points(0).tolist(), f.points(1).tolist()
    universe = [(x, y) for x in zeros for y in ones]
    if len(universe) > exhaustive_cap:
        return
    for mask in range(1, 1 << len(universe)):
        picked = [universe[j] for j in range(len(universe)) if (mask >> j) & 1]
        yield RelationWeights.of(f, picked, f"subset-{mask:x}")


def max_comb_bound(f: BooleanFunction, p: int,
                   exhaustive_cap: int = EXHAUSTIVE_PAIR_CAP) -> Optional[CombBound]:
    """候选关系族上的最大组合界"""
    best: Optional[CombBound] = None
    for rw in candidate_relations(f, exhaustive_cap):
        result = comb_adv_bound_details(rw, p)
        if best is None or result.value > best.value:
            best = result
    return best
