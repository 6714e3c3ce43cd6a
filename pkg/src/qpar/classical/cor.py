"""
COR Adversaries - 相关函数问题的对手与混合分布

cor_det_adversary 把 f 部分的查询交给 f 的对手、g 部分交给 g 的对手；
两边预算都未耗尽时，0-补全与 1-补全同时存在。
hybrid_distribution 给出混合论证中的乘积分布 P0、P_hybrid、P1。
"""

from __future__ import annotations

from typing import Callable, Dict, Mapping, Optional, Tuple

import numpy as np

from ..boolfn.function import BooleanFunction
from .._internal.errors import ArityMismatch
from .model import AdaptiveAnswerer


class CorAdversary(AdaptiveAnswerer):
    """按分量路由的 COR 对手（bit 粒度，下标 < arity(f) 属于 f 部分）"""

    def __init__(self, f_adv: AdaptiveAnswerer, g_adv: AdaptiveAnswerer, f_arity: int) -> None:
        super().__init__()
        self.f_adv = f_adv
        self.g_adv = g_adv
        self.f_arity = int(f_arity)

    def respond(self, positions: Tuple[int, ...]) -> Tuple[int, ...]:
        left = tuple(i for i in positions if i < self.f_arity)
        right = tuple(i - self.f_arity for i in positions if i >= self.f_arity)
        answers: Dict[int, int] = {}
        if left:
            answers.update(zip(left, self.f_adv.answer(left)))
        if right:
            answers.update((i + self.f_arity, a)
                           for i, a in zip(right, self.g_adv.answer(right)))
        return tuple(answers[i] for i in positions)

    def completion(self, value: int) -> Optional[np.ndarray]:
        x = self.f_adv.completion(value)
        y = self.g_adv.completion(value)
        if x is None or y is None:
            return None
        return np.concatenate([x, y]).astype(np.uint8)


def cor_det_adversary(f_adv: AdaptiveAnswerer, g_adv: AdaptiveAnswerer,
                      f_arity: int) -> CorAdversary:
    return CorAdversary(f_adv, g_adv, f_arity)


Distribution = Dict[int, float]


def product_distribution(dist_x: Mapping[int, float], dist_y: Mapping[int, float],
                         f_arity: int) -> Distribution:
    """(x, y) 的乘积分布，联合下标为 x | (y << arity(f))"""
    return {
        int(x) | (int(y) << f_arity): px * py
        for x, px in dist_x.items()
        for y, py in dist_y.items()
    }


def hybrid_distribution(
    f_dists: Tuple[Mapping[int, float], Mapping[int, float]],
    g_dists: Tuple[Mapping[int, float], Mapping[int, float]],
    f_arity: int,
    which: str = "hybrid",
) -> Distribution:
    """混合论证的分布

    Args:
        f_dists: (P^f_0, P^f_1)
        g_dists: (P^g_0, P^g_1)
        which: "p0" = P^f_0×P^g_0，"hybrid" = P^f_0×P^g_1，"p1" = P^f_1×P^g_1
    """
    choice = {"p0": (0, 0), "hybrid": (0, 1), "p1": (1, 1)}
    if which not in choice:
        raise ArityMismatch(f"unknown hybrid stage: {which}", which=which)
    a, b = choice[which]
    return product_distribution(f_dists[a], g_dists[b], f_arity)


def uniform_on(f: BooleanFunction, value: int) -> Distribution:
    pts = f.points(value)
    return {int(i): 1.0 / pts.size for i in pts}


def distinguishing_advantage(
    statistic: Callable[[int], int], dist_a: Mapping[int, float], dist_b: Mapping[int, float]
) -> float:
    """|Pr_A[stat = 1] - Pr_B[stat = 1]|，对显式分布精确计算"""
    pa = sum(p for x, p in dist_a.items() if statistic(x))
    pb = sum(p for x, p in dist_b.items() if statistic(x))
    return abs(pa - pb)
