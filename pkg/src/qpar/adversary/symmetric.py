"""
Symmetric - 对称函数的最近邻对抗矩阵

f 只依赖汉明重量，剖面 f_0..f_N。t_f 为满足
    f_t ≠ f_{t+1}  或  f_{N-t} ≠ f_{N-t-1}
的最大 t ≤ N/2。前者成立时连接重量 t 与 t+1 的相邻输入；只有后者成立时
取补（连接重量 N-t-1 与 N-t）。
"""

from __future__ import annotations

import logging
from math import sqrt
from typing import Tuple

import numpy as np

from ..boolfn.builders import popcount
from ..boolfn.function import BooleanFunction
from .._internal.errors import ConstantFunction, NotSymmetric
from .matrix import AdversaryMatrix, from_pairs

logger = logging.getLogger(__name__)


def weight_profile(f: BooleanFunction) -> Tuple[int, ...]:
    """(f_0, ..., f_N)；f 不对称或非全函数时抛 NotSymmetric"""
    cached = f._cache.get("weight_profile")
    if cached is not None:
        return tuple(cached)
    values, mask = f.table_arrays()
    if not mask.all():
        raise NotSymmetric(f"{f.name} is partial", function=f.name)
    weights = popcount(np.arange(1 << f.arity), f.arity)
    profile = []
    for w in range(f.arity + 1):
        seen = np.unique(values[weights == w])
        if seen.size != 1:
            raise NotSymmetric(f"{f.name} is not symmetric at weight {w}",
                               function=f.name, weight=w)
        profile.append(int(seen[0]))
    return tuple(profile)


def symmetric_threshold(profile: Tuple[int, ...]) -> Tuple[int, bool]:
    """(t_f, 是否取补)"""
    n = len(profile) - 1
    if len(set(profile)) == 1:
        raise ConstantFunction("symmetric adversary needs a non-constant function")
    for t in range(n // 2, -1, -1):
        if profile[t] != profile[t + 1]:
            return t, False
        if profile[n - t] != profile[n - t - 1]:
            return t, True
    # 非常函数在某个 t ≤ N/2 处必有跳变
    raise ConstantFunction("no weight transition found")


def symmetric_adversary(f: BooleanFunction) -> Tuple[int, AdversaryMatrix]:
    profile = weight_profile(f)
    t, flipped = symmetric_threshold(profile)
    n = f.arity
    low = n - t - 1 if flipped else t
    idx = np.arange(1 << n, dtype=np.int64)
    lows = idx[popcount(idx, n) == low]
    pairs = []
    for x in lows.tolist():
        for i in range(n):
            if not (x >> i) & 1:
                pairs.append((x, x | (1 << i)))
    logger.info(f"⚖️ symmetric adversary {f.name}: t_f={t}, weights {low}/{low + 1}")
    return t, from_pairs(f, pairs)


def symmetric_prediction(n: int, t: int, p: int) -> float:
    """√(N·t/(p·min(p,t)))，t 与 min(p,t) 均下取 1"""
    t = max(1, int(t))
    p = max(1, int(p))
    return sqrt(n * t / (p * max(1, min(p, t))))
