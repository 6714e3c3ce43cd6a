"""
Seeding - 可复现随机数

所有采样器使用 PCG64；派生流通过 SeedSequence.spawn 生成。
"""

from typing import List

import numpy as np

SEED_MASK = (1 << 64) - 1


def make_rng(seed: int) -> np.random.Generator:
    """由 64 位种子构建 PCG64 生成器"""
    return np.random.Generator(np.random.PCG64(int(seed) & SEED_MASK))


def spawn_rngs(seed: int, count: int) -> List[np.random.Generator]:
    """派生 count 个互相独立的生成器"""
    children = np.random.SeedSequence(int(seed) & SEED_MASK).spawn(count)
    return [np.random.Generator(np.random.PCG64(child)) for child in children]


def spawn_seeds(seed: int, count: int) -> List[int]:
    """派生 count 个 64 位整数种子（用于逐试验记录）"""
    children = np.random.SeedSequence(int(seed) & SEED_MASK).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]
