"""
Pointer Chasing - 指针追踪函数

N 个块，每块 log2 N 位，块 i 的小端整数值为指针 X(i)。
输出为从块 0 出发跳 k 次后到达的标签的最低位，即 X^k(0) & 1。
"""

from __future__ import annotations

from typing import Dict, FrozenSet, List, Sequence

import numpy as np

from ..boolfn.function import BlockMeta, BooleanFunction
from ..boolfn.registry import register_generator
from .._internal.errors import ArityMismatch
from .families import block_values, bits_block_values


def pointer_width(n_blocks: int) -> int:
    if n_blocks < 2 or n_blocks & (n_blocks - 1):
        raise ArityMismatch(f"pointer chasing needs a power-of-two block count, got {n_blocks}",
                            n_blocks=n_blocks)
    return n_blocks.bit_length() - 1


def chase(pointers: Sequence[int], k: int, start: int = 0) -> int:
    """X^k(start)"""
    cur = start
    for _ in range(k):
        cur = int(pointers[cur])
    return cur


def chain(pointers: Sequence[int], k: int) -> List[int]:
    """[0, X(0), X^2(0), ..., X^k(0)]"""
    out = [0]
    for _ in range(k):
        out.append(int(pointers[out[-1]]))
    return out


def encode_pointers(pointers: Sequence[int], n_blocks: int) -> np.ndarray:
    """指针数组 → 输入位"""
    w = pointer_width(n_blocks)
    if len(pointers) != n_blocks:
        raise ArityMismatch(f"need {n_blocks} pointers, got {len(pointers)}")
    bits = np.zeros(n_blocks * w, dtype=np.uint8)
    for i, target in enumerate(pointers):
        for b in range(w):
            bits[i * w + b] = (int(target) >> b) & 1
    return bits


def _outcome_search(n_blocks: int, width: int, k: int):
    """部分赋值下仍可能的输出：沿链深度优先，已分支的块保持一致"""

    def outcomes(known: Dict[int, int]) -> FrozenSet[int]:
        fixed_mask = [0] * n_blocks
        fixed_vals = [0] * n_blocks
        for pos, val in known.items():
            blk, bit = divmod(pos, width)
            fixed_mask[blk] |= 1 << bit
            if val:
                fixed_vals[blk] |= 1 << bit
        full = (1 << width) - 1
        found = set()
        assigned: Dict[int, int] = {}

        def candidates(blk: int) -> List[int]:
            if blk in assigned:
                return [assigned[blk]]
            m, v = fixed_mask[blk], fixed_vals[blk]
            if m == full:
                return [v]
            return [t for t in range(n_blocks) if t & m == v]

        def walk(cur: int, hops: int) -> None:
            if len(found) == 2:
                return
            if hops == k:
                found.add(cur & 1)
                return
            for nxt in candidates(cur):
                fresh = cur not in assigned
                if fresh:
                    assigned[cur] = nxt
                walk(nxt, hops + 1)
                if fresh:
                    del assigned[cur]
                if len(found) == 2:
                    return

        walk(0, 0)
        return frozenset(found)

    return outcomes


@register_generator("pointer", "指针追踪：X^k(0) 的最低位")
def make_pointer(n: int, k: int) -> BooleanFunction:
    width = pointer_width(n)

    def evaluator(bits: np.ndarray) -> int:
        return chase(bits_block_values(bits, width, n), k) & 1

    def batch(idx: np.ndarray) -> np.ndarray:
        vals = block_values(idx, width, n)
        cur = np.zeros(idx.shape[0], dtype=np.int64)
        rows = np.arange(idx.shape[0])
        for _ in range(k):
            cur = vals[rows, cur]
        return (cur & 1).astype(np.int8)

    return BooleanFunction(
        n * width,
        name=f"POINTER_{n}_{k}",
        evaluator=evaluator,
        batch=batch,
        total=True,
        generator="pointer",
        params={"n": n, "k": k},
        block_meta=BlockMeta(width, n),
        outcomes=_outcome_search(n, width, k),
    )
