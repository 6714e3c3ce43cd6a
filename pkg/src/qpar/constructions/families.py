"""
Families - 基础构造族

AND∘OR、k-SUM、Block k-SUM、BKK 与修改版 Deutsch-Jozsa。
块按小端无符号整数读数，再对模数取余。
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from ..boolfn.builders import popcount
from ..boolfn.compose import compose
from ..boolfn.function import BlockMeta, BooleanFunction, OUT_OF_DOMAIN, to_index
from ..boolfn.registry import register_generator
from .._internal.errors import ArityMismatch


def block_values(idx: np.ndarray, block_bits: int, blocks: int) -> np.ndarray:
    """输入下标数组 → 形状 (len, blocks) 的块整数值"""
    idx = np.asarray(idx, dtype=np.int64)
    mask = (1 << block_bits) - 1
    shifts = np.arange(blocks, dtype=np.int64) * block_bits
    return (idx[:, None] >> shifts[None, :]) & mask


def bits_block_values(bits: np.ndarray, block_bits: int, blocks: int) -> list:
    return [to_index(bits[j * block_bits:(j + 1) * block_bits]) for j in range(blocks)]


def ksum_holds(values: Sequence[int], k: int, modulus: int) -> bool:
    """是否存在 k 个块之和 ≡ 0 (mod modulus)"""
    reduced = [int(v) % modulus for v in values]
    return any(sum(c) % modulus == 0 for c in combinations(reduced, k))


def _ksum_batch(vals: np.ndarray, k: int, modulus: int) -> np.ndarray:
    vals = vals % modulus
    hit = np.zeros(vals.shape[0], dtype=bool)
    for combo in combinations(range(vals.shape[1]), k):
        hit |= vals[:, list(combo)].sum(axis=1) % modulus == 0
    return hit


@register_generator("and-or", "AND∘OR：每个 OR 块都含 1 时输出 1")
def make_and_or(blocks: int, block_size: int) -> BooleanFunction:
    block_mask = (1 << block_size) - 1

    def evaluator(bits: np.ndarray) -> int:
        return int(all(bits[j * block_size:(j + 1) * block_size].any()
                       for j in range(blocks)))

    def batch(idx: np.ndarray) -> np.ndarray:
        out = np.ones(idx.shape, dtype=bool)
        for j in range(blocks):
            out &= ((idx >> (j * block_size)) & block_mask) != 0
        return out.astype(np.int8)

    return BooleanFunction(
        blocks * block_size,
        name=f"ANDOR_{blocks}x{block_size}",
        evaluator=evaluator,
        batch=batch,
        total=True,
        generator="and-or",
        params={"blocks": blocks, "block_size": block_size},
        block_meta=BlockMeta(block_size, blocks),
    )


@register_generator("ksum", "k-SUM：存在 k 个块之和为 0 (mod M)")
def make_ksum(blocks: int, k: int, block_bits: int, modulus: int) -> BooleanFunction:
    if modulus < 2:
        raise ArityMismatch("k-SUM modulus must be at least 2", modulus=modulus)
    if k > blocks:
        raise ArityMismatch("k exceeds block count", k=k, blocks=blocks)

    def evaluator(bits: np.ndarray) -> int:
        return int(ksum_holds(bits_block_values(bits, block_bits, blocks), k, modulus))

    def batch(idx: np.ndarray) -> np.ndarray:
        return _ksum_batch(block_values(idx, block_bits, blocks), k, modulus).astype(np.int8)

    return BooleanFunction(
        blocks * block_bits,
        name=f"KSUM_{blocks}_{k}",
        evaluator=evaluator,
        batch=batch,
        total=True,
        generator="ksum",
        params={"blocks": blocks, "k": k, "block_bits": block_bits, "modulus": modulus},
        block_meta=BlockMeta(block_bits, blocks),
    )


@register_generator("block-ksum", "Block k-SUM：平衡块上的 k-SUM，且非平衡块多数为 1")
def make_block_ksum(blocks: int, k: int, block_bits: int, modulus: int) -> BooleanFunction:
    if block_bits % 2:
        raise ArityMismatch("Block k-SUM needs an even block width", block_bits=block_bits)
    half = block_bits // 2

    def decide(values: Sequence[int]) -> int:
        balanced = []
        for v in values:
            ones = bin(v).count("1")
            if ones == half:
                balanced.append(v)
            elif ones < half:
                return 0
        return int(len(balanced) >= k and ksum_holds(balanced, k, modulus))

    def evaluator(bits: np.ndarray) -> int:
        return decide(bits_block_values(bits, block_bits, blocks))

    def batch(idx: np.ndarray) -> np.ndarray:
        vals = block_values(idx, block_bits, blocks)
        weights = popcount(vals, block_bits)
        balanced = weights == half
        minority_ok = (weights >= half).all(axis=1)
        hit = np.zeros(idx.shape[0], dtype=bool)
        reduced = vals % modulus
        for combo in combinations(range(blocks), k):
            cols = list(combo)
            hit |= balanced[:, cols].all(axis=1) & (reduced[:, cols].sum(axis=1) % modulus == 0)
        return (hit & minority_ok).astype(np.int8)

    return BooleanFunction(
        blocks * block_bits,
        name=f"BKSUM_{blocks}_{k}",
        evaluator=evaluator,
        batch=batch,
        total=True,
        generator="block-ksum",
        params={"blocks": blocks, "k": k, "block_bits": block_bits, "modulus": modulus},
        block_meta=BlockMeta(block_bits, blocks),
    )


@register_generator("bkk", "Block k-SUM ∘ k-SUM（桌面规模参数）")
def make_bkk(
    outer_blocks: int = 2,
    outer_k: int = 1,
    outer_block_bits: int = 2,
    outer_modulus: int = 2,
    inner_blocks: int = 2,
    inner_k: int = 1,
    inner_block_bits: int = 1,
    inner_modulus: int = 2,
) -> BooleanFunction:
    outer = make_block_ksum(outer_blocks, outer_k, outer_block_bits, outer_modulus)
    inner = make_ksum(inner_blocks, inner_k, inner_block_bits, inner_modulus)
    fn = compose(outer, inner)
    fn.name = f"BKK_{outer.arity}x{inner.arity}"
    fn.generator = "bkk"
    fn.params = {
        "outer_blocks": outer_blocks,
        "outer_k": outer_k,
        "outer_block_bits": outer_block_bits,
        "outer_modulus": outer_modulus,
        "inner_blocks": inner_blocks,
        "inner_k": inner_k,
        "inner_block_bits": inner_block_bits,
        "inner_modulus": inner_modulus,
    }
    return fn


@register_generator("dj", "修改版 Deutsch-Jozsa：全 0 输出 0，平衡串输出 1")
def make_dj(n: int) -> BooleanFunction:
    if n % 2:
        raise ArityMismatch("Deutsch-Jozsa needs an even arity", n=n)
    half = n // 2

    def evaluator(bits: np.ndarray) -> Optional[int]:
        weight = int(bits.sum())
        if weight == 0:
            return 0
        return 1 if weight == half else None

    def batch(idx: np.ndarray) -> np.ndarray:
        weight = popcount(idx, n)
        out = np.full(idx.shape, OUT_OF_DOMAIN, dtype=np.int8)
        out[weight == 0] = 0
        out[weight == half] = 1
        return out

    return BooleanFunction(
        n,
        name=f"DJ_{n}",
        evaluator=evaluator,
        batch=batch,
        total=False,
        generator="dj",
        params={"n": n},
    )
