"""
Reductions - 奇偶到指针追踪的归约

X ∈ {0,1}^{k/2}：f(2i) = 2i+2+X_i，f(2i+1) = 2i+3-X_i，其余指针为 0。
从 0 出发 k/2 步后到达的标签奇偶性等于 PARITY(X)。
"""

from __future__ import annotations

from typing import List, Optional

import numpy as np

from ..boolfn.function import BitsLike, BooleanFunction, to_bits
from ..constructions.pointer import chase, encode_pointers, make_pointer
from .._internal.errors import ArityMismatch


def _reduction_bits(X: BitsLike, length: Optional[int]) -> np.ndarray:
    if length is None:
        if isinstance(X, (int, np.integer)):
            raise ArityMismatch("integer input needs an explicit length")
        if isinstance(X, str):
            X = X.replace(" ", "").replace("_", "")
        length = len(X)
    return to_bits(X, length)


def parity_reduction_pointers(
    X: BitsLike, n_blocks: Optional[int] = None, length: Optional[int] = None
) -> List[int]:
    bits = _reduction_bits(X, length)
    half = bits.shape[0]
    if n_blocks is None:
        n_blocks = 1 << (2 * half + 1).bit_length()
    if n_blocks < 2 * half + 2:
        raise ArityMismatch(f"reduction needs at least {2 * half + 2} blocks", n_blocks=n_blocks)
    pointers = [0] * n_blocks
    for i, x in enumerate(bits):
        pointers[2 * i] = 2 * i + 2 + int(x)
        pointers[2 * i + 1] = 2 * i + 3 - int(x)
    return pointers


def parity_reduction_instance(
    X: BitsLike, n_blocks: Optional[int] = None, length: Optional[int] = None
) -> tuple[BooleanFunction, np.ndarray]:
    """(指针追踪函数 k = |X|, 输入位)；函数值等于 PARITY(X)

    X 为整数下标时须给出 length。
    """
    bits = _reduction_bits(X, length)
    pointers = parity_reduction_pointers(bits, n_blocks)
    n = len(pointers)
    return make_pointer(n, bits.shape[0]), encode_pointers(pointers, n)


def chain_parity(X: BitsLike, n_blocks: Optional[int] = None, length: Optional[int] = None) -> int:
    """直接沿链走 |X| 步得到的标签奇偶"""
    bits = _reduction_bits(X, length)
    return chase(parity_reduction_pointers(bits, n_blocks), bits.shape[0]) & 1
