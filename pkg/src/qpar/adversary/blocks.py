"""
Blocks - 最近邻对抗矩阵的块对角分解

最近邻 Γ 的 Γ_S 只连接 S 之外取值相同的输入，按补集赋值分成 2^{N-p}
个 2^p × 2^p 的块；每块都是对应限制函数的对抗矩阵。
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from ..boolfn.restriction import Restriction, scatter
from .._internal.errors import ConstructionFailed, NotNearestNeighbor
from .matrix import AdversaryMatrix, reassemble


@dataclass
class Block:
    matrix: np.ndarray
    indices: np.ndarray
    restriction: Restriction

    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix, 2)) if self.matrix.any() else 0.0


def block_decompose(gamma: AdversaryMatrix, S: Sequence[int]) -> List[Block]:
    if not gamma.is_nearest_neighbor():
        raise NotNearestNeighbor("block decomposition needs a nearest-neighbor matrix")
    f = gamma.function
    free = sorted(int(i) for i in S)
    complement = [i for i in range(f.arity) if i not in set(free)]
    dense = gamma.gamma_S(free).matrix.toarray()
    local = scatter(np.arange(1 << len(free)), free)
    fixed = scatter(np.arange(1 << len(complement)), complement)
    values, mask = f.table_arrays()
    blocks = []
    for a, base in enumerate(fixed):
        idx = base | local
        block = dense[np.ix_(idx, idx)]
        sub_values, sub_mask = values[idx], mask[idx]
        r, c = np.nonzero(block)
        if np.any(~sub_mask[r] | ~sub_mask[c] | (sub_values[r] == sub_values[c])):
            raise ConstructionFailed("block weights a pair the restriction does not separate",
                                     assignment=int(a))
        assignment = tuple((pos, (a >> j) & 1) for j, pos in enumerate(complement))
        blocks.append(Block(block, idx, Restriction(f, tuple(free), assignment)))
    return blocks


def reassemble_blocks(gamma: AdversaryMatrix, blocks: List[Block]) -> AdversaryMatrix:
    return reassemble(gamma.function, [(b.matrix, b.indices) for b in blocks])
