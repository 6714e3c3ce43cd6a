"""
Compose - 函数复合 f∘g

第 j 个内层输入占据位 [j·M, (j+1)·M)，M = arity(g)。部分函数的定义域：
全部内层输入都在 g 的定义域内，且外层字符串在 f 的定义域内。
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .._internal.config_tools import current_limits
from .function import BlockMeta, BooleanFunction, OUT_OF_DOMAIN
from .registry import register_generator


def _outputs_lookup(fn: BooleanFunction) -> Optional[np.ndarray]:
    if fn.is_table or fn.arity <= min(16, current_limits().max_table_arity):
        return fn.outputs()
    return None


@register_generator("compose", "外层 f 与内层 g 的复合")
def compose(f: BooleanFunction, g: BooleanFunction) -> BooleanFunction:
    m, k = f.arity, g.arity
    arity = m * k
    outer = _outputs_lookup(f)
    inner = _outputs_lookup(g)

    def evaluator(bits: np.ndarray) -> Optional[int]:
        inner_bits = np.empty(m, dtype=np.uint8)
        for j in range(m):
            v = g.value_or_none(bits[j * k:(j + 1) * k])
            if v is None:
                return None
            inner_bits[j] = v
        return f.value_or_none(inner_bits)

    batch = None
    if outer is not None and inner is not None:
        block_mask = (1 << k) - 1

        def batch(idx: np.ndarray) -> np.ndarray:
            outer_idx = np.zeros(idx.shape, dtype=np.int64)
            bad = np.zeros(idx.shape, dtype=bool)
            for j in range(m):
                v = inner[(idx >> (j * k)) & block_mask]
                bad |= v < 0
                outer_idx |= np.where(v > 0, 1, 0).astype(np.int64) << j
            out = outer[outer_idx]
            return np.where(bad, OUT_OF_DOMAIN, out).astype(np.int8)

    return BooleanFunction(
        arity,
        name=f"{f.name}∘{g.name}",
        evaluator=evaluator,
        batch=batch,
        total=f.is_total() and g.is_total(),
        generator="compose",
        params={"f": f, "g": g},
        block_meta=BlockMeta(k, m),
    )
