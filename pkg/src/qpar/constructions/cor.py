"""
COR - 相关函数问题与 ANA 函数

COR(f,g)：输入 (x, y)，承诺 f(x) = g(y)，输出该公共值。
输入下标为 x | (y << arity(f))。ANA 把指针追踪与 PARITY∘内层函数配对。
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..boolfn.builders import make_parity
from ..boolfn.compose import compose
from ..boolfn.function import BooleanFunction, OUT_OF_DOMAIN
from ..boolfn.registry import register_generator
from .._internal.config_tools import current_limits
from .._internal.errors import DescriptorError
from .families import make_dj
from .forrelation import make_forrelation
from .pointer import make_pointer


@dataclass(frozen=True)
class CorParts:
    """COR 的两个分量"""

    f: BooleanFunction
    g: BooleanFunction


def _lookup(fn: BooleanFunction) -> Optional[np.ndarray]:
    if fn.is_table or fn.arity <= min(16, current_limits().max_table_arity):
        return fn.outputs()
    return None


@register_generator("cor", "COR(f,g)：承诺 f(x)=g(y)，输出公共值")
def make_cor(f: BooleanFunction, g: BooleanFunction) -> BooleanFunction:
    nf, ng = f.arity, g.arity

    def evaluator(bits: np.ndarray) -> Optional[int]:
        a = f.value_or_none(bits[:nf])
        if a is None:
            return None
        b = g.value_or_none(bits[nf:])
        return a if a == b else None

    batch = None
    left, right = _lookup(f), _lookup(g)
    if left is not None and right is not None:
        low = (1 << nf) - 1

        def batch(idx: np.ndarray) -> np.ndarray:
            a = left[idx & low]
            b = right[idx >> nf]
            return np.where((a >= 0) & (a == b), a, OUT_OF_DOMAIN).astype(np.int8)

    return BooleanFunction(
        nf + ng,
        name=f"COR({f.name},{g.name})",
        evaluator=evaluator,
        batch=batch,
        total=False,
        generator="cor",
        params={"f": f, "g": g},
        structure=CorParts(f, g),
    )


@register_generator("ana", "ANA：COR(指针追踪, PARITY∘内层)")
def make_ana(
    kind: str = "dj",
    n_blocks: int = 4,
    k: int = 2,
    m: int = 2,
    inner_n: Optional[int] = None,
) -> BooleanFunction:
    """ANA 函数

    Args:
        kind: "dj" 或 "forrelation"
        n_blocks, k: 指针追踪参数
        m: 奇偶校验的内层副本数
        inner_n: 内层规模（dj 默认 2，forrelation 默认 1）
    """
    if kind == "dj":
        inner = make_dj(inner_n or 2)
    elif kind == "forrelation":
        inner = make_forrelation(inner_n or 1)
    else:
        raise DescriptorError(f"unknown ANA kind: {kind}", kind=kind)
    fn = make_cor(make_pointer(n_blocks, k), compose(make_parity(m), inner))
    fn.name = f"ANA_{kind}_{n_blocks}_{k}_{m}"
    fn.generator = "ana"
    fn.params = {"kind": kind, "n_blocks": n_blocks, "k": k, "m": m, "inner_n": inner_n}
    return fn
