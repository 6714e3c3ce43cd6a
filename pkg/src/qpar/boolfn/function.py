"""
Boolean Function - (部分)布尔函数的表示

两种后端：
- table: 2^N 位输出打包位集 + 2^N 位定义域掩码（N ≤ QPAR_MAX_TABLE_ARITY）
- generator: 具名生成器 + 参数记录，按需逐点求值

输入下标约定：x 的第 i 位对应整数下标的第 i 位，即 index = Σ x_i·2^i。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, FrozenSet, Iterable, Optional, Sequence, Union

import numpy as np

from .._internal.config_tools import current_limits
from .._internal.errors import ArityMismatch, OutOfDomain, TooLarge

logger = logging.getLogger(__name__)

BitsLike = Union[int, str, Sequence[int], np.ndarray]
Evaluator = Callable[[np.ndarray], Optional[int]]
BatchEvaluator = Callable[[np.ndarray], np.ndarray]
OutcomeHook = Callable[[Dict[int, int]], FrozenSet[int]]

OUT_OF_DOMAIN = -1


@dataclass(frozen=True)
class BlockMeta:
    """块字母表元数据：每块位数与块数（块 j 占据位 j·block_bits 起的连续位）"""

    block_bits: int
    block_count: int

    def block_range(self, block: int) -> range:
        start = block * self.block_bits
        return range(start, start + self.block_bits)


def to_bits(x: BitsLike, arity: int) -> np.ndarray:
    """把整数下标、'0101' 字符串或位序列转换为长度 arity 的 uint8 数组"""
    if isinstance(x, (int, np.integer)):
        value = int(x)
        if value < 0 or value >> arity:
            raise ArityMismatch(
                f"index {value} does not fit {arity} bits", arity=arity, index=value
            )
        if arity <= 62:
            return ((value >> np.arange(arity, dtype=np.int64)) & 1).astype(np.uint8)
        return np.array([(value >> i) & 1 for i in range(arity)], dtype=np.uint8)
    if isinstance(x, str):
        cleaned = x.replace(" ", "").replace("_", "")
        if any(ch not in "01" for ch in cleaned):
            raise ArityMismatch(f"bitstring has non-binary characters: {x!r}")
        bits = np.frombuffer(cleaned.encode("ascii"), dtype=np.uint8) - ord("0")
    else:
        bits = np.asarray(x, dtype=np.uint8).ravel()
    if bits.shape[0] != arity:
        raise ArityMismatch(
            f"expected {arity} bits, got {bits.shape[0]}",
            arity=arity,
            length=int(bits.shape[0]),
        )
    return bits.astype(np.uint8, copy=True)


def to_index(bits: Sequence[int]) -> int:
    """位序列 → 整数下标（小端）"""
    value = 0
    for i, b in enumerate(bits):
        if b:
            value |= 1 << i
    return value


def all_bits(arity: int) -> np.ndarray:
    """所有 2^arity 个输入的位矩阵，形状 (2^arity, arity)"""
    idx = np.arange(1 << arity, dtype=np.int64)
    return ((idx[:, None] >> np.arange(arity, dtype=np.int64)) & 1).astype(np.uint8)


class BooleanFunction:
    """(部分)布尔函数，构造后不可变，可跨线程共享"""

    def __init__(
        self,
        arity: int,
        *,
        name: str,
        table: Optional[np.ndarray] = None,
        domain: Optional[np.ndarray] = None,
        evaluator: Optional[Evaluator] = None,
        batch: Optional[BatchEvaluator] = None,
        total: Optional[bool] = None,
        generator: Optional[str] = None,
        params: Optional[Dict[str, Any]] = None,
        block_meta: Optional[BlockMeta] = None,
        outcomes: Optional[OutcomeHook] = None,
        structure: Any = None,
    ) -> None:
        if arity < 0:
            raise ArityMismatch(f"arity must be non-negative, got {arity}")
        self.arity = int(arity)
        self.name = name
        self.generator = generator
        self.params: Dict[str, Any] = dict(params or {})
        self.block_meta = block_meta
        self._evaluator = evaluator
        self._batch = batch
        self._outcomes = outcomes
        # 构造的布局对象（作弊表、2-Adaptive 等），供算法与对手读取
        self.structure = structure
        self._packed_out: Optional[np.ndarray] = None
        self._packed_dom: Optional[np.ndarray] = None
        self._cache: Dict[str, Any] = {}

        if table is not None:
            cap = current_limits().max_table_arity
            if self.arity > cap:
                raise TooLarge(
                    f"table backing limited to arity {cap}", arity=self.arity, cap=cap
                )
            values = np.asarray(table, dtype=np.uint8).ravel()
            if values.shape[0] != 1 << self.arity:
                raise ArityMismatch(
                    f"table needs {1 << self.arity} entries, got {values.shape[0]}"
                )
            mask = (
                np.ones(values.shape[0], dtype=bool)
                if domain is None
                else np.asarray(domain, dtype=bool).ravel()
            )
            if mask.shape[0] != values.shape[0]:
                raise ArityMismatch("domain mask length differs from table length")
            values = np.where(mask, values & 1, 0).astype(np.uint8)
            self._packed_out = np.packbits(values, bitorder="little")
            self._packed_dom = np.packbits(mask.astype(np.uint8), bitorder="little")
            self._total = bool(mask.all())
        elif evaluator is not None:
            self._total = bool(total) if total is not None else False
        else:
            raise ValueError("BooleanFunction needs a table or an evaluator")

    # ------------------------------------------------------------------ backing
    @property
    def kind(self) -> str:
        return "table" if self._packed_out is not None else "gen"

    @property
    def is_table(self) -> bool:
        return self._packed_out is not None

    def is_total(self) -> bool:
        return self._total

    def _table_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        cached = self._cache.get("arrays")
        if cached is not None:
            return cached
        size = 1 << self.arity
        if self._packed_out is not None:
            values = np.unpackbits(self._packed_out, bitorder="little")[:size]
            mask = np.unpackbits(self._packed_dom, bitorder="little")[:size].astype(bool)
        else:
            cap = current_limits().max_table_arity
            if self.arity > cap:
                raise TooLarge(
                    f"{self.name}: cannot sweep arity {self.arity} (cap {cap})",
                    arity=self.arity,
                    cap=cap,
                )
            raw = self._sweep()
            mask = raw >= 0
            values = np.where(mask, raw, 0).astype(np.uint8)
        values.setflags(write=False)
        mask.setflags(write=False)
        self._cache["arrays"] = (values, mask)
        return values, mask

    def _sweep(self) -> np.ndarray:
        idx = np.arange(1 << self.arity, dtype=np.int64)
        if self._batch is not None:
            return np.asarray(self._batch(idx), dtype=np.int8)
        logger.debug("sweeping %s pointwise over %d inputs", self.name, idx.shape[0])
        out = np.empty(idx.shape[0], dtype=np.int8)
        bits = all_bits(self.arity)
        for i in range(idx.shape[0]):
            v = self._evaluator(bits[i])
            out[i] = OUT_OF_DOMAIN if v is None else v
        return out

    def table_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(values, domain_mask)，长度 2^N；定义域外 values 为 0"""
        return self._table_arrays()

    def outputs(self) -> np.ndarray:
        """int8 数组，定义域外为 -1"""
        values, mask = self._table_arrays()
        out = values.astype(np.int8)
        out[~mask] = OUT_OF_DOMAIN
        return out

    def materialize(self) -> "BooleanFunction":
        """生成器后端 → 真值表后端（保留名称、参数与块元数据）"""
        if self.is_table:
            return self
        values, mask = self._table_arrays()
        return BooleanFunction(
            self.arity,
            name=self.name,
            table=values,
            domain=mask,
            generator=self.generator,
            params=self.params,
            block_meta=self.block_meta,
            outcomes=self._outcomes,
            structure=self.structure,
        )

    # --------------------------------------------------------------- evaluation
    def value_or_none(self, x: BitsLike) -> Optional[int]:
        """定义域外返回 None 的求值"""
        if self._packed_out is not None:
            idx = x if isinstance(x, (int, np.integer)) else to_index(to_bits(x, self.arity))
            idx = int(idx)
            if idx < 0 or idx >> self.arity:
                raise ArityMismatch(f"index {idx} does not fit {self.arity} bits")
            byte, bit = divmod(idx, 8)
            if not (self._packed_dom[byte] >> bit) & 1:
                return None
            return int((self._packed_out[byte] >> bit) & 1)
        v = self._evaluator(to_bits(x, self.arity))
        return None if v is None else int(v)

    def evaluate(self, x: BitsLike) -> int:
        value = self.value_or_none(x)
        if value is None:
            raise OutOfDomain(f"input outside the domain of {self.name}", function=self.name)
        return value

    __call__ = evaluate

    def in_domain(self, x: BitsLike) -> bool:
        return self.value_or_none(x) is not None

    def domain_size(self) -> int:
        if self._total:
            return 1 << self.arity
        _, mask = self._table_arrays()
        return int(mask.sum())

    def points(self, value: Optional[int] = None) -> np.ndarray:
        """定义域内输入下标（可按函数值过滤）"""
        values, mask = self._table_arrays()
        sel = mask if value is None else mask & (values == value)
        return np.flatnonzero(sel).astype(np.int64)

    def is_constant(self) -> bool:
        values, mask = self._table_arrays()
        dom_values = values[mask]
        return dom_values.size == 0 or bool((dom_values == dom_values[0]).all())

    def partial_outcomes(self, known: Dict[int, int]) -> FrozenSet[int]:
        """给定部分赋值（位下标 → 值），返回仍可能的输出集合"""
        if self._outcomes is not None and not self.is_table:
            return self._outcomes(known)
        values, mask = self._table_arrays()
        idx = self._cache.get("index_range")
        if idx is None:
            idx = np.arange(1 << self.arity, dtype=np.int64)
            self._cache["index_range"] = idx
        pos_mask = 0
        pos_vals = 0
        for pos, val in known.items():
            pos_mask |= 1 << pos
            if val:
                pos_vals |= 1 << pos
        sel = mask & ((idx & pos_mask) == pos_vals)
        return frozenset(int(v) for v in np.unique(values[sel]))

    # ---------------------------------------------------------------- identity
    def spec_expr(self) -> str:
        """可被描述符解析器还原的表达式"""
        from .descriptor import function_expr

        return function_expr(self)

    def __repr__(self) -> str:
        return f"BooleanFunction({self.name!r}, arity={self.arity}, kind={self.kind})"


def from_table(
    outputs: Iterable[int],
    *,
    domain: Optional[Iterable[bool]] = None,
    name: str = "table",
) -> BooleanFunction:
    """由输出列表（下标序）构建真值表函数"""
    values = np.asarray(list(outputs), dtype=np.uint8)
    arity = int(values.shape[0]).bit_length() - 1
    if values.shape[0] != 1 << arity:
        raise ArityMismatch(f"table length {values.shape[0]} is not a power of two")
    mask = None if domain is None else np.asarray(list(domain), dtype=bool)
    return BooleanFunction(arity, name=name, table=values, domain=mask)
