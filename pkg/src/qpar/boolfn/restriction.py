"""
Restriction - 限制函数

固定 S 之外的全部位得到 |S| 元函数 g；g 的第 j 位对应 S 中第 j 小的下标。
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .._internal.errors import ArityMismatch, IndexOutOfRange, OverlapError
from .function import BooleanFunction, to_bits

AssignmentLike = Union[Mapping[int, int], Sequence[int]]


def scatter(values: np.ndarray, positions: Sequence[int]) -> np.ndarray:
    """把 values 的第 j 位放到 positions[j] 位置"""
    values = np.asarray(values, dtype=np.int64)
    out = np.zeros(values.shape, dtype=np.int64)
    for j, pos in enumerate(positions):
        out |= ((values >> j) & 1) << pos
    return out


@dataclass(frozen=True)
class Restriction:
    """基函数 + 自由集合 S + 补集赋值 A"""

    base: BooleanFunction
    free: Tuple[int, ...]
    assignment: Tuple[Tuple[int, int], ...]

    @property
    def arity(self) -> int:
        return len(self.free)

    @property
    def fixed_index(self) -> int:
        value = 0
        for pos, bit in self.assignment:
            if bit:
                value |= 1 << pos
        return value

    def complete(self, z: Union[int, Sequence[int]]) -> np.ndarray:
        """自由位取 z 时基函数的完整输入"""
        zbits = to_bits(z, self.arity)
        x = np.zeros(self.base.arity, dtype=np.uint8)
        for pos, bit in self.assignment:
            x[pos] = bit
        for j, pos in enumerate(self.free):
            x[pos] = zbits[j]
        return x

    def induced(self) -> BooleanFunction:
        base = self.base
        label = f"{base.name}|S={list(self.free)}"
        if base.is_table or base.arity <= 16:
            values, mask = base.table_arrays()
            idx = self.fixed_index | scatter(np.arange(1 << self.arity), self.free)
            return BooleanFunction(
                self.arity, name=label, table=values[idx], domain=mask[idx]
            )
        restriction = self

        def evaluator(bits: np.ndarray):
            return base.value_or_none(restriction.complete(bits))

        return BooleanFunction(
            self.arity, name=label, evaluator=evaluator, total=base.is_total()
        )

    def describe(self) -> Dict[str, object]:
        return {
            "free": list(self.free),
            "assignment": {str(pos): bit for pos, bit in self.assignment},
        }


def make_restriction(
    f: BooleanFunction, S: Sequence[int], A: AssignmentLike
) -> Restriction:
    free = tuple(sorted(int(i) for i in S))
    if len(set(free)) != len(free):
        raise OverlapError("free set has repeated indices", free=list(free))
    for i in free:
        if i < 0 or i >= f.arity:
            raise IndexOutOfRange(f"index {i} outside [0, {f.arity})", index=i)
    complement = [i for i in range(f.arity) if i not in set(free)]
    if isinstance(A, Mapping):
        assigned: Dict[int, int] = {int(k): int(v) & 1 for k, v in A.items()}
        for pos in assigned:
            if pos < 0 or pos >= f.arity:
                raise IndexOutOfRange(f"index {pos} outside [0, {f.arity})", index=pos)
            if pos in free:
                raise OverlapError(f"index {pos} is both free and assigned", index=pos)
        missing = [pos for pos in complement if pos not in assigned]
        if missing:
            raise ArityMismatch("assignment leaves positions unassigned", missing=missing)
    else:
        seq = [int(v) & 1 for v in A]
        if len(seq) != len(complement):
            raise ArityMismatch(
                f"assignment needs {len(complement)} values, got {len(seq)}",
                expected=len(complement),
            )
        assigned = dict(zip(complement, seq))
    return Restriction(f, free, tuple(sorted(assigned.items())))


def restrict(f: BooleanFunction, S: Sequence[int], A: AssignmentLike) -> BooleanFunction:
    """限制 f：S 为自由位，A 为其余位的赋值（映射，或按补集升序的值序列）"""
    return make_restriction(f, S, A).induced()


def restriction_tables(
    f: BooleanFunction, S: Sequence[int]
) -> Tuple[np.ndarray, np.ndarray, List[int]]:
    """固定 S 时全部 2^{N-p} 个限制的真值表

    Returns:
        (values, masks, complement)：形状 (2^{N-p}, 2^p)，第 a 行对应补集赋值 a
    """
    free = sorted(S)
    complement = [i for i in range(f.arity) if i not in set(free)]
    values, mask = f.table_arrays()
    fixed = scatter(np.arange(1 << len(complement)), complement)
    local = scatter(np.arange(1 << len(free)), free)
    idx = fixed[:, None] | local[None, :]
    return values[idx], mask[idx], complement


def enumerate_restrictions(
    f: BooleanFunction, p: int, dedupe: bool = False
) -> Iterator[Tuple[Restriction, Optional[BooleanFunction]]]:
    """枚举全部 p 元限制（共 C(N,p)·2^{N-p} 个）

    dedupe=True 时按 (真值表, 定义域) 去重，并同时给出诱导函数。
    """
    seen = set()
    for S in combinations(range(f.arity), p):
        values, masks, complement = restriction_tables(f, S)
        for a in range(values.shape[0]):
            assignment = tuple(
                (pos, (a >> j) & 1) for j, pos in enumerate(complement)
            )
            restriction = Restriction(f, tuple(S), tuple(sorted(assignment)))
            if not dedupe:
                yield restriction, None
                continue
            key = (values[a].tobytes(), masks[a].tobytes())
            if key in seen:
                continue
            seen.add(key)
            g = BooleanFunction(
                p, name=f"{f.name}|S={list(S)}", table=values[a], domain=masks[a]
            )
            yield restriction, g
