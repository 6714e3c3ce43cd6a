"""
2-Adaptive-F - 两层自适应构造

输入分三区：
    ADD: segments 段 × n 子段 × n 块 × n 位，子段 (i,j) 是一个 AND_n∘OR_n 实例
    BC:  每个子段一个双证书（2n 个位置，每个 2·log2 n 位）
    DT:  2^segments 位
IN[i,j] = AND∘OR(ADD[i,j])，TG_i = f(IN[i,·])，TG 按小端组成 DT 下标。
输出 1 当且仅当：双证书全部有效；每个双证书证明其子段的值；每个 IN[i]
在 f 的定义域内；DT[TG] = 1。
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..boolfn.function import BooleanFunction, to_index
from ..boolfn.registry import register_generator
from .._internal.errors import ArityMismatch, ConstructionFailed
from .._internal.seeding import make_rng
from .certificates import Bicertificate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwoAdaptiveLayout:
    """ADD / BC / DT 的偏移算术"""

    n: int
    segments: int

    @classmethod
    def of(cls, n: int, segments: Optional[int] = None) -> "TwoAdaptiveLayout":
        if n < 2 or n & (n - 1):
            raise ArityMismatch(f"2-Adaptive needs n a power of two >= 2, got {n}", n=n)
        log_n = n.bit_length() - 1
        return cls(n, 3 * log_n if segments is None else int(segments))

    @property
    def subsegment_bits(self) -> int:
        return self.n * self.n

    @property
    def add_bits(self) -> int:
        return self.segments * self.n * self.subsegment_bits

    @property
    def bicert_bits(self) -> int:
        return Bicertificate.encoded_bits(self.n, self.n)

    @property
    def bc_start(self) -> int:
        return self.add_bits

    @property
    def bc_bits(self) -> int:
        return self.segments * self.n * self.bicert_bits

    @property
    def dt_start(self) -> int:
        return self.add_bits + self.bc_bits

    @property
    def dt_bits(self) -> int:
        return 1 << self.segments

    @property
    def total_bits(self) -> int:
        return self.dt_start + self.dt_bits

    def add_range(self, i: int, j: int) -> range:
        start = (i * self.n + j) * self.subsegment_bits
        return range(start, start + self.subsegment_bits)

    def block_range(self, i: int, j: int, k: int) -> range:
        start = self.add_range(i, j).start + k * self.n
        return range(start, start + self.n)

    def bc_range(self, i: int, j: int) -> range:
        start = self.bc_start + (i * self.n + j) * self.bicert_bits
        return range(start, start + self.bicert_bits)

    def dt_position(self, tg: int) -> int:
        return self.dt_start + int(tg)

    def subsegments(self):
        for i in range(self.segments):
            for j in range(self.n):
                yield i, j

    def offset_map(self) -> List[Tuple[str, int, int, int, int, int]]:
        """(region, i, j, k, bit_start, bit_len)；DT 只有一行，i/j/k 记为 -1"""
        rows = []
        for i, j in self.subsegments():
            for k in range(self.n):
                blk = self.block_range(i, j, k)
                rows.append(("ADD", i, j, k, blk.start, len(blk)))
        for i, j in self.subsegments():
            cell = self.bc_range(i, j)
            rows.append(("BC", i, j, -1, cell.start, len(cell)))
        rows.append(("DT", -1, -1, -1, self.dt_start, self.dt_bits))
        return rows

    def offset_map_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["region", "i", "j", "k", "bit_start", "bit_len"])
        writer.writerows(self.offset_map())
        return buf.getvalue()


@dataclass
class TwoAdaptive:
    """2-Adaptive-F 结构：内层函数与布局"""

    f: BooleanFunction
    layout: TwoAdaptiveLayout

    def bicertificate(self, bits: Sequence[int], i: int, j: int) -> Bicertificate:
        cell = np.asarray(bits)[list(self.layout.bc_range(i, j))]
        return Bicertificate.decode(cell, self.layout.n, self.layout.n)

    def in_value(self, bits: Sequence[int], i: int, j: int) -> int:
        add = np.asarray(bits)[list(self.layout.add_range(i, j))]
        n = self.layout.n
        return int(all(add[k * n:(k + 1) * n].any() for k in range(n)))

    def in_row(self, bits: Sequence[int], i: int) -> List[int]:
        return [self.in_value(bits, i, j) for j in range(self.layout.n)]

    def target(self, bits: Sequence[int]) -> Optional[int]:
        """TG 下标；某行不在定义域内时为 None"""
        tg = []
        for i in range(self.layout.segments):
            v = self.f.value_or_none(self.in_row(bits, i))
            if v is None:
                return None
            tg.append(v)
        return to_index(tg)

    def status(self, bits: Sequence[int]) -> Tuple[int, str]:
        """(输出, 原因)；原因为 ok/invalid-bicert/uncertified/domain/dt-zero"""
        bits = np.asarray(bits, dtype=np.uint8)
        for i, j in self.layout.subsegments():
            bc = self.bicertificate(bits, i, j)
            if not bc.is_valid():
                return 0, "invalid-bicert"
            add = bits[list(self.layout.add_range(i, j))]
            if bc.certified_value(add) is None:
                return 0, "uncertified"
        tg = self.target(bits)
        if tg is None:
            return 0, "domain"
        if not bits[self.layout.dt_position(tg)]:
            return 0, "dt-zero"
        return 1, "ok"

    def conditions_hold(self, bits: Sequence[int]) -> bool:
        """条件 1–3（不含 DT）"""
        return self.status(bits)[1] in ("ok", "dt-zero")


@register_generator("two-adaptive", "2-Adaptive-F：ADD/BC/DT 三区构造")
def make_two_adaptive(f: BooleanFunction, n: Optional[int] = None,
                      segments: Optional[int] = None) -> BooleanFunction:
    n = f.arity if n is None else int(n)
    if f.arity != n:
        raise ArityMismatch(f"inner function must have arity {n}", arity=f.arity)
    layout = TwoAdaptiveLayout.of(n, segments)
    structure = TwoAdaptive(f, layout)

    def evaluator(bits: np.ndarray) -> int:
        return structure.status(bits)[0]

    return BooleanFunction(
        layout.total_bits,
        name=f"2ADAPT({f.name},n={n},s={layout.segments})",
        evaluator=evaluator,
        total=True,
        generator="two-adaptive",
        params={"f": f, "n": n, "segments": segments},
        structure=structure,
    )


def two_adaptive_of(fn: BooleanFunction) -> TwoAdaptive:
    if not isinstance(fn.structure, TwoAdaptive):
        raise ConstructionFailed(f"{fn.name} is not a 2-Adaptive function")
    return fn.structure


def output_balanced_distribution(f: BooleanFunction) -> Dict[int, float]:
    """两种输出各占 1/2、同值输入内部均匀的分布（下标 → 概率）"""
    dist: Dict[int, float] = {}
    for b in (0, 1):
        pts = f.points(b)
        if pts.size == 0:
            raise ConstructionFailed(f"{f.name} has no {b}-input", side=b)
        for idx in pts:
            dist[int(idx)] = 0.5 / pts.size
    return dist


def sample_in_values(f: BooleanFunction, dist: Dict[int, float], segments: int,
                     rng: np.random.Generator) -> np.ndarray:
    """按 dist 为每段独立抽取一行 IN，形状 (segments, arity)"""
    keys = np.array(sorted(dist), dtype=np.int64)
    probs = np.array([dist[k] for k in keys], dtype=np.float64)
    rows = rng.choice(keys, size=segments, p=probs / probs.sum())
    shifts = np.arange(f.arity, dtype=np.int64)
    return ((rows[:, None] >> shifts[None, :]) & 1).astype(np.uint8)


def build_two_adaptive_instance(
    fn: BooleanFunction,
    in_values: Sequence[Sequence[int]],
    dt: Optional[Sequence[int]] = None,
    seed: int = 0,
) -> np.ndarray:
    """困难分布的采样器

    每个子段随机选取有效双证书：one_part 位置置 1，交点置 IN[i,j]，其余 ADD 位
    置 0；BC 写入编码；DT 缺省时随机生成。
    """
    structure = two_adaptive_of(fn)
    layout, f = structure.layout, structure.f
    values = np.asarray(in_values, dtype=np.uint8)
    if values.shape != (layout.segments, layout.n):
        raise ArityMismatch(
            f"in_values must have shape ({layout.segments}, {layout.n})",
            shape=list(values.shape),
        )
    for i in range(layout.segments):
        if not f.in_domain(values[i]):
            raise ConstructionFailed(f"IN row {i} is outside the domain of {f.name}", row=i)
    rng = make_rng(seed)
    n = layout.n
    bits = np.zeros(layout.total_bits, dtype=np.uint8)
    for i, j in layout.subsegments():
        bc = Bicertificate.build(int(rng.integers(n)), rng.integers(n, size=n), n, n)
        base = layout.add_range(i, j).start
        for loc in bc.one_part:
            bits[base + loc] = 1
        bits[base + bc.intersection()] = values[i, j]
        bits[list(layout.bc_range(i, j))] = bc.encode()
    if dt is None:
        dt = rng.integers(0, 2, size=layout.dt_bits)
    dt = np.asarray(dt, dtype=np.uint8)
    if dt.shape[0] != layout.dt_bits:
        raise ArityMismatch(f"DT needs {layout.dt_bits} bits", got=int(dt.shape[0]))
    bits[layout.dt_start:] = dt
    return bits
