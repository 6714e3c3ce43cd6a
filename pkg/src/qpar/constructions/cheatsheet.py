"""
Cheat Sheet - 作弊表函数

输入布局：c 份内层函数 f' 的地址输入（每份 F 位），随后 2^c 个格子，每格
M 位。ℓ 为 c 份内层输出组成的格子下标（小端）。输出 1 当且仅当：
全部地址输入在定义域内，格子 ℓ 解码为证书，证书与地址位一致，且证书
迫使每一份的输出等于 ℓ_i。全零格子条目数为 0，解码失败，输出 0。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..boolfn.compose import compose
from ..boolfn.function import BooleanFunction, to_index
from ..boolfn.measures import block_sensitivity
from ..boolfn.registry import register_generator
from .._internal.errors import ConstructionFailed, DescriptorError
from .certificates import Certificate
from .families import make_and_or

logger = logging.getLogger(__name__)

Checker = Callable[[Certificate, Sequence[int]], bool]


@dataclass(frozen=True)
class CheatSheetLayout:
    """地址区 c·F 位 + 数据区 M·2^c 位"""

    inner_arity: int
    copies: int
    cell_size: int

    @property
    def address_bits(self) -> int:
        return self.copies * self.inner_arity

    @property
    def cell_count(self) -> int:
        return 1 << self.copies

    @property
    def total_bits(self) -> int:
        return self.address_bits + self.cell_size * self.cell_count

    def copy_range(self, i: int) -> range:
        return range(i * self.inner_arity, (i + 1) * self.inner_arity)

    def cell_range(self, ell: int) -> range:
        start = self.address_bits + ell * self.cell_size
        return range(start, start + self.cell_size)


def default_cell_size(inner_arity: int, copies: int) -> int:
    """可容纳整段地址证书的格子大小：16 + L·(⌈log2 L⌉+1)"""
    return Certificate.cell_size_for(inner_arity * copies)


@dataclass
class CheatSheet:
    """作弊表结构：内层函数、布局与证书检查器"""

    inner: BooleanFunction
    layout: CheatSheetLayout
    checker: Checker = field(repr=False)

    def address_values(self, bits: Sequence[int]) -> List[Optional[int]]:
        bits = np.asarray(bits)
        return [self.inner.value_or_none(bits[list(self.layout.copy_range(i))])
                for i in range(self.layout.copies)]

    def status(self, bits: Sequence[int]) -> Tuple[int, str]:
        """(输出, 原因)；原因为 ok/domain/empty-cell/mismatch/unforced 之一"""
        bits = np.asarray(bits, dtype=np.uint8)
        ell = self.address_values(bits)
        if any(v is None for v in ell):
            return 0, "domain"
        cell = to_index(ell)
        cert = Certificate.decode(bits[list(self.layout.cell_range(cell))],
                                  self.layout.address_bits)
        if cert is None:
            return 0, "empty-cell"
        if not cert.matches(bits):
            return 0, "mismatch"
        if not self.checker(cert, ell):
            return 0, "unforced"
        return 1, "ok"

    def evaluate(self, bits: Sequence[int]) -> int:
        return self.status(bits)[0]


def brute_force_checker(inner: BooleanFunction, layout: CheatSheetLayout) -> Checker:
    """对每一份穷举补全：条目迫使的输出集合必须恰为 {ℓ_i}"""

    def check(cert: Certificate, ell: Sequence[int]) -> bool:
        base_entries = cert.as_dict()
        for i in range(layout.copies):
            offset = i * layout.inner_arity
            known = {idx - offset: v for idx, v in base_entries.items()
                     if offset <= idx < offset + layout.inner_arity}
            if inner.partial_outcomes(known) != frozenset({int(ell[i])}):
                return False
        return True

    return check


def and_or_checker(
    outer: BooleanFunction, blocks: int, block_size: int, layout: CheatSheetLayout
) -> Checker:
    """f∘AND∘OR 的结构化检查器

    1-证书：每个 OR 块有一个取 1 的条目；0-证书：某个 OR 块全部条目取 0。
    得到的 AND∘OR 值再交给外层 f 判定。
    """
    width = blocks * block_size

    def instance_value(entries: dict, base: int) -> Optional[int]:
        all_have_one = True
        for b in range(blocks):
            start = base + b * block_size
            cells = [entries.get(start + o) for o in range(block_size)]
            if all(v == 0 for v in cells):
                return 0
            if not any(v == 1 for v in cells):
                all_have_one = False
        return 1 if all_have_one else None

    def check(cert: Certificate, ell: Sequence[int]) -> bool:
        entries = cert.as_dict()
        for i in range(layout.copies):
            known = {}
            for j in range(outer.arity):
                v = instance_value(entries, i * layout.inner_arity + j * width)
                if v is not None:
                    known[j] = v
            if outer.partial_outcomes(known) != frozenset({int(ell[i])}):
                return False
        return True

    return check


def _sheet_function(sheet: CheatSheet, name: str, generator: str, params: dict) -> BooleanFunction:
    def evaluator(bits: np.ndarray) -> int:
        return sheet.evaluate(bits)

    return BooleanFunction(
        sheet.layout.total_bits,
        name=name,
        evaluator=evaluator,
        total=True,
        generator=generator,
        params=params,
        structure=sheet,
    )


@register_generator("cheatsheet", "作弊表 f^c_cs（穷举证书检查器）")
def make_cheatsheet(
    f: BooleanFunction,
    c: int = 1,
    cell_size: Optional[int] = None,
    checker: Optional[Checker] = None,
) -> BooleanFunction:
    size = default_cell_size(f.arity, c) if cell_size is None else int(cell_size)
    layout = CheatSheetLayout(f.arity, c, size)
    sheet = CheatSheet(f, layout, checker or brute_force_checker(f, layout))
    params = {"f": f, "c": c, "cell_size": size}
    return _sheet_function(sheet, f"CS({f.name},c={c})", "cheatsheet", params)


@register_generator("canonical-cheatsheet", "规范作弊表：f∘AND∘OR 的作弊表")
def make_canonical_cheatsheet(
    f: BooleanFunction,
    c: int = 1,
    blocks: int = 2,
    block_size: int = 2,
    cell_size: Optional[int] = None,
    checker: str = "structural",
) -> BooleanFunction:
    inner = compose(f, make_and_or(blocks, block_size))
    size = default_cell_size(inner.arity, c) if cell_size is None else int(cell_size)
    layout = CheatSheetLayout(inner.arity, c, size)
    if checker == "structural":
        check = and_or_checker(f, blocks, block_size, layout)
    elif checker == "brute":
        check = brute_force_checker(inner, layout)
    else:
        raise DescriptorError(f"unknown checker: {checker}", checker=checker)
    sheet = CheatSheet(inner, layout, check)
    params = {"f": f, "c": c, "blocks": blocks, "block_size": block_size,
              "cell_size": size, "checker": checker}
    return _sheet_function(sheet, f"CCS({f.name},c={c})", "canonical-cheatsheet", params)


def cheatsheet_of(fn: BooleanFunction) -> CheatSheet:
    if not isinstance(fn.structure, CheatSheet):
        raise ConstructionFailed(f"{fn.name} is not a cheat sheet function")
    return fn.structure


def build_yes_input(fn: BooleanFunction, address: Sequence[int],
                    cert_indices: Optional[Sequence[int]] = None) -> np.ndarray:
    """给定地址区，在格子 ℓ 写入证书（默认证明全部地址位），其余格子置零"""
    sheet = cheatsheet_of(fn)
    layout = sheet.layout
    address = np.asarray(address, dtype=np.uint8)
    bits = np.zeros(layout.total_bits, dtype=np.uint8)
    bits[:layout.address_bits] = address
    ell = sheet.address_values(bits)
    if any(v is None for v in ell):
        raise ConstructionFailed("address copies must all lie in the inner domain")
    indices = range(layout.address_bits) if cert_indices is None else cert_indices
    cert = Certificate.from_input(address, indices)
    bits[list(layout.cell_range(to_index(ell)))] = cert.encode(layout.cell_size)
    return bits


@dataclass
class BlockSensitivityWitness:
    """块敏感度见证：输入、不交块与每块翻转后的失效原因"""

    function: BooleanFunction
    input: np.ndarray
    blocks: List[Tuple[int, ...]]
    cases: List[str]

    def verify(self) -> bool:
        """逐块翻转：输出都必须从 1 变为 0"""
        if self.function.evaluate(self.input) != 1:
            return False
        used = set()
        for block in self.blocks:
            if used & set(block):
                return False
            used |= set(block)
            flipped = self.input.copy()
            flipped[list(block)] ^= 1
            if self.function.evaluate(flipped) != 0:
                return False
        return True


def build_block_sensitivity_witness(
    g: BooleanFunction,
    h: BooleanFunction,
    c: int = 1,
    cell_size: Optional[int] = None,
    per_side_bs: Optional[int] = None,
) -> BlockSensitivityWitness:
    """构造 (g∘h)^c_cs 上具有大量不交敏感块的输入

    地址区每个 g-位置放一个 h-输入，它在对应值一侧达到 bs_b(h)；格子 ℓ
    证明全部地址位，其余格子为零。块为这些 h-输入的敏感块，未覆盖的
    地址位补为单点块。
    """
    inner = compose(g, h)
    fn = make_cheatsheet(inner, c, cell_size)
    sheet = cheatsheet_of(fn)

    domain = [int(i) for i in g.points()]
    if not domain:
        raise ConstructionFailed(f"{g.name} has an empty domain")
    mixed = [i for i in domain if 0 < bin(i).count("1") < g.arity]
    g_index = (mixed or domain)[0]
    g_bits = [(g_index >> j) & 1 for j in range(g.arity)]

    per_side = {}
    for b in sorted(set(g_bits)):
        if h.points(b).size == 0:
            raise ConstructionFailed(f"{h.name} has no {b}-input", side=b)
        value, xi, blocks = block_sensitivity(h, side=b, return_blocks=True)
        if per_side_bs is not None and value < per_side_bs:
            raise ConstructionFailed(
                f"bs_{b}({h.name}) = {value} below requested {per_side_bs}",
                side=b, attained=value, requested=per_side_bs,
            )
        per_side[b] = (xi, blocks)

    address = np.zeros(sheet.layout.address_bits, dtype=np.uint8)
    all_blocks: List[Tuple[int, ...]] = []
    for i in range(c):
        for j, b in enumerate(g_bits):
            xi, blocks = per_side[b]
            base = i * inner.arity + j * h.arity
            for t in range(h.arity):
                address[base + t] = (xi >> t) & 1
            all_blocks.extend(tuple(base + t for t in blk) for blk in blocks)
    covered = {t for blk in all_blocks for t in blk}
    all_blocks.extend((t,) for t in range(sheet.layout.address_bits) if t not in covered)

    x = build_yes_input(fn, address)
    ell = sheet.address_values(x)
    cases = []
    for block in all_blocks:
        flipped = x.copy()
        flipped[list(block)] ^= 1
        new_ell = sheet.address_values(flipped)
        if any(v is None for v in new_ell):
            cases.append("domain")
        elif new_ell != ell:
            cases.append("cell")
        else:
            cases.append("certificate")
    logger.info(f"🧩 block sensitivity witness: {len(all_blocks)} blocks on {fn.name}")
    return BlockSensitivityWitness(fn, x, all_blocks, cases)
