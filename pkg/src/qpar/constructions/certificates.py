"""
Certificates - 证书与双证书

Certificate：(下标, 断言值) 列表，定长二进制编码：
    16 位小端条目数，随后每条 ⌈log2 L⌉ 位下标 + 1 位值，零填充到格子大小。
Bicertificate：一个完整 OR 块（zero_part）+ 每块一个位置（one_part），
两者恰好相交于一个位置（交点 IP）。
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from .._internal.errors import ConstructionFailed, IndexOutOfRange

COUNT_BITS = 16


def index_width(length: int) -> int:
    """编码 [0, length) 下标所需位数"""
    return max(1, (length - 1).bit_length())


def write_uint(bits: np.ndarray, start: int, width: int, value: int) -> None:
    for b in range(width):
        bits[start + b] = (value >> b) & 1


def read_uint(bits: Sequence[int], start: int, width: int) -> int:
    value = 0
    for b in range(width):
        if bits[start + b]:
            value |= 1 << b
    return value


@dataclass(frozen=True)
class Certificate:
    """对长度 length 的输入的部分赋值"""

    entries: Tuple[Tuple[int, int], ...]
    length: int

    def __post_init__(self) -> None:
        seen = set()
        for idx, val in self.entries:
            if idx < 0 or idx >= self.length:
                raise IndexOutOfRange(f"certificate index {idx} outside [0, {self.length})",
                                      index=idx)
            if idx in seen:
                raise ConstructionFailed(f"certificate repeats index {idx}", index=idx)
            seen.add(idx)
            if val not in (0, 1):
                raise ConstructionFailed(f"certificate value must be a bit, got {val}")

    @classmethod
    def from_input(cls, x: Sequence[int], indices: Iterable[int]) -> "Certificate":
        return cls(tuple((int(i), int(x[i])) for i in indices), len(x))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.entries)

    def matches(self, x: Sequence[int]) -> bool:
        return all(int(x[i]) == v for i, v in self.entries)

    @staticmethod
    def entry_width(length: int) -> int:
        return index_width(length) + 1

    @staticmethod
    def capacity(cell_size: int, length: int) -> int:
        """格子能容纳的最大条目数"""
        return max(0, (cell_size - COUNT_BITS) // Certificate.entry_width(length))

    @staticmethod
    def cell_size_for(length: int, entries: Optional[int] = None) -> int:
        count = length if entries is None else entries
        return COUNT_BITS + count * Certificate.entry_width(length)

    def encode(self, cell_size: int) -> np.ndarray:
        if len(self.entries) > self.capacity(cell_size, self.length):
            raise ConstructionFailed(
                f"{len(self.entries)} entries exceed cell capacity",
                entries=len(self.entries),
                cell_size=cell_size,
            )
        bits = np.zeros(cell_size, dtype=np.uint8)
        write_uint(bits, 0, COUNT_BITS, len(self.entries))
        w = index_width(self.length)
        pos = COUNT_BITS
        for idx, val in self.entries:
            write_uint(bits, pos, w, idx)
            bits[pos + w] = val
            pos += w + 1
        return bits

    @classmethod
    def decode(cls, bits: Sequence[int], length: int) -> Optional["Certificate"]:
        """格子位 → 证书；条目数为 0、越界、重复或超容量时返回 None"""
        count = read_uint(bits, 0, COUNT_BITS)
        if count == 0 or count > cls.capacity(len(bits), length):
            return None
        w = index_width(length)
        entries = []
        seen = set()
        pos = COUNT_BITS
        for _ in range(count):
            idx = read_uint(bits, pos, w)
            val = int(bits[pos + w])
            pos += w + 1
            if idx >= length or idx in seen:
                return None
            seen.add(idx)
            entries.append((idx, val))
        return cls(tuple(entries), length)


@dataclass(frozen=True)
class Bicertificate:
    """子段内的双证书；位置是子段内位下标（block·block_size + offset）"""

    zero_part: Tuple[int, ...]
    one_part: Tuple[int, ...]
    blocks: int
    block_size: int

    @property
    def width(self) -> int:
        """每个位置的编码位数"""
        return index_width(self.blocks * self.block_size)

    def is_valid(self) -> bool:
        size = self.blocks * self.block_size
        if any(loc < 0 or loc >= size for loc in self.zero_part + self.one_part):
            return False
        zero = set(self.zero_part)
        if len(zero) != self.block_size or len(self.zero_part) != self.block_size:
            return False
        owners = {loc // self.block_size for loc in zero}
        if len(owners) != 1:
            return False
        if len(self.one_part) != self.blocks:
            return False
        if sorted(loc // self.block_size for loc in self.one_part) != list(range(self.blocks)):
            return False
        return len(zero & set(self.one_part)) == 1

    def zero_block(self) -> int:
        return self.zero_part[0] // self.block_size

    def intersection(self) -> int:
        """交点 IP（要求有效）"""
        common = set(self.zero_part) & set(self.one_part)
        if len(common) != 1:
            raise ConstructionFailed("bicertificate has no unique intersection point")
        return next(iter(common))

    def certified_value(self, add_bits: Sequence[int]) -> Optional[int]:
        """zero_part 全 0 证明 0，one_part 全 1 证明 1，否则不证明"""
        if all(int(add_bits[loc]) == 0 for loc in self.zero_part):
            return 0
        if all(int(add_bits[loc]) == 1 for loc in self.one_part):
            return 1
        return None

    def encode(self) -> np.ndarray:
        w = self.width
        locs = self.zero_part + self.one_part
        bits = np.zeros(len(locs) * w, dtype=np.uint8)
        for t, loc in enumerate(locs):
            write_uint(bits, t * w, w, loc)
        return bits

    @classmethod
    def decode(cls, bits: Sequence[int], blocks: int, block_size: int) -> "Bicertificate":
        w = index_width(blocks * block_size)
        count = block_size + blocks
        locs = tuple(read_uint(bits, t * w, w) for t in range(count))
        return cls(locs[:block_size], locs[block_size:], blocks, block_size)

    @classmethod
    def build(cls, zero_block: int, picks: Sequence[int], blocks: int,
              block_size: int) -> "Bicertificate":
        """zero_block 为零部分所在块；picks[b] 为 one_part 在块 b 内的偏移"""
        zero = tuple(zero_block * block_size + o for o in range(block_size))
        one = tuple(b * block_size + int(picks[b]) for b in range(blocks))
        return cls(zero, one, blocks, block_size)

    @staticmethod
    def encoded_bits(blocks: int, block_size: int) -> int:
        return (block_size + blocks) * index_width(blocks * block_size)
