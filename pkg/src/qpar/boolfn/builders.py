"""
Builders - 基础函数族

AND/OR/PARITY/MAJ/阈值/常函数/对称函数/随机真值表，以及由十六进制
真值表构造的 table 生成器。对称族由权重剖面统一实现。
"""

from typing import Optional, Sequence

import numpy as np

from .._internal.errors import ArityMismatch
from .._internal.seeding import make_rng
from .function import BooleanFunction
from .registry import register_generator


def popcount(idx: np.ndarray, arity: int) -> np.ndarray:
    """逐元素汉明重量"""
    idx = np.asarray(idx, dtype=np.int64)
    count = np.zeros(idx.shape, dtype=np.int64)
    for i in range(arity):
        count += (idx >> i) & 1
    return count


def _symmetric(
    n: int, profile: Sequence[int], name: str, generator: str, params: dict
) -> BooleanFunction:
    prof = np.asarray(list(profile), dtype=np.int8)
    if prof.shape[0] != n + 1:
        raise ArityMismatch(f"weight profile needs {n + 1} entries, got {prof.shape[0]}")

    def evaluator(bits: np.ndarray) -> int:
        return int(prof[int(bits.sum())])

    def batch(idx: np.ndarray) -> np.ndarray:
        return prof[popcount(idx, n)]

    fn = BooleanFunction(
        n,
        name=name,
        evaluator=evaluator,
        batch=batch,
        total=True,
        generator=generator,
        params=params,
    )
    fn._cache["weight_profile"] = tuple(int(v) for v in prof)
    return fn


@register_generator("and", "AND_n")
def make_and(n: int) -> BooleanFunction:
    return _symmetric(n, [0] * n + [1], f"AND_{n}", "and", {"n": n})


@register_generator("or", "OR_n")
def make_or(n: int) -> BooleanFunction:
    return _symmetric(n, [0] + [1] * n, f"OR_{n}", "or", {"n": n})


@register_generator("parity", "PARITY_n")
def make_parity(n: int) -> BooleanFunction:
    return _symmetric(n, [w & 1 for w in range(n + 1)], f"PARITY_{n}", "parity", {"n": n})


@register_generator("maj", "MAJ_n：重量严格超过一半输出 1")
def make_maj(n: int) -> BooleanFunction:
    return _symmetric(
        n, [int(2 * w > n) for w in range(n + 1)], f"MAJ_{n}", "maj", {"n": n}
    )


@register_generator("threshold", "THR_{n,t}：重量至少 t 输出 1")
def make_threshold(n: int, t: int) -> BooleanFunction:
    return _symmetric(
        n, [int(w >= t) for w in range(n + 1)], f"THR_{n}_{t}", "threshold",
        {"n": n, "t": t},
    )


@register_generator("const", "常函数")
def make_const(n: int, value: int = 0) -> BooleanFunction:
    value = int(value) & 1
    return _symmetric(n, [value] * (n + 1), f"CONST{value}_{n}", "const",
                      {"n": n, "value": value})


@register_generator("symmetric", "按权重剖面定义的对称函数")
def make_symmetric(n: int, profile: Sequence[int]) -> BooleanFunction:
    prof = [int(v) & 1 for v in profile]
    return _symmetric(n, prof, f"SYM_{n}", "symmetric", {"n": n, "profile": prof})


@register_generator("random", "可复现的随机全函数真值表")
def make_random(n: int, seed: int = 0, density: float = 0.5) -> BooleanFunction:
    rng = make_rng(seed)
    values = (rng.random(1 << n) < density).astype(np.uint8)
    return BooleanFunction(
        n,
        name=f"RAND_{n}_{seed}",
        table=values,
        generator="random",
        params={"n": n, "seed": seed, "density": density},
    )


def _hex_to_bits(text: str, count: int) -> np.ndarray:
    raw = bytes.fromhex(text.removeprefix("0x")) if text else b""
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    if bits.shape[0] < count:
        bits = np.concatenate([bits, np.zeros(count - bits.shape[0], dtype=np.uint8)])
    return bits[:count]


def bits_to_hex(bits: np.ndarray) -> str:
    """位数组（小端）→ 十六进制字节串"""
    return np.packbits(np.asarray(bits, dtype=np.uint8), bitorder="little").tobytes().hex()


@register_generator("table", "显式真值表（十六进制，小端）")
def make_table(
    arity: int, outputs: str, domain: Optional[str] = None, name: str = "table"
) -> BooleanFunction:
    size = 1 << arity
    values = _hex_to_bits(str(outputs), size)
    mask = None if domain is None else _hex_to_bits(str(domain), size).astype(bool)
    return BooleanFunction(arity, name=name, table=values, domain=mask)
