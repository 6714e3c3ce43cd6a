"""
Forrelation - Φ 计算与 Forrelation 部分函数

Φ_{X,Y} = 2^{-3n/2} Σ_{x,y} X(x)(-1)^{x·y}Y(y)，一次快速 Walsh-Hadamard
变换后与 Y 做内积。输入位 b 表示符号 (-1)^b：前 2^n 位为 X，后 2^n 位为 Y。
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..boolfn.function import BooleanFunction, OUT_OF_DOMAIN
from ..boolfn.registry import register_generator
from .._internal.errors import ArityMismatch

YES_THRESHOLD = 0.6
NO_THRESHOLD = 0.01


def fwht(a: np.ndarray) -> np.ndarray:
    """沿最后一轴的自然序（Hadamard 序）快速 Walsh-Hadamard 变换，不归一化"""
    out = np.array(a, dtype=np.float64, copy=True)
    size = out.shape[-1]
    if size & (size - 1):
        raise ArityMismatch(f"FWHT length must be a power of two, got {size}")
    lead = out.shape[:-1]
    h = 1
    while h < size:
        view = out.reshape(lead + (size // (2 * h), 2, h))
        lo = view[..., 0, :].copy()
        hi = view[..., 1, :]
        view[..., 0, :] = lo + hi
        view[..., 1, :] = lo - hi
        h *= 2
    return out


def _signs(table) -> np.ndarray:
    arr = np.asarray(table, dtype=np.float64).ravel()
    if not np.all(np.abs(arr) == 1.0):
        raise ArityMismatch("sign tables must contain only +1 and -1")
    return arr


def forrelation_value(X, Y) -> float:
    """Φ_{X,Y}（X、Y 为长度 2^n 的 ±1 表）"""
    x, y = _signs(X), _signs(Y)
    if x.shape != y.shape:
        raise ArityMismatch("sign tables differ in length", x=x.shape[0], y=y.shape[0])
    n = x.shape[0].bit_length() - 1
    return float(np.dot(fwht(x), y) / 2.0 ** (1.5 * n))


def forrelation_direct(X, Y) -> float:
    """按定义的二重求和（交叉校验用）"""
    x, y = _signs(X), _signs(Y)
    size = x.shape[0]
    n = size.bit_length() - 1
    idx = np.arange(size)
    dots = idx[:, None] & idx[None, :]
    parity = np.zeros(dots.shape, dtype=np.int64)
    for i in range(n):
        parity ^= (dots >> i) & 1
    return float(np.sum(x[:, None] * (1 - 2 * parity) * y[None, :]) / 2.0 ** (1.5 * n))


def split_tables(bits: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """输入位 → (X, Y) 符号表"""
    size = 1 << n
    bits = np.asarray(bits, dtype=np.int64)
    return 1 - 2 * bits[:size], 1 - 2 * bits[size:2 * size]


def join_tables(X, Y) -> np.ndarray:
    """(X, Y) 符号表 → 输入位"""
    x, y = _signs(X), _signs(Y)
    return np.concatenate([(x < 0), (y < 0)]).astype(np.uint8)


def classify(phi: float, yes: float = YES_THRESHOLD, no: float = NO_THRESHOLD) -> Optional[int]:
    if phi >= yes - 1e-12:
        return 1
    if abs(phi) <= no + 1e-12:
        return 0
    return None


@register_generator("forrelation", "Forrelation：|Φ| ≤ 1/100 输出 0，Φ ≥ 3/5 输出 1")
def make_forrelation(n: int) -> BooleanFunction:
    size = 1 << n
    norm = 2.0 ** (1.5 * n)

    def evaluator(bits: np.ndarray) -> Optional[int]:
        X, Y = split_tables(bits, n)
        return classify(forrelation_value(X, Y))

    def batch(idx: np.ndarray) -> np.ndarray:
        shifts = np.arange(2 * size, dtype=np.int64)
        bits = (idx[:, None] >> shifts[None, :]) & 1
        signs = 1.0 - 2.0 * bits
        phi = np.einsum("ij,ij->i", fwht(signs[:, :size]), signs[:, size:]) / norm
        out = np.full(idx.shape, OUT_OF_DOMAIN, dtype=np.int8)
        out[np.abs(phi) <= NO_THRESHOLD + 1e-12] = 0
        out[phi >= YES_THRESHOLD - 1e-12] = 1
        return out

    return BooleanFunction(
        2 * size,
        name=f"FORR_{n}",
        evaluator=evaluator,
        batch=batch,
        total=False,
        generator="forrelation",
        params={"n": n},
    )
