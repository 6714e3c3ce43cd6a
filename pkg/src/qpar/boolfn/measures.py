"""
Measures - 组合复杂度度量

- certificate_complexity / minimal_certificate: 子立方体动态规划
  (3^N 个子立方体标记 单值0/单值1/混合/空)，再做一次最小值传播
- block_sensitivity: 子集 zeta 变换求极小敏感块 + 分支定界求最大不交族
- spectral_sensitivity: 敏感图邻接矩阵的谱范数 (ARPACK)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from .._internal.config_tools import current_limits
from .._internal.errors import NotTotal, TooLarge
from .._internal.linalg import symmetric_norm
from .function import BitsLike, BooleanFunction, to_bits, to_index

logger = logging.getLogger(__name__)

MIXED = 2
EMPTY = 3
INF_COST = 127


def _check_cap(f: BooleanFunction, cap: int, measure: str) -> None:
    if f.arity > cap:
        raise TooLarge(
            f"{measure} limited to arity {cap}, {f.name} has {f.arity}",
            measure=measure,
            arity=f.arity,
            cap=cap,
        )


def _require_total(f: BooleanFunction, measure: str) -> None:
    if not f.is_total():
        raise NotTotal(f"{measure} needs a total function, {f.name} is partial",
                       measure=measure)


def _cube_tensor(f: BooleanFunction) -> np.ndarray:
    """形状 (2,)*N 的张量，轴 i 对应 x_i；定义域外记为 EMPTY"""
    values, mask = f.table_arrays()
    labels = np.where(mask, values, EMPTY).astype(np.int8)
    if f.arity == 0:
        return labels.reshape(())
    tensor = labels.reshape((2,) * f.arity)
    return np.transpose(tensor, axes=tuple(range(f.arity - 1, -1, -1)))


def _combine(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.where(a == b, a, MIXED)
    out = np.where(a == EMPTY, b, out)
    out = np.where(b == EMPTY, a, out)
    return out.astype(np.int8)


def subcube_labels(f: BooleanFunction) -> np.ndarray:
    """形状 (3,)*N：坐标 0/1 为固定值，2 为自由；值为单值0/1、MIXED 或 EMPTY"""
    cached = f._cache.get("subcube_labels")
    if cached is not None:
        return cached
    tensor = _cube_tensor(f)
    for axis in range(f.arity):
        lo = np.take(tensor, [0], axis=axis)
        hi = np.take(tensor, [1], axis=axis)
        tensor = np.concatenate([lo, hi, _combine(lo, hi)], axis=axis)
    tensor.setflags(write=False)
    f._cache["subcube_labels"] = tensor
    return tensor


def _pointwise_certificates(f: BooleanFunction) -> np.ndarray:
    """每个输入下标的最小证书大小（定义域外为 INF_COST）"""
    cached = f._cache.get("pointwise_cert")
    if cached is not None:
        return cached
    n = f.arity
    labels = subcube_labels(f)
    fixed = np.zeros((3,) * n, dtype=np.int8) if n else np.zeros((), dtype=np.int8)
    for axis in range(n):
        shape = [1] * n
        shape[axis] = 3
        fixed = fixed + np.array([1, 1, 0], dtype=np.int8).reshape(shape)
    mono = (labels == 0) | (labels == 1)
    cost = np.where(mono, fixed, INF_COST).astype(np.int8)
    # 最小值沿"固定坐标 → 自由坐标"方向传播
    for axis in range(n):
        star = np.take(cost, [2], axis=axis)
        lo = np.minimum(np.take(cost, [0], axis=axis), star)
        hi = np.minimum(np.take(cost, [1], axis=axis), star)
        cost = np.concatenate([lo, hi, star], axis=axis)
    points = cost[(slice(0, 2),) * n] if n else cost
    if n:
        points = np.transpose(points, axes=tuple(range(n - 1, -1, -1)))
    flat = np.ascontiguousarray(points).reshape(-1).copy()
    _, mask = f.table_arrays()
    flat[~mask] = INF_COST
    flat.setflags(write=False)
    f._cache["pointwise_cert"] = flat
    return flat


def certificate_complexity(f: BooleanFunction, side: str | int = "max") -> int:
    """C_0 / C_1 / C(f)

    Args:
        f: 函数（部分函数按定义域内补全判定）
        side: 0、1 或 "max"
    """
    _check_cap(f, current_limits().max_cert_arity, "certificate_complexity")
    per_point = _pointwise_certificates(f)
    values, mask = f.table_arrays()
    result = {}
    for b in (0, 1):
        sel = mask & (values == b)
        result[b] = int(per_point[sel].max()) if sel.any() else 0
    if side in (0, 1, "0", "1"):
        return result[int(side)]
    return max(result[0], result[1])


def minimal_certificate(f: BooleanFunction, x: BitsLike) -> Tuple[int, ...]:
    """x 的一个最小证书（字典序最小的最小下标集合）"""
    _check_cap(f, current_limits().max_cert_arity, "minimal_certificate")
    bits = to_bits(x, f.arity)
    f.evaluate(bits)
    labels = subcube_labels(f)
    for size in range(f.arity + 1):
        for S in combinations(range(f.arity), size):
            coord = [2] * f.arity
            for i in S:
                coord[i] = int(bits[i])
            if labels[tuple(coord)] in (0, 1):
                return S
    return tuple(range(f.arity))


# ---------------------------------------------------------------- block sensitivity
def _subset_or(s: np.ndarray, n: int) -> np.ndarray:
    """zeta 变换：out[B] = OR_{B' ⊆ B} s[B']"""
    out = s.copy()
    idx = np.arange(out.shape[0])
    for i in range(n):
        has = (idx >> i) & 1 == 1
        out[has] |= out[idx[has] ^ (1 << i)]
    return out


def minimal_sensitive_blocks(f: BooleanFunction, x: BitsLike) -> List[int]:
    """x 的全部极小敏感块（位掩码，按大小升序）"""
    n = f.arity
    values, _ = f.table_arrays()
    xi = to_index(to_bits(x, n))
    masks = np.arange(1 << n, dtype=np.int64)
    sensitive = values[xi ^ masks] != values[xi]
    below = _subset_or(sensitive, n)
    proper = np.zeros_like(sensitive)
    for i in range(n):
        has = (masks >> i) & 1 == 1
        proper[has] |= below[masks[has] ^ (1 << i)]
    minimal = np.flatnonzero(sensitive & ~proper)
    return sorted((int(b) for b in minimal), key=lambda b: (bin(b).count("1"), b))


def _max_packing(blocks: Sequence[int], n: int, floor: int = 0) -> List[int]:
    """不交块的最大族（分支定界，按最低空闲位分支）"""
    best: List[int] = []
    best_len = floor
    sizes = {b: bin(b).count("1") for b in blocks}

    def search(avail: List[int], used: int, chosen: List[int]) -> None:
        nonlocal best, best_len
        if len(chosen) > best_len:
            best_len = len(chosen)
            best = list(chosen)
        if not avail:
            return
        free_bits = n - bin(used).count("1")
        min_size = min(sizes[b] for b in avail)
        if len(chosen) + min(len(avail), free_bits // min_size) <= best_len:
            return
        union = 0
        for b in avail:
            union |= b
        pivot = union & -union
        holders = [b for b in avail if b & pivot]
        for b in holders:
            rest = [c for c in avail if not c & b]
            chosen.append(b)
            search(rest, used | b, chosen)
            chosen.pop()
        search([c for c in avail if not c & pivot], used, chosen)

    search(list(blocks), 0, [])
    return best


def _blocks_to_tuples(blocks: Sequence[int]) -> List[Tuple[int, ...]]:
    return [tuple(i for i in range(b.bit_length()) if (b >> i) & 1) for b in blocks]


def block_sensitivity(
    f: BooleanFunction,
    x: Optional[BitsLike] = None,
    side: Optional[int] = None,
    return_blocks: bool = False,
):
    """bs_x(f) / bs_b(f) / bs(f)

    return_blocks=True 时返回 (值, 见证输入下标, 不交敏感块列表)。
    """
    _require_total(f, "block_sensitivity")
    _check_cap(f, current_limits().max_bs_arity, "block_sensitivity")
    n = f.arity
    if x is not None:
        blocks = _max_packing(minimal_sensitive_blocks(f, x), n)
        xi = to_index(to_bits(x, n))
        if return_blocks:
            return len(blocks), xi, _blocks_to_tuples(blocks)
        return len(blocks)
    values, _ = f.table_arrays()
    candidates = np.arange(1 << n, dtype=np.int64)
    if side is not None:
        candidates = candidates[values == int(side)]
    # bs_x ≤ C_x：按证书上界降序处理并剪枝
    upper = _pointwise_certificates(f)[candidates]
    order = np.argsort(-upper.astype(np.int64), kind="stable")
    best_val, best_x, best_blocks = 0, int(candidates[0]) if candidates.size else 0, []
    for pos in order:
        if int(upper[pos]) <= best_val:
            break
        xi = int(candidates[pos])
        blocks = _max_packing(minimal_sensitive_blocks(f, xi), n, floor=best_val)
        if len(blocks) > best_val:
            best_val, best_x, best_blocks = len(blocks), xi, blocks
    logger.debug("bs(%s, side=%s) = %d", f.name, side, best_val)
    if return_blocks:
        return best_val, best_x, _blocks_to_tuples(best_blocks)
    return best_val


# ---------------------------------------------------------------- spectral sensitivity
@dataclass
class SensitivityGraph:
    """敏感图 G_f：汉明距离为 1 且输出不同的输入对之间连边"""

    function: BooleanFunction
    edges: np.ndarray  # 形状 (E, 2)，每行 u < v

    @classmethod
    def of(cls, f: BooleanFunction) -> "SensitivityGraph":
        _require_total(f, "sensitivity graph")
        values, _ = f.table_arrays()
        idx = np.arange(1 << f.arity, dtype=np.int64)
        chunks = []
        for i in range(f.arity):
            nbr = idx ^ (1 << i)
            sel = (idx < nbr) & (values != values[nbr])
            chunks.append(np.stack([idx[sel], nbr[sel]], axis=1))
        edges = np.concatenate(chunks) if chunks else np.zeros((0, 2), dtype=np.int64)
        return cls(f, edges)

    @property
    def vertex_count(self) -> int:
        return 1 << self.function.arity

    def adjacency(self) -> sp.csr_matrix:
        n = self.vertex_count
        u, v = self.edges[:, 0], self.edges[:, 1]
        rows = np.concatenate([u, v])
        cols = np.concatenate([v, u])
        data = np.ones(rows.shape[0], dtype=np.float64)
        return sp.csr_matrix((data, (rows, cols)), shape=(n, n))


def spectral_sensitivity(f: BooleanFunction) -> float:
    """λ(f) = ‖A_f‖"""
    _require_total(f, "spectral_sensitivity")
    _check_cap(f, current_limits().max_lambda_arity, "spectral_sensitivity")
    graph = SensitivityGraph.of(f)
    if graph.edges.shape[0] == 0:
        return 0.0
    # 敏感图是二部图（按输出值划分），谱关于 0 对称
    return symmetric_norm(graph.adjacency(), spectrum_symmetric=True)
