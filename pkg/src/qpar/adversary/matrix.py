"""
Adversary Matrix - 对抗矩阵

对称形式：行列均以定义域输入下标（0..2^N-1）编号，只有输出不同的
定义域输入对可以非零。Γ_S 保留 x_S ≠ y_S 的条目。以 scipy 稀疏矩阵存储。
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from ..boolfn.function import BooleanFunction
from ..boolfn.measures import SensitivityGraph
from .._internal.config_tools import current_limits
from .._internal.errors import ConstructionFailed, TooLarge
from .._internal.linalg import dense_spectral_norm, spectral_norm
from .._internal.seeding import make_rng

logger = logging.getLogger(__name__)


def _hex(idx: int, arity: int) -> str:
    return format(int(idx), f"0{max(1, (arity + 3) // 4)}x")


@dataclass(frozen=True)
class AdversaryMatrix:
    """f 的对抗矩阵 Γ（对称，2^N × 2^N 稀疏）"""

    function: BooleanFunction
    matrix: sp.csr_matrix

    def __post_init__(self) -> None:
        n = 1 << self.function.arity
        if n > current_limits().max_matrix_dim:
            raise TooLarge(f"adversary matrix of dimension {n} exceeds the cap",
                           dimension=n, cap=current_limits().max_matrix_dim)
        if self.matrix.shape != (n, n):
            raise ConstructionFailed("matrix shape does not match the function arity",
                                     shape=list(self.matrix.shape), expected=n)

    @property
    def arity(self) -> int:
        return self.function.arity

    def entries(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        coo = self.matrix.tocoo()
        return coo.row.astype(np.int64), coo.col.astype(np.int64), coo.data

    def validate(self) -> None:
        """条目有限、对称、只出现在输出不同的定义域输入对上"""
        rows, cols, data = self.entries()
        if not np.all(np.isfinite(data)):
            raise ConstructionFailed("adversary matrix has non-finite entries")
        if self.matrix.nnz and abs(self.matrix - self.matrix.T).max() > 1e-12:
            raise ConstructionFailed("adversary matrix is not symmetric")
        values, mask = self.function.table_arrays()
        bad = ~mask[rows] | ~mask[cols] | (values[rows] == values[cols])
        if np.any(bad & (data != 0)):
            raise ConstructionFailed("adversary matrix weights a pair with equal outputs",
                                     pairs=int(np.count_nonzero(bad & (data != 0))))

    def is_nearest_neighbor(self) -> bool:
        rows, cols, data = self.entries()
        diff = rows[data != 0] ^ cols[data != 0]
        return bool(np.all((diff != 0) & ((diff & (diff - 1)) == 0)))

    def gamma_S(self, S: Iterable[int]) -> "AdversaryMatrix":
        """只保留 x_S ≠ y_S 的条目"""
        mask = 0
        for i in S:
            mask |= 1 << int(i)
        rows, cols, data = self.entries()
        keep = ((rows ^ cols) & mask) != 0
        n = self.matrix.shape[0]
        kept = sp.csr_matrix((data[keep], (rows[keep], cols[keep])), shape=(n, n))
        return AdversaryMatrix(self.function, kept)

    def gamma_i(self, i: int) -> "AdversaryMatrix":
        return self.gamma_S([i])

    def norm(self) -> float:
        return spectral_norm(self.matrix)

    def dense_norm(self) -> float:
        return dense_spectral_norm(self.matrix)

    def to_csv(self) -> str:
        """每个无序对一行：行为输出 0 的输入（部分函数按下标较小者）"""
        values, _ = self.function.table_arrays()
        rows, cols, data = self.entries()
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["row_input_hex", "col_input_hex", "weight"])
        for r, c, w in sorted(zip(rows.tolist(), cols.tolist(), data.tolist())):
            if values[r] == 0 and values[c] == 1:
                writer.writerow([_hex(r, self.arity), _hex(c, self.arity), f"{w:.12g}"])
        return buf.getvalue()


def from_dense(f: BooleanFunction, M: np.ndarray) -> AdversaryMatrix:
    M = np.asarray(M, dtype=np.float64)
    return AdversaryMatrix(f, sp.csr_matrix(M))


def from_pairs(f: BooleanFunction, pairs: Sequence[Tuple[int, int]],
               weights: Optional[Sequence[float]] = None) -> AdversaryMatrix:
    """由 (x, y) 输入对构造对称矩阵（每对写入两个方向）"""
    n = 1 << f.arity
    if not pairs:
        return AdversaryMatrix(f, sp.csr_matrix((n, n)))
    xs = np.array([int(x) for x, _ in pairs], dtype=np.int64)
    ys = np.array([int(y) for _, y in pairs], dtype=np.int64)
    w = np.ones(len(pairs)) if weights is None else np.asarray(weights, dtype=np.float64)
    rows = np.concatenate([xs, ys])
    cols = np.concatenate([ys, xs])
    data = np.concatenate([w, w])
    gamma = AdversaryMatrix(f, sp.csr_matrix((data, (rows, cols)), shape=(n, n)))
    gamma.validate()
    return gamma


def adjacency_adversary(f: BooleanFunction) -> AdversaryMatrix:
    """敏感图邻接矩阵 A_f（最近邻对抗矩阵）"""
    return AdversaryMatrix(f, SensitivityGraph.of(f).adjacency())


def random_nn_adversary(f: BooleanFunction, seed: int = 0) -> AdversaryMatrix:
    """敏感图边上取 (0.5, 1.5) 随机正权的最近邻对抗矩阵"""
    edges = SensitivityGraph.of(f).edges
    weights = make_rng(seed).uniform(0.5, 1.5, size=edges.shape[0])
    return from_pairs(f, [tuple(e) for e in edges.tolist()], weights)


def reassemble(f: BooleanFunction, blocks: List[Tuple[np.ndarray, np.ndarray]]) -> AdversaryMatrix:
    """把 (块矩阵, 块内全局下标) 列表拼回完整矩阵"""
    n = 1 << f.arity
    rows, cols, data = [], [], []
    for block, idx in blocks:
        r, c = np.nonzero(block)
        rows.append(idx[r])
        cols.append(idx[c])
        data.append(block[r, c])
    if not rows:
        return AdversaryMatrix(f, sp.csr_matrix((n, n)))
    matrix = sp.csr_matrix((np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
                           shape=(n, n))
    return AdversaryMatrix(f, matrix)
