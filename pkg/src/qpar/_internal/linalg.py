"""
Linalg - 谱范数计算核心

稀疏对称矩阵用 ARPACK (scipy.sparse.linalg.eigsh) 求最大代数特征值，
起始向量固定以保证可复现；一般矩阵 B 通过对称嵌入 [[0,B],[B^T,0]]
求最大奇异值。维度不超过 DENSE_CUTOFF 时直接做稠密分解。
"""

import logging
from typing import Union

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from .config_tools import current_limits
from .errors import NoConvergence, TooLarge
from .seeding import make_rng

logger = logging.getLogger(__name__)

DENSE_CUTOFF = 16
EIG_TOL = 1e-13
START_SEED = 0x5EED

MatrixLike = Union[np.ndarray, sp.spmatrix, sp.sparray]


def _start_vector(n: int) -> np.ndarray:
    return make_rng(START_SEED).uniform(0.5, 1.5, size=n)


def _arpack_extreme(A: sp.csr_matrix, which: str) -> float:
    n = A.shape[0]
    v0 = _start_vector(n)
    ncv = min(n - 1, 40)
    maxiter = max(1000, 20 * n)
    try:
        vals = eigsh(A, k=1, which=which, v0=v0, tol=EIG_TOL, ncv=ncv, maxiter=maxiter,
                     return_eigenvectors=False)
        return float(vals[0])
    except ArpackNoConvergence as e:
        logger.debug("eigsh %s did not converge at ncv=%d, retrying", which, ncv)
        partial = e.eigenvalues
    try:
        vals = eigsh(A, k=1, which=which, v0=v0, tol=EIG_TOL, ncv=min(n - 1, 120),
                     maxiter=maxiter * 10, return_eigenvectors=False)
        return float(vals[0])
    except ArpackNoConvergence as e:
        residual = None
        if e.eigenvectors is not None and e.eigenvectors.size:
            vec = e.eigenvectors[:, 0]
            val = e.eigenvalues[0]
            residual = float(np.linalg.norm(A @ vec - val * vec))
        raise NoConvergence(
            f"eigsh({which}) failed to converge on a {n}x{n} matrix",
            dimension=n,
            residual=residual,
            partial=[float(v) for v in (e.eigenvalues if e.eigenvalues is not None
                                        else partial)],
        ) from e


def symmetric_norm(A: MatrixLike, spectrum_symmetric: bool = False) -> float:
    """对称矩阵的谱范数 max|λ|

    Args:
        A: 对称矩阵（稠密或稀疏）
        spectrum_symmetric: 谱关于 0 对称（二部图、对称嵌入）时只求最大代数特征值
    """
    A = sp.csr_matrix(A, dtype=np.float64)
    n = A.shape[0]
    if n == 0 or A.nnz == 0:
        return 0.0
    if n <= DENSE_CUTOFF:
        vals = np.linalg.eigvalsh(A.toarray())
        return float(np.max(np.abs(vals)))
    top = _arpack_extreme(A, "LA")
    if spectrum_symmetric or A.data.min() >= 0:
        # 非负对称矩阵的谱半径等于最大代数特征值
        return abs(top)
    bottom = _arpack_extreme(A, "SA")
    return max(abs(top), abs(bottom))


def spectral_norm(M: MatrixLike) -> float:
    """一般矩阵的最大奇异值

    对称方阵直接求特征值；其余情况构造对称嵌入。
    """
    cap = current_limits().max_matrix_dim
    M = sp.csr_matrix(M, dtype=np.float64)
    rows, cols = M.shape
    if max(rows, cols) > cap:
        raise TooLarge(f"matrix {rows}x{cols} exceeds dimension cap {cap}",
                       rows=rows, cols=cols, cap=cap)
    if rows == 0 or cols == 0 or M.nnz == 0:
        return 0.0
    if rows == cols:
        diff = abs(M - M.T)
        if diff.nnz == 0 or diff.max() <= 1e-14 * abs(M).max():
            return symmetric_norm(M)
    if rows + cols <= DENSE_CUTOFF:
        return float(np.linalg.norm(M.toarray(), 2))
    embed = sp.bmat([[None, M], [M.T, None]], format="csr")
    return symmetric_norm(embed, spectrum_symmetric=True)


def dense_spectral_norm(M: MatrixLike) -> float:
    """稠密 SVD 参考值（用于交叉校验）"""
    if sp.issparse(M):
        M = M.toarray()
    M = np.asarray(M, dtype=np.float64)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))
