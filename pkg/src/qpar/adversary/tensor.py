"""
Tensor - COR(f,g) 的张量积对抗矩阵

COR 输入下标为 x | (y << N_f)，即 y 为高位，因此按下标顺序的积为
kron(Γg, Γf)：条目 [(y,x),(y',x')] = Γg[y,y']·Γf[x,x']。对称形式的积
再限制到 COR 定义域（f(x) = g(y)），恰为二部形式 B_f ⊗ B_g 的对称化，
范数等于 ‖Γf‖·‖Γg‖。
"""

from __future__ import annotations

from typing import Optional

import numpy as np
import scipy.sparse as sp

from ..boolfn.function import BooleanFunction
from ..constructions.cor import make_cor
from .._internal.errors import ArityMismatch
from .matrix import AdversaryMatrix


def _domain_masked(matrix: sp.spmatrix, mask: np.ndarray) -> sp.csr_matrix:
    keep = sp.diags(mask.astype(np.float64))
    return sp.csr_matrix(keep @ matrix @ keep)


def tensor_adversary(
    gamma_f: AdversaryMatrix,
    gamma_g: AdversaryMatrix,
    cor_fn: Optional[BooleanFunction] = None,
) -> AdversaryMatrix:
    f, g = gamma_f.function, gamma_g.function
    cor = cor_fn if cor_fn is not None else make_cor(f, g)
    if cor.arity != f.arity + g.arity:
        raise ArityMismatch("COR arity must equal the sum of component arities",
                            cor=cor.arity, f=f.arity, g=g.arity)
    product = sp.kron(gamma_g.matrix, gamma_f.matrix, format="csr")
    _, mask = cor.table_arrays()
    tensor = AdversaryMatrix(cor, _domain_masked(product, mask))
    tensor.validate()
    return tensor


def component_gamma_i(gamma_f: AdversaryMatrix, gamma_g: AdversaryMatrix, i: int,
                      cor_fn: Optional[BooleanFunction] = None) -> AdversaryMatrix:
    """(Γf)_i ⊗ Γg（i 在 f 部分）或 Γf ⊗ (Γg)_{i-N_f}（i 在 g 部分）"""
    nf = gamma_f.arity
    if i < nf:
        return tensor_adversary(gamma_f.gamma_i(i), gamma_g, cor_fn)
    return tensor_adversary(gamma_f, gamma_g.gamma_i(i - nf), cor_fn)
