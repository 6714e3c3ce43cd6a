"""
Adversary - 对抗矩阵与并行量子下界

对称形式的对抗矩阵、并行对抗比值、最近邻块对角分解与限制下界、
组合对抗方法及其证书壁垒、COR 张量积、对称函数与读一次公式的见证矩阵。
全部输出都是给定见证矩阵的下界，不做对抗矩阵的最优化搜索。
"""

from .blocks import Block, block_decompose, reassemble_blocks
from .combinatorial import (
    CombBound,
    RelationWeights,
    barrier_bound,
    candidate_relations,
    comb_adv_bound,
    comb_adv_bound_details,
    distance_relation,
    full_relation,
    max_comb_bound,
    or_witness_relation,
    sensitivity_relation,
)
from .matrix import (
    AdversaryMatrix,
    adjacency_adversary,
    from_dense,
    from_pairs,
    random_nn_adversary,
    reassemble,
)
from .ratio import (
    BoundResult,
    RatioResult,
    min_index_ratio,
    nn_lower_bound,
    parallel_adv_ratio,
    restriction_lambda,
)
from .read_once import (
    ReadOnceFormula,
    make_read_once,
    random_read_once,
    read_once_lower_bound,
    read_once_restrict,
)
from .symmetric import (
    symmetric_adversary,
    symmetric_prediction,
    symmetric_threshold,
    weight_profile,
)
from .tensor import component_gamma_i, tensor_adversary

__all__ = [
    "AdversaryMatrix",
    "Block",
    "BoundResult",
    "CombBound",
    "RatioResult",
    "ReadOnceFormula",
    "RelationWeights",
    "adjacency_adversary",
    "barrier_bound",
    "block_decompose",
    "candidate_relations",
    "comb_adv_bound",
    "comb_adv_bound_details",
    "component_gamma_i",
    "distance_relation",
    "from_dense",
    "from_pairs",
    "full_relation",
    "make_read_once",
    "max_comb_bound",
    "min_index_ratio",
    "nn_lower_bound",
    "or_witness_relation",
    "parallel_adv_ratio",
    "random_nn_adversary",
    "random_read_once",
    "read_once_lower_bound",
    "read_once_restrict",
    "reassemble",
    "reassemble_blocks",
    "restriction_lambda",
    "sensitivity_relation",
    "symmetric_adversary",
    "symmetric_prediction",
    "symmetric_threshold",
    "tensor_adversary",
    "weight_profile",
]
