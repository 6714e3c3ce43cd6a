"""
Bound Tools - 并行对抗比值、证书屏障与最近邻下界

见证矩阵只给出下界；所有数值响应都带 "witness lower bound" 标签。
"""

import logging
from typing import Any, Dict, Optional

from ..adversary import (
    AdversaryMatrix,
    adjacency_adversary,
    barrier_bound,
    from_pairs,
    full_relation,
    max_comb_bound,
    nn_lower_bound,
    parallel_adv_ratio,
    symmetric_adversary,
    tensor_adversary,
)
from ..adversary.ratio import MODES
from ..boolfn import BooleanFunction
from ..constructions.cor import CorParts
from .._internal.config_tools import mcp_tool
from .._internal.errors import ConstructionFailed, QparError
from .._internal.response_builder import ResponseBuilder
from .function_tools import load_function

logger = logging.getLogger(__name__)

WITNESSES = ("adjacency", "symmetric", "tensor", "full")


def _component_witness(f: BooleanFunction) -> AdversaryMatrix:
    """全函数用敏感图邻接矩阵，部分函数用全体 0/1 输入对"""
    if f.is_total():
        return adjacency_adversary(f)
    return from_pairs(f, full_relation(f).pairs)


def witness_matrix(f: BooleanFunction, kind: str) -> AdversaryMatrix:
    """按名称构造见证对抗矩阵"""
    if kind == "adjacency":
        return adjacency_adversary(f)
    if kind == "symmetric":
        return symmetric_adversary(f)[1]
    if kind == "full":
        return from_pairs(f, full_relation(f).pairs)
    if kind == "tensor":
        if not isinstance(f.structure, CorParts):
            raise ConstructionFailed(f"tensor witness needs a COR function, got {f.name}")
        parts = f.structure
        return tensor_adversary(_component_witness(parts.f), _component_witness(parts.g), f)
    raise ConstructionFailed(f"unknown witness: {kind}", available=list(WITNESSES))


@mcp_tool(
    name="adversary_ratio",
    description="计算见证矩阵的 p-并行对抗比值 max_S ‖Γ‖/‖Γ_S‖（下界）",
)
def adversary_ratio(
    function: str,
    p: int = 1,
    witness: str = "adjacency",
    mode: str = "exact",
    samples: Optional[int] = None,
    seed: int = 0,
    matrix_csv: bool = False,
) -> Dict[str, Any]:
    """
    见证矩阵的并行对抗比值

    Args:
        function: 描述文本或表达式
        p: 并行度
        witness: adjacency / symmetric / tensor / full
        mode: exact 枚举全部 S，sampled 随机抽样
        samples: 抽样模式下的子集数
        seed: 抽样种子
        matrix_csv: 是否附带矩阵 CSV
    """
    if p < 1:
        return ResponseBuilder.validation_error("p", p, "正整数")
    if witness not in WITNESSES:
        return ResponseBuilder.validation_error("witness", witness, " / ".join(WITNESSES))
    if mode not in MODES:
        return ResponseBuilder.validation_error("mode", mode, " / ".join(MODES))
    try:
        f = load_function(function)
        gamma = witness_matrix(f, witness)
        result = parallel_adv_ratio(gamma, p, mode=mode, samples=samples, seed=seed)
        response = ResponseBuilder.bound_result(
            "parallel_adv_ratio", result.value, name=f.name, p=p, witness=witness
        )
        response.update(result.as_dict())
        if matrix_csv:
            response["matrix_csv"] = gamma.to_csv()
        return response
    except QparError as e:
        return ResponseBuilder.from_error(e)
    except Exception as e:
        return ResponseBuilder.error(f"对抗比值计算失败: {str(e)}")


@mcp_tool(
    name="barrier_bound",
    description="证书屏障 √(⌈C0/p⌉⌈C1/p⌉) 与候选关系族上的最大组合界",
)
def barrier_bound_tool(function: str, p: int = 1, relations: bool = True) -> Dict[str, Any]:
    if p < 1:
        return ResponseBuilder.validation_error("p", p, "正整数")
    try:
        f = load_function(function)
        barrier = barrier_bound(f, p)
        response = ResponseBuilder.success(name=f.name, p=p, barrier=barrier)
        if relations:
            best = max_comb_bound(f, p)
            if best is not None:
                response["best_relation"] = best.as_dict()
                response["within_barrier"] = best.value <= barrier + 1e-9
        return response
    except QparError as e:
        return ResponseBuilder.from_error(e)
    except Exception as e:
        return ResponseBuilder.error(f"屏障计算失败: {str(e)}")


@mcp_tool(
    name="nn_bound",
    description="最近邻对抗下界 λ(f)/max_ρ λ(f|ρ)（限制取 p 个自由变量）",
)
def nn_bound(
    function: str,
    p: int = 1,
    mode: str = "exact",
    samples: Optional[int] = None,
    seed: int = 0,
) -> Dict[str, Any]:
    if p < 1:
        return ResponseBuilder.validation_error("p", p, "正整数")
    if mode not in MODES:
        return ResponseBuilder.validation_error("mode", mode, " / ".join(MODES))
    try:
        f = load_function(function)
        result = nn_lower_bound(f, p, mode=mode, samples=samples, seed=seed)
        response = ResponseBuilder.bound_result("nn_lower_bound", result.value, name=f.name, p=p)
        response.update(result.as_dict())
        return response
    except QparError as e:
        return ResponseBuilder.from_error(e)
    except Exception as e:
        return ResponseBuilder.error(f"最近邻下界计算失败: {str(e)}")
