"""
Function Tools - 函数构造、描述、测度与精确并行深度

每个函数都是独立的 MCP 工具，也被命令行直接调用。函数参数既可以是
描述文本（以 "arity" 开头的多行记录），也可以是表达式 and(n=4)。
"""

import logging
from typing import Any, Dict, Optional

from ..boolfn import (
    BooleanFunction,
    block_sensitivity,
    certificate_complexity,
    from_descriptor,
    get_generator_registry,
    parse_function_expr,
    spectral_sensitivity,
    to_descriptor,
)
from ..boolfn.descriptor import parse_value
from ..classical import exact_parallel_D, optimal_transcript
from ..classical.model import GRANULARITIES
from .._internal.config_tools import mcp_tool
from .._internal.errors import CapExceeded, DescriptorError, NotTotal, QparError, TooLarge
from .._internal.response_builder import ResponseBuilder

logger = logging.getLogger(__name__)

MEASURE_COLUMNS = ("name", "arity", "C0", "C1", "C", "bs", "lambda")

# 超出上限或不适用的测度以标记单元格输出
FLAG_TOO_LARGE = "too-large"
FLAG_NOT_TOTAL = "n/a"


def load_function(source: str) -> BooleanFunction:
    """描述文本或函数表达式 → 函数"""
    text = source.strip()
    if text.startswith("arity") or "\n" in text:
        return from_descriptor(text)
    return parse_function_expr(text)


def _param_value(value: Any) -> Any:
    if not isinstance(value, str):
        return value
    try:
        return parse_value(value)
    except DescriptorError:
        return value


def build_from_params(generator: str, params: Dict[str, Any]) -> BooleanFunction:
    """按生成器名称构造；字符串参数按表达式语法解析，无法解析时保留原文"""
    parsed = {k: _param_value(v) for k, v in params.items()}
    return get_generator_registry().build(generator, parsed)


def _flagged(compute):
    try:
        return compute()
    except (TooLarge, CapExceeded):
        return FLAG_TOO_LARGE
    except NotTotal:
        return FLAG_NOT_TOTAL


def measure_row(f: BooleanFunction) -> Dict[str, Any]:
    """name, arity, C0, C1, C, bs, lambda；常函数除 arity 外全为 0"""
    if f.is_constant():
        return {"name": f.name, "arity": f.arity, "C0": 0, "C1": 0, "C": 0,
                "bs": 0, "lambda": 0.0}
    row: Dict[str, Any] = {"name": f.name, "arity": f.arity}
    row["C0"] = _flagged(lambda: certificate_complexity(f, 0))
    row["C1"] = _flagged(lambda: certificate_complexity(f, 1))
    row["C"] = _flagged(lambda: certificate_complexity(f, "max"))
    row["bs"] = _flagged(lambda: block_sensitivity(f))
    row["lambda"] = _flagged(lambda: spectral_sensitivity(f))
    return row


@mcp_tool(
    name="build_function",
    description="按生成器名称与参数构造布尔函数，返回描述文本",
)
def build_function(
    generator: str, params: Optional[Dict[str, Any]] = None, table: bool = False
) -> Dict[str, Any]:
    """
    构造函数并返回描述记录

    Args:
        generator: 生成器名称（and, or, and-or, pointer, cor ...）
        params: 生成器参数；函数值参数写成表达式字符串
        table: 是否物化为真值表
    """
    try:
        f = build_from_params(generator, params or {})
        return ResponseBuilder.success(
            name=f.name, arity=f.arity, expr=f.spec_expr(),
            descriptor=to_descriptor(f, table=table),
        )
    except QparError as e:
        return ResponseBuilder.from_error(e)
    except Exception as e:
        return ResponseBuilder.error(f"构造函数失败: {str(e)}")


@mcp_tool(
    name="describe_function",
    description="解析描述文本或表达式，返回函数摘要与生成器列表",
)
def describe_function(function: str) -> Dict[str, Any]:
    """函数摘要：名称、元数、是否全函数、定义域大小、块结构"""
    try:
        f = load_function(function)
        info: Dict[str, Any] = {
            "name": f.name,
            "arity": f.arity,
            "kind": f.kind,
            "generator": f.generator,
            "total": f.is_total(),
            "expr": f.spec_expr(),
            "generators": get_generator_registry().names(),
        }
        if f.block_meta is not None:
            info["block"] = {"bits": f.block_meta.block_bits, "count": f.block_meta.block_count}
        if f.arity <= 16:
            info["domain_size"] = f.domain_size()
        return ResponseBuilder.success(info)
    except QparError as e:
        return ResponseBuilder.from_error(e)
    except Exception as e:
        return ResponseBuilder.error(f"解析函数失败: {str(e)}")


@mcp_tool(
    name="measure_function",
    description="计算 C0、C1、C、bs、λ；超出上限的测度以标记单元格返回",
)
def measure_function(function: str) -> Dict[str, Any]:
    try:
        return ResponseBuilder.success(measure_row(load_function(function)))
    except QparError as e:
        return ResponseBuilder.from_error(e)
    except Exception as e:
        return ResponseBuilder.error(f"测度计算失败: {str(e)}")


@mcp_tool(
    name="solve_parallel_depth",
    description="精确求解 p-并行确定性查询复杂度，可附带最优对局记录",
)
def solve_parallel_depth(
    function: str, p: int = 1, granularity: str = "bit", transcript: bool = False
) -> Dict[str, Any]:
    """
    精确 D^{p∥}(f)

    Args:
        function: 描述文本或表达式
        p: 每轮并行查询数
        granularity: bit 或 block
        transcript: 是否返回最优策略对最优对手的 JSON-lines 记录
    """
    if p < 1:
        return ResponseBuilder.validation_error("p", p, "正整数")
    if granularity not in GRANULARITIES:
        return ResponseBuilder.validation_error("granularity", granularity, " 或 ".join(GRANULARITIES))
    try:
        f = load_function(function)
        depth = exact_parallel_D(f, p, granularity)
        logger.info(f"🌲 D^{p}∥({f.name}) = {depth} [{granularity}]")
        result = ResponseBuilder.success(name=f.name, p=p, granularity=granularity, depth=depth)
        if transcript:
            result["transcript"] = optimal_transcript(f, p, granularity).to_jsonl()
        return result
    except QparError as e:
        return ResponseBuilder.from_error(e)
    except Exception as e:
        return ResponseBuilder.error(f"求解失败: {str(e)}")
