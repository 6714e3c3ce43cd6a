"""
Boolean Functions - (部分)布尔函数与组合复杂度度量

提供函数表示、限制、复合、描述符格式，以及 C / bs / λ 的精确计算。
"""

from .function import BlockMeta, BooleanFunction, from_table, to_bits, to_index
from .registry import get_generator_registry, register_generator
from .builders import (
    make_and,
    make_const,
    make_maj,
    make_or,
    make_parity,
    make_random,
    make_symmetric,
    make_table,
    make_threshold,
)
from .compose import compose
from .restriction import Restriction, enumerate_restrictions, make_restriction, restrict
from .measures import (
    SensitivityGraph,
    block_sensitivity,
    certificate_complexity,
    minimal_certificate,
    spectral_sensitivity,
)
from .descriptor import from_descriptor, function_expr, parse_function_expr, to_descriptor


def evaluate(f: BooleanFunction, x) -> int:
    """f(x)；定义域外抛出 OutOfDomain"""
    return f.evaluate(x)


__all__ = [
    "BlockMeta",
    "BooleanFunction",
    "from_table",
    "to_bits",
    "to_index",
    "get_generator_registry",
    "register_generator",
    "make_and",
    "make_const",
    "make_maj",
    "make_or",
    "make_parity",
    "make_random",
    "make_symmetric",
    "make_table",
    "make_threshold",
    "compose",
    "Restriction",
    "enumerate_restrictions",
    "make_restriction",
    "restrict",
    "SensitivityGraph",
    "block_sensitivity",
    "certificate_complexity",
    "minimal_certificate",
    "spectral_sensitivity",
    "from_descriptor",
    "function_expr",
    "parse_function_expr",
    "to_descriptor",
    "evaluate",
]
