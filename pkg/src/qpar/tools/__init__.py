"""
Tools - 工作台的 MCP 工具层

工具函数从不抛出异常，统一返回 ResponseBuilder 字典。
"""

# 🧮 函数层 (4 tools)
from .function_tools import (
    build_function,
    describe_function,
    measure_function,
    solve_parallel_depth,
)

# 📐 下界层 (3 tools)
from .bound_tools import adversary_ratio, barrier_bound_tool, nn_bound

# ⚛️ 量子层 (1 tool)
from .quantum_tools import simulate_quantum

# 🧪 验证层 (3 tools)
from .verify_tools import list_verification_suites, merge_reports, run_verification_suite

# 🛠️ 内部工具 (1 tool) - 配置管理
from .._internal.config_tools import get_environment_config

ALL_TOOLS = [
    get_environment_config,
    build_function,
    describe_function,
    measure_function,
    solve_parallel_depth,
    adversary_ratio,
    barrier_bound_tool,
    nn_bound,
    simulate_quantum,
    list_verification_suites,
    run_verification_suite,
    merge_reports,
]

__all__ = [tool.__name__ for tool in ALL_TOOLS] + ["ALL_TOOLS"]
