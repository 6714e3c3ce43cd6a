"""
MCP Tools Export Module - 统一导出工作台的 MCP 工具
"""

from ..qpar.tools import (
    ALL_TOOLS,
    adversary_ratio,
    barrier_bound_tool,
    build_function,
    describe_function,
    get_environment_config,
    list_verification_suites,
    measure_function,
    merge_reports,
    nn_bound,
    run_verification_suite,
    simulate_quantum,
    solve_parallel_depth,
)

__all__ = [tool.__name__ for tool in ALL_TOOLS]

# 版本信息
__version__ = "0.1.0"
__description__ = "并行查询复杂度工作台 - 12 个 MCP 工具"
