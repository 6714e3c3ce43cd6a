"""
Internal Support Components - 内部支持组件

响应格式、配置、异常、缓存、线程池、随机数与谱范数核心。
只供包内使用。
"""

from .response_builder import ResponseBuilder
from .config_tools import mcp_tool, current_limits, Limits
from .errors import QparError
from .memo_store import get_memo_store, reset_memo_store
from .seeding import make_rng, spawn_rngs, spawn_seeds
from .workers import parallel_map, default_threads

__all__ = [
    "ResponseBuilder",
    "mcp_tool",
    "current_limits",
    "Limits",
    "QparError",
    "get_memo_store",
    "reset_memo_store",
    "make_rng",
    "spawn_rngs",
    "spawn_seeds",
    "parallel_map",
    "default_threads",
]
