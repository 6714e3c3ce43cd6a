"""
Configuration Tools - 配置管理工具

环境变量驱动的规模上限、线程数与缓存目录；MCP_CONFIG 中的 env 段
优先于进程环境变量。
"""

import os
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

from .response_builder import ResponseBuilder


# MCP工具装饰器
def mcp_tool(name: str = None, description: str = None):
    """MCP工具装饰器"""

    def decorator(func):
        func.mcp_tool_name = name or func.__name__
        func.mcp_tool_description = description or func.__doc__
        return func

    return decorator


MCP_CONFIG = os.environ.get("MCP_CONFIG") or os.environ.get("MCP_CONFIG_PATH")

# 已加载的 MCP_CONFIG 数据，由 server.main 设置
_LOADED_CONFIG: Optional[Dict[str, Any]] = None


def set_loaded_config(config: Optional[Dict[str, Any]]) -> None:
    """设置已加载的MCP配置数据 - 由server.py调用"""
    global _LOADED_CONFIG
    _LOADED_CONFIG = config


def get_loaded_config() -> Optional[Dict[str, Any]]:
    """获取已加载的MCP配置数据"""
    return _LOADED_CONFIG


def _get_env_var(name: str, default: Optional[str] = None) -> Optional[str]:
    """读取配置变量：loaded_config.env -> mcpServers.*.env -> os.environ"""
    cfg = get_loaded_config()
    if isinstance(cfg, dict):
        env = cfg.get("env")
        if isinstance(env, dict) and name in env:
            return str(env[name])
        servers = cfg.get("mcpServers")
        if isinstance(servers, dict):
            for srv in servers.values():
                if isinstance(srv, dict):
                    srv_env = srv.get("env")
                    if isinstance(srv_env, dict) and name in srv_env:
                        return str(srv_env[name])
    return os.environ.get(name, default)


def _get_env_int(name: str, default: int) -> int:
    raw = _get_env_var(name)
    if raw is None or not str(raw).strip():
        return default
    try:
        return int(float(raw))
    except ValueError:
        return default


@dataclass(frozen=True)
class Limits:
    """规模上限快照（每次调用 current_limits 重新读取环境）"""

    max_table_arity: int = 24
    max_cert_arity: int = 16
    max_bs_arity: int = 14
    max_lambda_arity: int = 14
    max_game_bits: int = 12
    max_game_blocks: int = 8
    max_game_work: int = 50_000_000
    max_qubits: int = 24
    max_subsets: int = 100_000
    max_matrix_dim: int = 1 << 14
    threads: int = 0
    cache_dir: Optional[str] = None


def current_limits() -> Limits:
    """从环境变量构建当前的规模上限"""
    defaults = Limits()
    return Limits(
        max_table_arity=_get_env_int("QPAR_MAX_TABLE_ARITY", defaults.max_table_arity),
        max_cert_arity=_get_env_int("QPAR_MAX_CERT_ARITY", defaults.max_cert_arity),
        max_bs_arity=_get_env_int("QPAR_MAX_BS_ARITY", defaults.max_bs_arity),
        max_lambda_arity=_get_env_int(
            "QPAR_MAX_LAMBDA_ARITY", defaults.max_lambda_arity
        ),
        max_game_bits=_get_env_int("QPAR_MAX_GAME_BITS", defaults.max_game_bits),
        max_game_blocks=_get_env_int(
            "QPAR_MAX_GAME_BLOCKS", defaults.max_game_blocks
        ),
        max_game_work=_get_env_int("QPAR_MAX_GAME_WORK", defaults.max_game_work),
        max_qubits=_get_env_int("QPAR_MAX_QUBITS", defaults.max_qubits),
        max_subsets=_get_env_int("QPAR_MAX_SUBSETS", defaults.max_subsets),
        max_matrix_dim=_get_env_int("QPAR_MAX_MATRIX_DIM", defaults.max_matrix_dim),
        threads=_get_env_int("QPAR_THREADS", 0),
        cache_dir=_get_env_var("QPAR_CACHE_DIR") or None,
    )


@mcp_tool(
    name="get_environment_config",
    description="获取当前工作台的规模上限、线程数与缓存配置",
)
def get_environment_config() -> Dict[str, Any]:
    """获取当前工作台的环境配置"""
    try:
        from .workers import default_threads

        limits = asdict(current_limits())
        limits["threads"] = default_threads()
        config = {
            "mcp_config_path": MCP_CONFIG,
            "config_loaded": get_loaded_config() is not None,
            "limits": limits,
            "working_directory": os.getcwd(),
        }
        return ResponseBuilder.success(data=config)
    except Exception as e:
        return ResponseBuilder.error(f"获取环境配置失败: {str(e)}")
