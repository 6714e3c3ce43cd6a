"""
Generator Registry - 全局生成器注册表

生成器名称 → 构造函数。构造模块在导入时通过 register_generator 声明，
描述符解析与命令行 `fn build` 通过注册表按名称构造函数。
"""

import importlib
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional

from .._internal.errors import DescriptorError, UnknownGenerator

logger = logging.getLogger(__name__)

BUILTIN_MODULES = (
    "src.qpar.boolfn.builders",
    "src.qpar.boolfn.compose",
    "src.qpar.constructions.families",
    "src.qpar.constructions.forrelation",
    "src.qpar.constructions.pointer",
    "src.qpar.constructions.cor",
    "src.qpar.constructions.cheatsheet",
    "src.qpar.constructions.two_adaptive",
    "src.qpar.adversary.read_once",
)


@dataclass(frozen=True)
class GeneratorEntry:
    name: str
    builder: Callable[..., Any]
    summary: str


# 装饰器声明的全部生成器；注册表重置后从这里重新填充
_DECLARED: Dict[str, GeneratorEntry] = {}


class GeneratorRegistry:
    """生成器注册表"""

    def __init__(self) -> None:
        self._entries: Dict[str, GeneratorEntry] = dict(_DECLARED)

    def register(self, entry: GeneratorEntry) -> None:
        self._entries[entry.name] = entry

    def names(self) -> List[str]:
        ensure_builtin_generators()
        return sorted(self._entries)

    def entry(self, name: str) -> GeneratorEntry:
        ensure_builtin_generators()
        entry = self._entries.get(name)
        if entry is None:
            raise UnknownGenerator(
                f"unknown generator: {name}", generator=name, known=self.names()
            )
        return entry

    def build(self, name: str, params: Dict[str, Any]) -> Any:
        entry = self.entry(name)
        try:
            return entry.builder(**params)
        except TypeError as e:
            raise DescriptorError(
                f"bad parameters for {name}: {e}", generator=name, params=sorted(params)
            ) from e


_global_registry: Optional[GeneratorRegistry] = None


def get_generator_registry() -> GeneratorRegistry:
    """获取全局生成器注册表实例"""
    global _global_registry
    if _global_registry is None:
        _global_registry = GeneratorRegistry()
    return _global_registry


def reset_generator_registry() -> None:
    """重置注册表（主要用于测试）"""
    global _global_registry
    _global_registry = None


def ensure_builtin_generators() -> None:
    """导入内置构造模块，使其装饰器生效"""
    for module in BUILTIN_MODULES:
        importlib.import_module(module)
    registry = _global_registry
    if registry is not None:
        for name, entry in _DECLARED.items():
            registry._entries.setdefault(name, entry)


def register_generator(name: str, summary: str = ""):
    """生成器声明装饰器"""

    def decorator(func):
        entry = GeneratorEntry(name, func, summary or (func.__doc__ or "").strip())
        _DECLARED[name] = entry
        if _global_registry is not None:
            _global_registry.register(entry)
        func.generator_name = name
        return func

    return decorator
