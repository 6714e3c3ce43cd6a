"""
Workers - 线程池扇出与资源探测

parallel_map 按输入顺序返回结果，保证报告的规范顺序与执行顺序无关。
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

import psutil

from .config_tools import current_limits
from .errors import CapExceeded

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def default_threads() -> int:
    """QPAR_THREADS 优先，否则取逻辑 CPU 数"""
    configured = current_limits().threads
    if configured > 0:
        return configured
    return psutil.cpu_count(logical=True) or 1


def parallel_map(
    fn: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None
) -> List[R]:
    """并行映射，结果顺序与输入一致"""
    items = list(items)
    workers = threads if threads and threads > 0 else default_threads()
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


def ensure_memory(n_bytes: int, what: str) -> None:
    """分配前检查可用内存，超过一半可用内存即拒绝"""
    available = psutil.virtual_memory().available
    if n_bytes > available // 2:
        raise CapExceeded(
            f"{what} needs {n_bytes} bytes, only {available} available",
            required_bytes=n_bytes,
            available_bytes=available,
        )
    logger.debug("memory ok for %s: %d bytes", what, n_bytes)
