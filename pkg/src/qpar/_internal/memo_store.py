"""
Memo Store - 精确求解结果的进程内缓存

按 (namespace, key) 存储可 JSON 序列化的结果；设置 QPAR_CACHE_DIR 时
每个 namespace 持久化为一个 JSON 文件并在首次访问时懒加载。
"""

from __future__ import annotations

import json
import logging
import os
import threading
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from .config_tools import current_limits

logger = logging.getLogger(__name__)


@dataclass
class Namespace:
    entries: Dict[str, Any] = field(default_factory=dict)
    loaded: bool = False
    hits: int = 0
    misses: int = 0


class MemoStore:
    """简单的进程内缓存（单例）"""

    _inst: Optional["MemoStore"] = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
            cls._inst._spaces = {}
            cls._inst._lock = threading.Lock()
        return cls._inst

    def _path(self, namespace: str) -> Optional[str]:
        cache_dir = current_limits().cache_dir
        if not cache_dir:
            return None
        return os.path.join(cache_dir, f"{namespace}.json")

    def _space(self, namespace: str) -> Namespace:
        space = self._spaces.get(namespace)
        if space is None:
            space = Namespace()
            self._spaces[namespace] = space
        if not space.loaded:
            path = self._path(namespace)
            if path and os.path.exists(path):
                try:
                    with open(path, "r", encoding="utf-8") as fh:
                        space.entries.update(json.load(fh))
                    logger.info(f"📂 memo namespace {namespace} loaded from {path}")
                except (OSError, ValueError) as e:
                    logger.warning(f"⚠️ memo file unreadable, ignored: {path} ({e})")
            space.loaded = True
        return space

    def get(self, namespace: str, key: str) -> Optional[Any]:
        with self._lock:
            space = self._space(namespace)
            if key in space.entries:
                space.hits += 1
                return space.entries[key]
            space.misses += 1
            return None

    def put(self, namespace: str, key: str, value: Any) -> None:
        with self._lock:
            space = self._space(namespace)
            space.entries[key] = value
            path = self._path(namespace)
            if path:
                os.makedirs(os.path.dirname(path), exist_ok=True)
                tmp = f"{path}.tmp"
                with open(tmp, "w", encoding="utf-8") as fh:
                    json.dump(space.entries, fh, sort_keys=True)
                os.replace(tmp, path)

    def snapshot(self) -> Dict[str, Any]:
        """各 namespace 的条目数与命中统计"""
        with self._lock:
            return {
                name: {"entries": len(s.entries), "hits": s.hits, "misses": s.misses}
                for name, s in self._spaces.items()
            }


def get_memo_store() -> MemoStore:
    return MemoStore()


def reset_memo_store() -> None:
    """清空缓存（主要用于测试）"""
    store = MemoStore()
    with store._lock:
        store._spaces.clear()
