#!/usr/bin/env python3
"""内部基础设施单元测试

环境配置、异常字段、响应构建、随机数派生、线程扇出、缓存与谱范数。
"""

import json
import os
import sys
import tempfile
import unittest
from unittest import mock

import numpy as np
import scipy.sparse as sp

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from src.qpar._internal.config_tools import (
    Limits,
    current_limits,
    get_environment_config,
    set_loaded_config,
)
from src.qpar._internal.errors import (
    DescriptorError,
    QparError,
    TooLarge,
    UnknownGenerator,
)
from src.qpar._internal.linalg import spectral_norm, symmetric_norm
from src.qpar._internal.memo_store import get_memo_store, reset_memo_store
from src.qpar._internal.response_builder import ResponseBuilder
from src.qpar._internal.seeding import make_rng, spawn_rngs, spawn_seeds
from src.qpar._internal.workers import default_threads, parallel_map


class TestConfig(unittest.TestCase):
    """环境变量驱动的上限"""

    def tearDown(self):
        set_loaded_config(None)

    def test_defaults(self):
        print("\n=== 测试默认上限 ===")
        with mock.patch.dict(os.environ, {}, clear=True):
            self.assertEqual(current_limits(), Limits())
        print("✓ 未设置环境变量时使用默认值")

    def test_env_override(self):
        env = {"QPAR_MAX_TABLE_ARITY": "10", "QPAR_THREADS": "3", "QPAR_MAX_QUBITS": "bad"}
        with mock.patch.dict(os.environ, env, clear=True):
            limits = current_limits()
            self.assertEqual(limits.max_table_arity, 10)
            self.assertEqual(limits.threads, 3)
            self.assertEqual(limits.max_qubits, Limits().max_qubits)
            self.assertEqual(default_threads(), 3)
        print("✓ 环境变量覆盖，非法值回退默认")

    def test_loaded_config_wins(self):
        with mock.patch.dict(os.environ, {"QPAR_MAX_GAME_BITS": "5"}, clear=True):
            set_loaded_config({"mcpServers": {"qpar": {"env": {"QPAR_MAX_GAME_BITS": "7"}}}})
            self.assertEqual(current_limits().max_game_bits, 7)
            set_loaded_config({"env": {"QPAR_MAX_GAME_BITS": "9"}})
            self.assertEqual(current_limits().max_game_bits, 9)
            response = get_environment_config()
        self.assertTrue(response["success"])
        self.assertTrue(response["config_loaded"])
        self.assertEqual(response["limits"]["max_game_bits"], 9)
        print("✓ MCP 配置中的 env 优先于进程环境")


class TestResponses(unittest.TestCase):
    """异常字段与响应格式"""

    def test_error_fields(self):
        print("\n=== 测试响应构建 ===")
        err = TooLarge("too big", arity=30, cap=24)
        response = ResponseBuilder.from_error(err, tool="measure")
        self.assertFalse(response["success"])
        self.assertEqual(response["error"], "too big")
        self.assertEqual(response["error_type"], "TooLarge")
        self.assertEqual(response["arity"], 30)
        self.assertEqual(response["tool"], "measure")
        self.assertTrue(issubclass(UnknownGenerator, DescriptorError))
        self.assertTrue(issubclass(DescriptorError, QparError))
        print("✓ 异常类名写入 error_type")

    def test_builders(self):
        self.assertEqual(ResponseBuilder.success({"a": 1}, b=2), {"success": True, "a": 1, "b": 2})
        self.assertEqual(ResponseBuilder.success([1])["data"], [1])
        listed = ResponseBuilder.list_result([1, 2], total_count=5)
        self.assertEqual(listed["count"], 2)
        self.assertTrue(listed["filtered"])
        status = ResponseBuilder.status_result("fail", details={"failed": 1})
        self.assertFalse(status["passed"])
        self.assertEqual(status["details"], {"failed": 1})
        bound = ResponseBuilder.bound_result("nn", 2, p=1)
        self.assertEqual(bound["value"], 2.0)
        self.assertEqual(bound["label"], "witness lower bound")
        self.assertTrue(ResponseBuilder.not_found_error("suite", "x")["not_found"])
        invalid = ResponseBuilder.validation_error("p", 0, "正整数")
        self.assertTrue(invalid["validation_error"])
        self.assertEqual(invalid["field"], "p")
        print("✓ 成功、列表、状态、下界与错误响应")


class TestSeedingAndWorkers(unittest.TestCase):
    """随机数派生与并行映射"""

    def test_seeding(self):
        print("\n=== 测试随机数派生 ===")
        a = make_rng(42).integers(0, 1 << 30, size=5)
        b = make_rng(42).integers(0, 1 << 30, size=5)
        self.assertTrue(np.array_equal(a, b))
        self.assertEqual(spawn_seeds(7, 3), spawn_seeds(7, 3))
        self.assertEqual(len(set(spawn_seeds(7, 3))), 3)
        first, second = spawn_rngs(7, 2)
        self.assertNotEqual(first.integers(1 << 40), second.integers(1 << 40))
        # 负种子按 64 位掩码处理
        make_rng(-1)
        print("✓ 相同种子得到相同序列")

    def test_parallel_map_order(self):
        items = list(range(20))
        self.assertEqual(parallel_map(lambda x: x * x, items, threads=4),
                         [x * x for x in items])
        self.assertEqual(parallel_map(lambda x: x + 1, items, threads=1), items[1:] + [20])
        print("✓ 结果顺序与输入一致")


class TestMemoStore(unittest.TestCase):
    """进程内缓存与持久化"""

    def setUp(self):
        reset_memo_store()

    def tearDown(self):
        reset_memo_store()

    def test_hits(self):
        print("\n=== 测试缓存 ===")
        with mock.patch.dict(os.environ, {}, clear=True):
            store = get_memo_store()
            self.assertIsNone(store.get("depth", "k"))
            store.put("depth", "k", 3)
            self.assertEqual(store.get("depth", "k"), 3)
            self.assertEqual(store.snapshot()["depth"], {"entries": 1, "hits": 1, "misses": 1})
        print("✓ 命中统计")

    def test_persisted(self):
        with tempfile.TemporaryDirectory() as tmp:
            with mock.patch.dict(os.environ, {"QPAR_CACHE_DIR": tmp}, clear=True):
                get_memo_store().put("depth", "k", {"d": 2})
                with open(os.path.join(tmp, "depth.json"), "r", encoding="utf-8") as fh:
                    self.assertEqual(json.load(fh), {"k": {"d": 2}})
                reset_memo_store()
                self.assertEqual(get_memo_store().get("depth", "k"), {"d": 2})
        print("✓ 设置缓存目录后写盘并懒加载")


class TestLinalg(unittest.TestCase):
    """谱范数"""

    def test_norms(self):
        print("\n=== 测试谱范数 ===")
        A = np.array([[0, 1], [1, 0]], dtype=float)
        self.assertAlmostEqual(symmetric_norm(A), 1.0)
        B = np.array([[3, 0, 0], [0, -4, 0]], dtype=float)
        self.assertAlmostEqual(spectral_norm(B), 4.0)
        self.assertEqual(spectral_norm(sp.csr_matrix((3, 3))), 0.0)
        # 超过稠密阈值时走 ARPACK：32 维超立方体邻接矩阵范数为 5
        n = 5
        rows = [x for x in range(1 << n) for i in range(n)]
        cols = [x ^ (1 << i) for x in range(1 << n) for i in range(n)]
        Q = sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(1 << n, 1 << n))
        self.assertAlmostEqual(symmetric_norm(Q), 5.0, places=8)
        print("✓ 稠密、稀疏与非方阵")

    def test_dimension_cap(self):
        with mock.patch.dict(os.environ, {"QPAR_MAX_MATRIX_DIM": "2"}, clear=True):
            with self.assertRaises(TooLarge):
                spectral_norm(np.eye(3))
        print("✓ 超过维度上限被拒绝")


if __name__ == "__main__":
    unittest.main(verbosity=2)
