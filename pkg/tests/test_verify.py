#!/usr/bin/env python3
"""验证套件与报告单元测试

小网格运行各套件，检查报告的确定性、合并与解析。
"""

import json
import os
import sys
import unittest

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from src.qpar.verify import (
    CaseRecord,
    Grid,
    SuiteReport,
    get_suite,
    list_suites,
    merge_reports,
    parse_report,
    run_suite,
)
from src.qpar._internal.errors import UnknownSuite

SUITE_IDS = {
    "spectral", "block-diag", "barrier", "symmetric", "pointer-bounds", "cor-sandwich",
    "cheatsheet-upper", "bs-witness", "two-adaptive", "ksum-lift", "star-lemma",
    "forrelation", "grover",
}

SMALL_GRIDS = {
    "spectral": {"max_arity": 3, "trials": 1},
    "block-diag": {"N": [4], "p": [2], "trials": 1},
    "barrier": {"max_arity": 2, "trials": 1},
    "symmetric": {"max_n": 4, "p": [1, 2]},
    "pointer-bounds": {"N": [4], "k": [1, 2], "p": [1, 2]},
    "cor-sandwich": {"p": [1]},
    "bs-witness": {},
    "ksum-lift": {"max_len": 2, "trials": 2},
    "star-lemma": {"trials": 200},
    "forrelation": {"n": [1, 2], "trials": 3},
    "grover": {"N": [8], "p": [1, 2], "r": [1]},
    "two-adaptive": {"trials": 20},
}


class TestRegistry(unittest.TestCase):
    """套件注册表与网格"""

    def test_list(self):
        print("\n=== 测试套件列表 ===")
        ids = {s["id"] for s in list_suites()}
        self.assertEqual(ids, SUITE_IDS)
        print(f"✓ {len(ids)} 个套件")

    def test_unknown(self):
        with self.assertRaises(UnknownSuite):
            get_suite("nope")
        with self.assertRaises(UnknownSuite):
            run_suite("nope")
        print("✓ 未知套件被拒绝")

    def test_grid(self):
        grid = Grid({"p": [3], "N": None, "k": []}, {"N": [4], "p": [1], "k": [2]})
        self.assertEqual(grid.ints("p"), [3])
        self.assertEqual(grid.ints("N"), [4])
        self.assertEqual(grid.scalar("k"), 2)
        self.assertEqual(list(grid.as_dict()), ["N", "k", "p"])
        print("✓ 显式值覆盖默认值，空值保留默认")


class TestSuites(unittest.TestCase):
    """小网格下全部通过"""

    def test_small_grids_pass(self):
        print("\n=== 测试小网格套件 ===")
        for suite_id, grid in SMALL_GRIDS.items():
            with self.subTest(suite=suite_id):
                report = run_suite(suite_id, grid, seed=0)
                self.assertGreater(len(report.records), 0)
                failed = [r.as_dict() for r in report.records if not r.passed]
                self.assertEqual(failed, [])
                self.assertEqual(report.exit_code(), 0)
                print(f"✓ {suite_id}: {report.passed}/{len(report.records)}")

    def test_pointer_records(self):
        report = run_suite("pointer-bounds", seed=0)
        for r in report.records:
            self.assertEqual(r.measured, min(r.case["k"], r.case["N"] // r.case["p"]))
        print("✓ 指针追踪记录给出 min(k, N/p)")


class TestReport(unittest.TestCase):
    """报告格式、确定性与合并"""

    def test_deterministic(self):
        print("\n=== 测试报告确定性 ===")
        grid = {"N": [8], "p": [2], "r": [0, 1]}
        a = run_suite("grover", grid, seed=5).to_jsonl()
        b = run_suite("grover", grid, seed=5).to_jsonl()
        self.assertEqual(a, b)
        summary = json.loads(a.strip().splitlines()[-1])["summary"]
        self.assertEqual(summary["seed"], 5)
        self.assertEqual(summary["cases"], 2)
        print("✓ 相同网格与种子得到逐字节相同的报告")

    def test_parse_and_merge(self):
        first = run_suite("grover", {"N": [8], "p": [2], "r": [0]}, seed=1)
        second = run_suite("forrelation", {"n": [1], "trials": 2}, seed=1)
        records, summaries = parse_report(first.to_jsonl())
        self.assertEqual(len(records), 1)
        self.assertEqual(summaries[0]["suite"], "grover")

        merged = merge_reports([first.to_jsonl(), second.to_jsonl()])
        self.assertEqual(merged.suite, "forrelation+grover")
        self.assertEqual(merged.seed, 1)
        self.assertEqual(len(merged.records), 2)
        again = merge_reports([first.to_jsonl(), first.to_jsonl()], seed=9)
        self.assertEqual(len(again.records), 1)
        self.assertEqual(again.seed, 9)
        print("✓ 同一用例合并后只保留一条")

    def test_failed_record(self):
        report = SuiteReport("demo", 0, {}, [
            CaseRecord("demo", {"x": 1}, 1, 1, True),
            CaseRecord("demo", {"x": 2}, 1, float("nan"), False),
        ])
        self.assertEqual(report.failed, 1)
        self.assertEqual(report.exit_code(), 1)
        rows = report.to_jsonl().splitlines()
        self.assertEqual(json.loads(rows[1])["measured"], "nan")
        self.assertIn("1/2 passed", report.summary_table())
        self.assertTrue(report.to_long_csv().startswith("suite,case,metric,value\n"))
        print("✓ 失败用例使退出码为 1")


if __name__ == "__main__":
    unittest.main(verbosity=2)
