#!/usr/bin/env python3
"""命令行单元测试

通过 main(argv) 调用各子命令，检查输出文件与退出码。
"""

import contextlib
import io
import json
import os
import sys
import tempfile
import unittest

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from src.qpar.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


class CliTestCase(unittest.TestCase):
    """公共工具：临时目录与静默 stderr"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    def run_cli(self, *argv):
        stderr = io.StringIO()
        with contextlib.redirect_stderr(stderr):
            code = main(list(argv))
        return code, stderr.getvalue()

    def read(self, name):
        with open(self.path(name), "r", encoding="utf-8") as fh:
            return fh.read()


class TestFunctionCommands(CliTestCase):
    """fn build / fn show / measure"""

    def test_build(self):
        print("\n=== 测试 fn build ===")
        code, err = self.run_cli("-o", self.path("f.txt"), "fn", "build", "and-or",
                                 "--blocks", "2", "--block-size", "2")
        self.assertEqual(code, EXIT_OK)
        text = self.read("f.txt")
        self.assertTrue(text.startswith("arity 4\nkind and-or\n"))
        self.assertIn("param block_size 2", text)
        self.assertIn("ANDOR_2x2", err)
        print("✓ 描述文本写入输出文件")

    def test_build_table_then_show(self):
        code, _ = self.run_cli("-o", self.path("t.txt"), "fn", "build", "or", "--n=3", "--table")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("kind table", self.read("t.txt"))
        code, _ = self.run_cli("-o", self.path("show.json"), "fn", "show", self.path("t.txt"))
        self.assertEqual(code, EXIT_OK)
        info = json.loads(self.read("show.json"))
        self.assertEqual(info["arity"], 3)
        self.assertTrue(info["total"])
        print("✓ fn show 读取描述文件")

    def test_unknown_generator(self):
        code, _ = self.run_cli("fn", "build", "nope")
        self.assertEqual(code, EXIT_USAGE)
        code, _ = self.run_cli("fn", "build", "or", "stray")
        self.assertEqual(code, EXIT_USAGE)
        print("✓ 未知生成器与多余位置参数为用法错误")

    def test_measure(self):
        code, _ = self.run_cli("-o", self.path("m.csv"), "measure", "or(n=4)", "parity(n=3)")
        self.assertEqual(code, EXIT_OK)
        rows = self.read("m.csv").strip().splitlines()
        self.assertEqual(rows[0], "name,arity,C0,C1,C,bs,lambda")
        self.assertEqual(len(rows), 3)
        self.assertTrue(rows[1].startswith("OR_4,4,4,1,4,4,"))
        print("✓ 测度 CSV")

    def test_extra_argument_rejected(self):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as ctx:
                main(["measure", "or(n=2)", "--bogus", "1"])
        self.assertEqual(ctx.exception.code, 2)
        print("✓ 非 fn build 子命令不接受额外参数")


class TestSolverCommands(CliTestCase):
    """dtree / sim / adv"""

    def test_dtree(self):
        print("\n=== 测试 dtree solve ===")
        code, _ = self.run_cli("-o", self.path("d.json"), "dtree", "solve", "--fn", "or(n=4)",
                               "--p", "2", "--transcript", self.path("t.jsonl"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(self.read("d.json"))["depth"], 2)
        lines = self.read("t.jsonl").strip().splitlines()
        self.assertGreater(len(lines), 0)
        json.loads(lines[0])
        print("✓ D(OR_4, p=2) = 2，并写出对局记录")

    def test_sim_grover(self):
        code, err = self.run_cli("-o", self.path("dist.csv"), "sim", "quantum",
                                 "--program", "grover", "--input", "00000100",
                                 "--N", "8", "--p", "2", "--rounds", "1")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(self.read("dist.csv").startswith("outcome,probability\n"))
        summary = json.loads(err.strip().splitlines()[-1])
        self.assertAlmostEqual(summary["success_probability"], 1.0, places=9)
        print("✓ 分区 Grover 分布与成功概率")

    def test_sim_missing_size(self):
        code, _ = self.run_cli("sim", "quantum", "--program", "dj", "--input", "0000")
        self.assertEqual(code, EXIT_USAGE)
        print("✓ 缺少 N 为用法错误")

    def test_adv(self):
        print("\n=== 测试 adv ===")
        code, _ = self.run_cli("-o", self.path("r.json"), "adv", "ratio", "--fn", "or(n=4)",
                               "--p", "1", "--matrix-csv", self.path("gamma.csv"))
        self.assertEqual(code, EXIT_OK)
        result = json.loads(self.read("r.json"))
        self.assertAlmostEqual(result["value"], 2.0, places=9)
        self.assertEqual(result["label"], "witness lower bound")
        self.assertTrue(self.read("gamma.csv").startswith("row_input_hex,col_input_hex,weight"))

        code, _ = self.run_cli("-o", self.path("b.json"), "adv", "barrier",
                               "--fn", "and-or(blocks=2,block_size=2)", "--p", "2")
        self.assertEqual(code, EXIT_OK)
        self.assertAlmostEqual(json.loads(self.read("b.json"))["barrier"], 1.0)
        print("✓ 比值与屏障写成 JSON")


class TestVerifyCommands(CliTestCase):
    """verify / report merge"""

    def test_verify_suite(self):
        print("\n=== 测试 verify ===")
        code, err = self.run_cli("-o", self.path("g.jsonl"), "--csv-for-plot",
                                 self.path("g.csv"), "--seed", "3", "verify", "grover",
                                 "--N", "8", "--p", "2", "--r", "1")
        self.assertEqual(code, EXIT_OK)
        summary = json.loads(self.read("g.jsonl").strip().splitlines()[-1])["summary"]
        self.assertEqual(summary["seed"], 3)
        self.assertTrue(self.read("g.csv").startswith("suite,case,metric,value\n"))
        self.assertIn("passed", err)
        print("✓ 报告、长格式 CSV 与汇总表")

    def test_verify_list_and_unknown(self):
        code, _ = self.run_cli("-o", self.path("list.jsonl"), "verify", "list")
        self.assertEqual(code, EXIT_OK)
        ids = [json.loads(line)["id"] for line in self.read("list.jsonl").splitlines()]
        self.assertIn("pointer-bounds", ids)
        code, _ = self.run_cli("verify", "nope")
        self.assertEqual(code, EXIT_USAGE)
        print("✓ 未知套件返回 2")

    def test_pointer_bounds(self):
        code, _ = self.run_cli("-o", self.path("p.jsonl"), "verify", "pointer-bounds",
                               "--N", "4", "--k", "2", "--p", "2")
        self.assertEqual(code, EXIT_OK)

    def test_report_merge(self):
        print("\n=== 测试 report merge ===")
        for name in ("a.jsonl", "b.jsonl"):
            code, _ = self.run_cli("-o", self.path(name), "--seed", "1", "verify",
                                   "grover", "--N", "8", "--p", "2", "--r", "0")
            self.assertEqual(code, EXIT_OK)
        code, _ = self.run_cli("-o", self.path("m.jsonl"), "report", "merge",
                               self.path("a.jsonl"), self.path("b.jsonl"),
                               "--merge-seed", "7")
        self.assertEqual(code, EXIT_OK)
        lines = self.read("m.jsonl").strip().splitlines()
        self.assertEqual(len(lines), 2)
        self.assertEqual(json.loads(lines[-1])["summary"]["seed"], 7)
        print("✓ 同一用例去重，种子可覆盖")

    def test_missing_report_file(self):
        code, _ = self.run_cli("report", "merge", self.path("absent.jsonl"))
        self.assertEqual(code, EXIT_FAIL)
        print("✓ 缺失文件返回 1")


if __name__ == "__main__":
    unittest.main(verbosity=2)
