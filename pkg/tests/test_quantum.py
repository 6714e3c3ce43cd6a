#!/usr/bin/env python3
"""p-并行量子查询模拟单元测试

覆盖分区 Grover、Deutsch-Jozsa、Forrelation 程序、PARITY∘f 与 ANA 的一轮程序、
奇偶到指针追踪的归约，以及作弊表与 2-Adaptive 的混合算法。
"""

import os
import sys
import unittest
from itertools import product
from unittest import mock

import numpy as np

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from src.qpar.boolfn import to_bits
from src.qpar.classical import sample_hard_instances
from src.qpar.constructions import (
    encode_pointers,
    forrelation_value,
    make_ana,
    make_canonical_cheatsheet,
    make_dj,
    make_two_adaptive,
)
from src.qpar.constructions.cheatsheet import build_yes_input
from src.qpar.constructions.forrelation import join_tables
from src.qpar.quantum import (
    DJQuantumSolver,
    ana_quantum_program,
    chain_parity,
    cheatsheet_quantum_3round,
    closed_form_success,
    deutsch_jozsa_program,
    forrelation_accept_probability,
    grover_parallel,
    grover_search,
    parity_parallel_program,
    parity_reduction_instance,
    run_program,
    two_adaptive_quantum,
)
from src.qpar._internal.errors import ArityMismatch, ParallelismTooSmall
from src.qpar._internal.seeding import make_rng


class TestGrover(unittest.TestCase):
    """分区 Grover 搜索"""

    def test_exact_hit(self):
        print("\n=== 测试分区 Grover ===")
        x = np.zeros(8, dtype=np.uint8)
        x[5] = 1
        result = grover_search(x, 8, 2, 1)
        self.assertEqual(result["method"], "joint")
        self.assertAlmostEqual(result["success"], 1.0, places=9)
        self.assertEqual(result["rounds"], 1)
        self.assertEqual(result["total_rounds"], 2)
        self.assertAlmostEqual(result["per_partition"][0], 0.0, places=12)
        self.assertAlmostEqual(result["per_partition"][1], 1.0, places=9)
        # 整个程序：第二个寄存器以概率 1 落在分区内下标 1（即 x_5）
        full = run_program(grover_parallel(8, 2, 1), x)
        self.assertAlmostEqual(full.probability(lambda o: o[1] == 1), 1.0, places=9)
        print("✓ N=8, p=2, r=1 时成功概率为 1")

    def test_product_fallback(self):
        x = np.zeros(16, dtype=np.uint8)
        x[6] = 1
        joint = grover_search(x, 16, 4, 1)
        with mock.patch.dict(os.environ, {"QPAR_MAX_QUBITS": "2"}):
            split = grover_search(x, 16, 4, 1)
        self.assertEqual(joint["method"], "joint")
        self.assertEqual(split["method"], "product")
        self.assertAlmostEqual(joint["success"], split["success"], places=9)
        for a, b in zip(joint["per_partition"], split["per_partition"]):
            self.assertAlmostEqual(a, b, places=9)
        print("✓ 超过比特上限时按分区乘积组合，结果一致")

    def test_matches_closed_form(self):
        for N, p, r in ((16, 2, 1), (16, 4, 2), (8, 1, 2)):
            x = np.zeros(N, dtype=np.uint8)
            x[N - 1] = 1
            got = grover_search(x, N, p, r)["success"]
            self.assertAlmostEqual(got, closed_form_success(N // p, 1, r), places=9)
        self.assertEqual(grover_search(np.zeros(8, dtype=np.uint8), 8, 2, 1)["success"], 0.0)
        self.assertAlmostEqual(closed_form_success(4, 1, 0), 0.25)
        print("✓ 模拟与 sin²((2r+1)θ) 一致")

    def test_program_shape(self):
        prog = grover_parallel(8, 2, 3)
        self.assertEqual(prog.rounds, 3)
        self.assertEqual(prog.parallelism, 2)
        with self.assertRaises(ArityMismatch):
            grover_parallel(8, 3, 1)
        with self.assertRaises(ArityMismatch):
            grover_parallel(12, 2, 1)
        print("✓ 分区大小必须为 2 的幂且被 p 整除")


class TestPrograms(unittest.TestCase):
    """Deutsch-Jozsa 与 Forrelation 程序"""

    def test_deutsch_jozsa(self):
        print("\n=== 测试 Deutsch-Jozsa ===")
        solver = DJQuantumSolver(4)
        self.assertAlmostEqual(solver.accept_probability(to_bits("0000", 4)), 0.0)
        self.assertAlmostEqual(solver.accept_probability(to_bits("0110", 4)), 1.0)
        with self.assertRaises(ArityMismatch):
            deutsch_jozsa_program(3)
        print("✓ 常数与平衡输入被精确区分")

    def test_result_outputs(self):
        result = run_program(deutsch_jozsa_program(4), to_bits("0000", 4), shots=50, seed=1)
        self.assertAlmostEqual(sum(result.distribution.values()), 1.0)
        self.assertEqual(sum(result.counts.values()), 50)
        self.assertTrue(result.distribution_csv().startswith("outcome,probability\n"))
        self.assertEqual(len(result.trace_jsonl().strip().splitlines()), len(result.trace))
        self.assertEqual(result.rounds, 1)
        print("✓ 分布、采样计数与逐步轨迹")

    def test_forrelation_acceptance(self):
        print("\n=== 测试 Forrelation 接受概率 ===")
        X = [1, 1, 1, -1]
        self.assertAlmostEqual(forrelation_accept_probability(join_tables(X, X), 2), 1.0,
                               places=9)
        self.assertAlmostEqual(
            forrelation_accept_probability(join_tables(X, [1, 1, -1, 1]), 2), 0.5, places=9)
        rng = np.random.default_rng(7)
        for n in (1, 2, 3):
            A = rng.choice([-1, 1], size=1 << n)
            B = rng.choice([-1, 1], size=1 << n)
            self.assertAlmostEqual(forrelation_accept_probability(join_tables(A, B), n),
                                   (1 + forrelation_value(A, B)) / 2, places=9)
        print("✓ 接受概率为 (1+Φ)/2")


class TestParity(unittest.TestCase):
    """PARITY∘f 程序与指针归约"""

    def test_reduction(self):
        print("\n=== 测试奇偶归约 ===")
        for X in product((0, 1), repeat=3):
            fn, bits = parity_reduction_instance(list(X))
            self.assertEqual(fn.evaluate(bits), sum(X) % 2)
            self.assertEqual(chain_parity(list(X)), sum(X) % 2)
        # 整数下标按小端展开，须给出长度
        fn, bits = parity_reduction_instance(0b101, length=3)
        self.assertEqual(fn.evaluate(bits), 0)
        self.assertEqual(chain_parity(0b100, length=3), 1)
        with self.assertRaises(ArityMismatch):
            parity_reduction_instance(5)
        print("✓ 链终点奇偶等于 PARITY(X)")

    def test_joint_parity_program(self):
        program = parity_parallel_program(3, 3, DJQuantumSolver(4), 4)
        self.assertEqual(program.method(), "joint")
        joint = program.joint_program()
        self.assertEqual(joint.rounds, 1)
        self.assertEqual(joint.parallelism, 3)
        self.assertEqual(joint.layout.qubit_count, 6)
        for text, expected in (("0000" "1100" "1010", 0), ("0000" "0000" "0110", 1)):
            x = to_bits(text, 12)
            self.assertAlmostEqual(program.one_probability(x), float(expected), places=9)
            self.assertAlmostEqual(program.product_one_probability(x), float(expected),
                                   places=9)
        with mock.patch.dict(os.environ, {"QPAR_MAX_QUBITS": "4"}):
            self.assertEqual(program.method(), "product")
        print("✓ 整体程序与乘积组合一致")

    def test_ana_program(self):
        fn = make_ana("dj", 4, 2, 2)
        program = ana_quantum_program(fn)
        zero = np.concatenate([encode_pointers([0, 1, 2, 3], 4), to_bits("0000", 4)])
        one = np.concatenate([encode_pointers([1, 1, 0, 0], 4), to_bits("1000", 4)])
        self.assertEqual(fn.evaluate(zero), 0)
        self.assertEqual(fn.evaluate(one), 1)
        self.assertAlmostEqual(program.one_probability(zero, fn.arity), 0.0)
        self.assertAlmostEqual(program.one_probability(one, fn.arity), 1.0)
        rng = make_rng(5)
        self.assertEqual([program.sample(zero, rng, fn.arity) for _ in range(4)], [0] * 4)
        self.assertEqual([program.sample(one, rng, fn.arity) for _ in range(4)], [1] * 4)
        self.assertTrue(all(q >= 8 for q in program.query_range()))
        with self.assertRaises(ParallelismTooSmall):
            ana_quantum_program(fn, p=1)
        print(f"✓ ANA 一轮程序只查询奇偶部分，并行度 {program.parallelism}")


class TestHybrid(unittest.TestCase):
    """混合轮次算法"""

    def test_cheatsheet_three_rounds(self):
        print("\n=== 测试作弊表三轮算法 ===")
        fn = make_canonical_cheatsheet(make_dj(2), c=1, blocks=2, block_size=2)
        layout = fn.structure.layout
        yes = build_yes_input(fn, to_bits("10100000", 8))
        empty = np.zeros(fn.arity, dtype=np.uint8)
        empty[:8] = yes[:8]
        algo = cheatsheet_quantum_3round(fn, p=layout.cell_size)
        t = algo.run(yes, seed=3)
        self.assertTrue(t.correct)
        self.assertEqual(t.round_count, 3)
        self.assertLessEqual(t.max_parallelism, layout.cell_size)
        self.assertEqual(algo.success_rate([yes, empty], seed=0), 1.0)
        with self.assertRaises(ParallelismTooSmall):
            cheatsheet_quantum_3round(fn, p=layout.cell_size - 1)
        print("✓ 三轮：量子地址、读格子、验证证书")

    def test_two_adaptive_two_rounds(self):
        fn = make_two_adaptive(make_dj(2), n=2, segments=1)
        algo = two_adaptive_quantum(fn)
        instances = sample_hard_instances(fn, 20, seed=4)
        self.assertEqual(algo.run(instances[0], seed=1).round_count, 2)
        self.assertEqual(algo.success_rate(instances, seed=4), 1.0)
        print("✓ 精确 DJ 求解器下两轮算法总是正确")


if __name__ == "__main__":
    unittest.main(verbosity=2)
