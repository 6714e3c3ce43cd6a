#!/usr/bin/env python3
"""对抗矩阵与并行下界单元测试

验证并行对抗比值、块对角分解、最近邻限制下界、组合对抗界与证书壁垒、
对称函数与读一次公式的见证矩阵，以及 COR 的张量积。
"""

import os
import sys
import unittest

import numpy as np

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from src.qpar.adversary import (
    ReadOnceFormula,
    adjacency_adversary,
    barrier_bound,
    block_decompose,
    comb_adv_bound,
    full_relation,
    make_read_once,
    max_comb_bound,
    min_index_ratio,
    nn_lower_bound,
    or_witness_relation,
    parallel_adv_ratio,
    random_nn_adversary,
    random_read_once,
    read_once_lower_bound,
    read_once_restrict,
    reassemble_blocks,
    symmetric_adversary,
    symmetric_prediction,
    symmetric_threshold,
    tensor_adversary,
    weight_profile,
)
from src.qpar.adversary.matrix import from_pairs
from src.qpar.boolfn import (
    from_table,
    make_and,
    make_const,
    make_maj,
    make_or,
    make_parity,
    make_random,
    spectral_sensitivity,
)
from src.qpar.constructions import make_and_or, make_dj
from src.qpar._internal.errors import (
    ArityMismatch,
    ConstantFunction,
    ConstructionFailed,
    EmptyRelation,
    NotNearestNeighbor,
    NotSymmetric,
    NotTotal,
)


class TestRatio(unittest.TestCase):
    """并行对抗比值"""

    def test_single_index_ratio_is_lambda(self):
        print("\n=== 测试 p=1 比值 ===")
        for f in (make_or(2), make_maj(3), make_random(5, seed=1)):
            if f.is_constant():
                continue
            ratio = min_index_ratio(adjacency_adversary(f))
            self.assertAlmostEqual(ratio, spectral_sensitivity(f), places=9)
        print("✓ 邻接矩阵的单下标比值等于 λ(f)")

    def test_full_parallelism(self):
        f = make_maj(3)
        result = parallel_adv_ratio(adjacency_adversary(f), 3)
        self.assertAlmostEqual(result.value, 1.0, places=9)
        self.assertEqual(result.subsets, 1)
        self.assertEqual(result.as_dict()["label"], "witness lower bound")
        print("✓ p = N 时比值为 1")

    def test_sampled_mode(self):
        f = make_random(6, seed=2)
        gamma = adjacency_adversary(f)
        result = parallel_adv_ratio(gamma, 3, mode="sampled", samples=5, seed=1)
        self.assertTrue(result.sampled)
        self.assertLessEqual(result.subsets, 5)
        self.assertIn("heuristic", result.as_dict()["label"])
        exact = parallel_adv_ratio(gamma, 3)
        # 抽样只看部分子集，分母不会更大
        self.assertGreaterEqual(result.value, exact.value - 1e-9)
        with self.assertRaises(ValueError):
            parallel_adv_ratio(gamma, 3, mode="guess")
        print("✓ 抽样模式标注为启发式")

    def test_validate(self):
        f = make_or(2)
        with self.assertRaises(ConstructionFailed):
            from_pairs(f, [(1, 2)])
        gamma = random_nn_adversary(f, seed=3)
        gamma.validate()
        self.assertTrue(gamma.is_nearest_neighbor())
        rows = gamma.to_csv().strip().splitlines()
        self.assertEqual(rows[0], "row_input_hex,col_input_hex,weight")
        self.assertEqual(len(rows), 1 + 2)
        print("✓ 相同输出的输入对被拒绝")


class TestBlocks(unittest.TestCase):
    """最近邻矩阵的块对角分解"""

    def test_decompose_and_reassemble(self):
        print("\n=== 测试块对角分解 ===")
        f = make_random(4, seed=6)
        gamma = random_nn_adversary(f, seed=2)
        S = (0, 2)
        blocks = block_decompose(gamma, S)
        self.assertEqual(len(blocks), 4)
        for block in blocks:
            self.assertEqual(block.matrix.shape, (4, 4))
        again = reassemble_blocks(gamma, blocks)
        self.assertEqual(abs(again.matrix - gamma.gamma_S(S).matrix).max(), 0)
        self.assertAlmostEqual(max(b.norm() for b in blocks), gamma.gamma_S(S).norm(),
                               places=9)
        print("✓ ‖Γ_S‖ 等于最大块范数")

    def test_block_is_restriction_adversary(self):
        f = make_maj(3)
        for block in block_decompose(adjacency_adversary(f), (1,)):
            g = block.restriction.induced()
            expected = adjacency_adversary(g).matrix.toarray()
            self.assertTrue(np.array_equal(block.matrix, expected))
        print("✓ 每块是限制函数的敏感图邻接矩阵")

    def test_not_nearest_neighbor(self):
        f = make_or(2)
        gamma = from_pairs(f, [(0, 3)])
        with self.assertRaises(NotNearestNeighbor):
            block_decompose(gamma, (0,))
        print("✓ 非最近邻矩阵被拒绝")

    def test_nn_lower_bound(self):
        print("\n=== 测试最近邻限制下界 ===")
        self.assertAlmostEqual(nn_lower_bound(make_or(4), 1).value, 2.0, places=9)
        self.assertAlmostEqual(nn_lower_bound(make_or(4), 4).value, 1.0, places=9)
        self.assertEqual(nn_lower_bound(make_const(3, 0), 2).value, 0.0)
        result = nn_lower_bound(make_parity(4), 2)
        self.assertAlmostEqual(result.value, 2.0, places=9)
        self.assertIsNotNone(result.as_dict()["best_restriction"])
        print("✓ OR_4: 2 (p=1)，PARITY_4: 2 (p=2)")


class TestCombinatorial(unittest.TestCase):
    """组合对抗方法与证书壁垒"""

    def test_or_witness(self):
        print("\n=== 测试组合对抗界 ===")
        self.assertAlmostEqual(comb_adv_bound(or_witness_relation(8, make_or(8)), 2), 2.0)
        self.assertAlmostEqual(comb_adv_bound(or_witness_relation(4, make_or(4)), 1), 2.0)
        print("✓ OR_n 见证关系给出 √(n/p)")

    def test_relation_weights(self):
        rw = full_relation(make_and(2))
        self.assertEqual(rw.Y, [3])
        self.assertEqual(rw.m, 1)
        self.assertEqual(rw.m_prime, 3)
        self.assertEqual(rw.ell(1)[0], 1)
        self.assertEqual(rw.ell_prime(1)[0], 2)
        # AND_2：0 侧 x=0 仅与 y=3 相关；y=3 与 {0,1,2} 相关，其中 x_0 不同的是 0 和 2
        self.assertEqual(rw.w_S(0, 0, [0]), 1)
        self.assertEqual(rw.w_S(1, 3, [0]), 2)
        self.assertEqual(rw.w_S(1, 3, [0, 1]), rw.w(1, 3))
        with self.assertRaises(EmptyRelation):
            or_witness_relation(0, make_or(2))
        print("✓ w、m、ℓ 的计数")

    def test_barrier(self):
        print("\n=== 测试证书壁垒 ===")
        f = make_and_or(2, 2)
        self.assertAlmostEqual(barrier_bound(f, 2), 1.0)
        self.assertAlmostEqual(barrier_bound(f, 1), 2.0)
        self.assertAlmostEqual(barrier_bound(make_or(4), 1), 2.0)
        with self.assertRaises(NotTotal):
            barrier_bound(make_dj(2), 1)
        print("✓ √(⌈C0/p⌉·⌈C1/p⌉)")

    def test_comb_within_barrier(self):
        for f in (make_and_or(2, 2), make_maj(3), make_random(3, seed=5)):
            if f.is_constant():
                continue
            for p in (1, 2):
                best = max_comb_bound(f, p)
                self.assertLessEqual(best.value, barrier_bound(f, p) + 1e-9)
        print("✓ 候选关系上的最大组合界不超过壁垒")


class TestSymmetric(unittest.TestCase):
    """对称函数"""

    def test_profile_and_threshold(self):
        print("\n=== 测试对称函数 ===")
        self.assertEqual(weight_profile(make_maj(3)), (0, 0, 1, 1))
        self.assertEqual(symmetric_threshold((0, 0, 1, 1)), (1, False))
        self.assertEqual(symmetric_threshold((0, 0, 0, 1)), (0, True))
        with self.assertRaises(NotSymmetric):
            weight_profile(from_table([0, 1, 0, 0]))
        with self.assertRaises(ConstantFunction):
            symmetric_threshold((1, 1, 1))
        print("✓ 权重轮廓与阈值")

    def test_or_witness_matches_prediction(self):
        t, gamma = symmetric_adversary(make_or(4))
        self.assertEqual(t, 0)
        gamma.validate()
        ratio = parallel_adv_ratio(gamma, 1).value
        self.assertAlmostEqual(ratio, symmetric_prediction(4, t, 1), places=9)
        print(f"✓ OR_4 比值 {ratio:.3f}")

    def test_majority_within_prediction(self):
        f = make_maj(5)
        t, gamma = symmetric_adversary(f)
        for p in (1, 2):
            ratio = parallel_adv_ratio(gamma, p).value
            self.assertGreaterEqual(ratio, 0.5 * symmetric_prediction(5, t, p))
        print("✓ MAJ_5 比值不低于预测的一半")


class TestTensorAndReadOnce(unittest.TestCase):
    """COR 张量积与读一次公式"""

    def test_tensor_norm(self):
        print("\n=== 测试张量积 ===")
        gf = adjacency_adversary(make_and(2))
        gg = adjacency_adversary(make_or(2))
        tensor = tensor_adversary(gf, gg)
        self.assertEqual(tensor.arity, 4)
        self.assertAlmostEqual(tensor.norm(), gf.norm() * gg.norm(), places=9)
        print(f"✓ ‖Γf⊗Γg‖ = {tensor.norm():.3f}")

    def test_read_once_function(self):
        print("\n=== 测试读一次公式 ===")
        f = make_read_once("(x1|x2)&(x3|x4)")
        self.assertTrue(np.array_equal(f.outputs(), make_and_or(2, 2).outputs()))
        formula = ReadOnceFormula.parse("(x1|x2)&(x3|!x4)")
        self.assertEqual(formula.evaluate([0, 1, 0, 0]), 1)
        self.assertEqual(read_once_restrict(formula, [0, 1], {2: 1, 3: 0}).text(), "x1|x2")
        self.assertEqual(read_once_restrict(formula, [0, 1], [1, 0]).text(), "x1|x2")
        # x3=0、x4=1 使子句 x3|!x4 为 0
        self.assertEqual(read_once_restrict(formula, [0, 1], [0, 1]).constant, 0)
        with self.assertRaises(ArityMismatch):
            read_once_restrict(formula, [0, 1], {2: 1})
        self.assertEqual(formula.restrict({0: 0, 1: 0}).constant, 0)
        with self.assertRaises(ConstructionFailed):
            ReadOnceFormula.parse("x1&x1")
        print("✓ 求值、限制与化简")

    def test_read_once_bound(self):
        self.assertAlmostEqual(
            read_once_lower_bound(ReadOnceFormula.parse("x1|x2|x3|x4"), 1).value, 2.0,
            places=9)
        for seed in range(3):
            formula = random_read_once(5, seed=seed)
            self.assertEqual(formula.variables(), (0, 1, 2, 3, 4))
            self.assertGreaterEqual(read_once_lower_bound(formula, 2).value, 1.0 - 1e-9)
        print("✓ 随机读一次公式的下界")


if __name__ == "__main__":
    unittest.main(verbosity=2)
