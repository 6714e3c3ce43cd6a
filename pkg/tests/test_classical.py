#!/usr/bin/env python3
"""p-并行经典查询模型单元测试

验证运行器、精确求解器、最优对手、指针追踪、COR、作弊表算法、
2-Adaptive 随机算法、复合策略、k-SUM 提升与星号统计。
"""

import os
import sys
import unittest
from itertools import permutations

import numpy as np

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from src.qpar.boolfn import compose, make_and, make_const, make_or, make_parity, to_bits
from src.qpar.classical import (
    Decision,
    MinimaxAdversary,
    Positions,
    QueryStrategy,
    ReadAll,
    Sequential,
    build_ksum_lift,
    checked_completion,
    cheatsheet_parallel_algorithm,
    cheatsheet_sequential_algorithm,
    composition_strategy,
    distinguishing_advantage,
    distributional_success,
    dt_tables,
    exact_parallel_D,
    fixed_bicert_distribution,
    hybrid_distribution,
    optimal_transcript,
    pointer_adversary,
    pointer_det_algorithm,
    run_strategy,
    sample_hard_instances,
    star_query_count,
    star_statistics,
    two_adaptive_rand_algorithm,
    two_adaptive_success,
)
from src.qpar.classical.cor import uniform_on
from src.qpar.classical.lifting import ksum_lift_values
from src.qpar.constructions import (
    encode_pointers,
    make_canonical_cheatsheet,
    make_cor,
    make_dj,
    make_pointer,
    make_two_adaptive,
)
from src.qpar.constructions.cheatsheet import build_yes_input
from src.qpar._internal.errors import (
    ArityMismatch,
    BudgetExceeded,
    ConstructionFailed,
    ParallelismTooSmall,
    StrategyViolation,
)


class Greedy(QueryStrategy):
    """每轮请求 p+1 个位置（违规策略）"""

    def decide(self, transcript):
        return Decision.ask(range(self.p + 1))


class TestRunner(unittest.TestCase):
    """运行器与记录"""

    def test_read_all(self):
        print("\n=== 测试 ReadAll ===")
        f = make_and(3)
        t = run_strategy(ReadAll(f, 2), "111", f)
        self.assertEqual(t.round_count, 2)
        self.assertEqual(t.query_count, 3)
        self.assertEqual(t.answer, 1)
        self.assertTrue(t.correct)
        self.assertEqual(t.known(), {0: 1, 1: 1, 2: 1})
        lines = t.to_jsonl().strip().splitlines()
        self.assertEqual(len(lines), 3)
        print("✓ AND_3 两轮读完并输出 1")

    def test_sequential_stops_early(self):
        f = make_or(4)
        t = run_strategy(Sequential(f), "1000", f)
        self.assertEqual(t.round_count, 1)
        self.assertEqual(t.answer, 1)
        print("✓ 输出确定后立即停止")

    def test_violation(self):
        f = make_or(4)
        with self.assertRaises(StrategyViolation):
            run_strategy(Greedy(2), "0000", f)
        with self.assertRaises(StrategyViolation):
            ReadAll(f, 0)
        print("✓ 超出并行度被拒绝")


class TestExactSolver(unittest.TestCase):
    """精确 D^{p∥} 与最优对手"""

    def test_or_and_parity(self):
        print("\n=== 测试精确求解器 ===")
        or4 = make_or(4)
        self.assertEqual(exact_parallel_D(or4, 1), 4)
        self.assertEqual(exact_parallel_D(or4, 2), 2)
        self.assertEqual(exact_parallel_D(or4, 4), 1)
        self.assertEqual(exact_parallel_D(make_parity(4), 3), 2)
        self.assertEqual(exact_parallel_D(make_const(3, 1), 1), 0)
        print("✓ D(OR_4) = ⌈4/p⌉，D(const) = 0")

    def test_optimal_transcript(self):
        t = optimal_transcript(make_or(4), 2)
        self.assertEqual(t.round_count, 2)
        self.assertTrue(all(len(r.indices) <= 2 for r in t.rounds))
        self.assertTrue(t.correct)
        print("✓ 最优策略对最优对手恰好用 D 轮")

    def test_minimax_within_budget(self):
        f = make_or(4)
        adv = MinimaxAdversary.below_optimal(f, 2)
        self.assertEqual(adv.answer((0, 1)), (0, 0))
        positions = Positions.of(f)
        zero = checked_completion(adv, positions, 0)
        one = checked_completion(adv, positions, 1)
        self.assertEqual(f.evaluate(zero), 0)
        self.assertEqual(f.evaluate(one), 1)
        self.assertEqual(one[:2].tolist(), [0, 0])
        with self.assertRaises(BudgetExceeded):
            adv.answer((2, 3))
        print("✓ D-1 轮后两种补全都存在")

    def test_pointer_block_rounds(self):
        print("\n=== 测试指针追踪 ===")
        for k, p in ((1, 1), (2, 1), (2, 2), (1, 2)):
            self.assertEqual(exact_parallel_D(make_pointer(4, k), p, "block"), min(k, 4 // p))
        print("✓ D^{p∥} = min(k, N/p)")

    def test_distributional(self):
        f = make_or(2)
        dist = {0: 0.5, 3: 0.5}
        self.assertAlmostEqual(distributional_success(f, dist, 1, 0), 0.5)
        self.assertAlmostEqual(distributional_success(f, dist, 1, 1), 1.0)
        print("✓ 零轮只能猜多数，一轮读一位即可区分")


class TestPointer(unittest.TestCase):
    """指针追踪算法与对手"""

    def test_det_algorithm(self):
        f = make_pointer(4, 2)
        for perm in permutations(range(4)):
            t = run_strategy(pointer_det_algorithm(4, 2, 1), encode_pointers(perm, 4), f)
            self.assertTrue(t.correct)
            self.assertLessEqual(t.round_count, 2)
        t = run_strategy(pointer_det_algorithm(4, 2, 4), encode_pointers([1, 2, 3, 0], 4), f)
        self.assertEqual(t.round_count, 1)
        print("✓ 逐跳追踪或一次读完")

    def test_adversary_keeps_both_outputs(self):
        f = make_pointer(4, 2)
        adv = pointer_adversary(4, 2, 1)
        self.assertEqual(adv.budget, 1)
        adv.answer((0,))
        for value in (0, 1):
            x = checked_completion(adv, Positions.of(f, "block"), value)
            self.assertEqual(f.evaluate(x), value)
        with self.assertRaises(BudgetExceeded):
            adv.answer((1,))
        print("✓ 预算内链未暴露完")


class TestCor(unittest.TestCase):
    """COR 的上下界与混合分布"""

    def test_sandwich(self):
        print("\n=== 测试 COR 夹逼 ===")
        for f, g in ((make_and(2), make_or(2)), (make_parity(2), make_dj(2))):
            for p in (1, 2):
                low = min(exact_parallel_D(f, p), exact_parallel_D(g, p))
                d = exact_parallel_D(make_cor(f, g), p)
                self.assertLessEqual(low, d)
                self.assertLessEqual(d, 2 * low)
        print("✓ min(D_f, D_g) ≤ D(COR) ≤ 2·min(D_f, D_g)")

    def test_hybrid(self):
        f, g = make_and(2), make_or(2)
        f_dists = (uniform_on(f, 0), uniform_on(f, 1))
        g_dists = (uniform_on(g, 0), uniform_on(g, 1))
        stages = {w: hybrid_distribution(f_dists, g_dists, 2, w) for w in ("p0", "hybrid", "p1")}
        for dist in stages.values():
            self.assertAlmostEqual(sum(dist.values()), 1.0)
        cor = make_cor(f, g)
        for w in ("p0", "p1"):
            self.assertTrue(all(cor.in_domain(to_bits(x, 4)) for x in stages[w]))

        def reads_y(x):
            return int((x >> 2) != 0)

        # hybrid 与 p1 的 y 分量同分布
        self.assertAlmostEqual(
            distinguishing_advantage(reads_y, stages["hybrid"], stages["p1"]), 0.0)
        self.assertAlmostEqual(
            distinguishing_advantage(reads_y, stages["p0"], stages["hybrid"]), 1.0)
        with self.assertRaises(ArityMismatch):
            hybrid_distribution(f_dists, g_dists, 2, "middle")
        print("✓ 只读 y 的统计量区分不了 hybrid 与 P1")


class TestCheatSheetAlgorithms(unittest.TestCase):
    """作弊表算法"""

    def setUp(self):
        self.fn = make_canonical_cheatsheet(make_dj(2), c=1, blocks=2, block_size=2)
        self.layout = self.fn.structure.layout
        address = to_bits("10100000", 8)
        self.yes = build_yes_input(self.fn, address)
        self.empty = np.zeros(self.fn.arity, dtype=np.uint8)
        self.empty[:8] = address

    def test_sequential(self):
        print("\n=== 测试作弊表算法 ===")
        for x in (self.yes, self.empty):
            t = run_strategy(cheatsheet_sequential_algorithm(self.fn), x, self.fn)
            self.assertTrue(t.correct)
        print("✓ 顺序算法正确")

    def test_parallel(self):
        p = self.layout.cell_size
        bound = exact_parallel_D(self.fn.structure.inner, p) + 2
        for x in (self.yes, self.empty):
            t = run_strategy(cheatsheet_parallel_algorithm(self.fn, p), x, self.fn)
            self.assertTrue(t.correct)
            self.assertLessEqual(t.round_count, bound)
        with self.assertRaises(ParallelismTooSmall):
            cheatsheet_parallel_algorithm(self.fn, p - 1)
        print(f"✓ p={p} 时至多 {bound} 轮")


class TestTwoAdaptiveAlgorithms(unittest.TestCase):
    """2-Adaptive 随机算法与分布成功率"""

    def setUp(self):
        self.fn = make_two_adaptive(make_dj(2), n=2, segments=1)

    def test_randomized_two_rounds(self):
        print("\n=== 测试两轮随机算法 ===")
        instances = sample_hard_instances(self.fn, 100, seed=1)
        stats = two_adaptive_success(
            self.fn, lambda: two_adaptive_rand_algorithm(self.fn), instances, seed=1)
        self.assertEqual(stats["max_rounds"], 2)
        self.assertGreaterEqual(stats["success"], 0.6)
        print(f"✓ 成功率 {stats['success']:.2f}")

    def test_randomized_threshold(self):
        threshold = two_adaptive_rand_algorithm(self.fn).threshold
        self.assertEqual(threshold, 24)
        self.assertEqual(two_adaptive_rand_algorithm(self.fn, p=threshold).p, threshold)
        with self.assertRaises(ParallelismTooSmall):
            two_adaptive_rand_algorithm(self.fn, p=threshold - 1)
        print(f"✓ p < {threshold} 时拒绝运行")

    def test_affine_dt_family(self):
        tables = dt_tables(3)
        self.assertEqual(tables.shape, (16, 8))
        # 任意三个位置的取值均匀
        for cols in [(0, 1, 2), (0, 3, 5), (2, 6, 7)]:
            patterns = tables[:, cols] @ np.array([1, 2, 4])
            self.assertEqual(np.bincount(patterns, minlength=8).tolist(), [2] * 8)
        self.assertEqual(dt_tables(1, "uniform").shape, (4, 2))
        with self.assertRaises(ConstructionFailed):
            dt_tables(1, "gray")
        print("✓ 仿射 DT 族三三独立")

    def test_low_parallelism_distribution(self):
        dist = fixed_bicert_distribution(self.fn, seed=0, dt_family="uniform")
        self.assertAlmostEqual(sum(p for _, p in dist), 1.0)
        self.assertAlmostEqual(distributional_success(self.fn, dist, p=1, k=0), 0.5)
        # 一段时读一个 IN 位即可大概率猜中目标
        self.assertAlmostEqual(distributional_success(self.fn, dist, p=1, k=2), 0.875)

        fn = make_two_adaptive(make_dj(2), n=2, segments=5)
        threshold = two_adaptive_rand_algorithm(fn).threshold
        dist = fixed_bicert_distribution(fn, seed=0)
        self.assertEqual(len(dist), 3 ** 5 * 2 ** 6)
        self.assertLess(1, threshold)
        low = distributional_success(fn, dist, p=1, k=2)
        self.assertLessEqual(low, 0.55)
        self.assertGreater(low, 0.5)
        # 先读一个 IN 位，再读最可能的 DT 格
        self.assertAlmostEqual(low, 0.5 + 3 / 128, places=9)
        print(f"✓ 五段、p=1 两轮的最优成功率 {low:.4f} ≤ 0.55")


class TestLifting(unittest.TestCase):
    """复合策略、k-SUM 提升与星号统计"""

    def test_composition(self):
        f, g = make_or(2), make_and(2)
        h = compose(f, g)
        for x in range(1 << h.arity):
            t = run_strategy(composition_strategy(f, g, 2), x, h)
            self.assertTrue(t.correct)
            self.assertLessEqual(t.round_count, 2)
        print("✓ 复合策略在 OR∘AND 上正确")

    def test_ksum_lift(self):
        print("\n=== 测试 k-SUM 提升 ===")
        for seed in range(5):
            y = build_ksum_lift([1, 0, 1], 3, 2, 2, 4, seed=seed)
            self.assertEqual(ksum_lift_values(y, 3, 3, 2, 2, 4), [1, 0, 1])
        with self.assertRaises(ArityMismatch):
            build_ksum_lift([1], 2, 2, 2, 4)
        with self.assertRaises(ArityMismatch):
            build_ksum_lift([1], 3, 2, 2, 2)
        print("✓ 每块 k-SUM 值等于原始位")

    def test_star_statistics(self):
        self.assertEqual(star_query_count(0, 16, 64), 0)
        stats = star_statistics(16, 16, 64, "greedy", trials=200, seed=3)
        self.assertEqual(stats["threshold"], 5.0)
        self.assertEqual(stats["expectation_bound"], 0.5)
        self.assertLessEqual(stats["exceed_probability"], 0.12)
        with self.assertRaises(ConstructionFailed):
            star_query_count(4, 4, 4, strategy="oracle")
        print(f"✓ 超阈概率 {stats['exceed_probability']:.3f}")


if __name__ == "__main__":
    unittest.main(verbosity=2)
