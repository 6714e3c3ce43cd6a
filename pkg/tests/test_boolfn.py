#!/usr/bin/env python3
"""布尔函数核心单元测试

验证求值、定义域、证书复杂度、块敏感度、谱敏感度、限制、复合与描述格式。
"""

import os
import sys
import unittest
from itertools import product
from math import sqrt

import numpy as np

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from src.qpar.boolfn import (
    block_sensitivity,
    certificate_complexity,
    compose,
    enumerate_restrictions,
    from_descriptor,
    from_table,
    make_and,
    make_const,
    make_maj,
    make_or,
    make_parity,
    make_random,
    minimal_certificate,
    parse_function_expr,
    restrict,
    spectral_sensitivity,
    to_bits,
    to_descriptor,
)
from src.qpar.boolfn.measures import SensitivityGraph
from src.qpar.boolfn.registry import get_generator_registry, reset_generator_registry
from src.qpar.constructions import make_and_or, make_dj, make_forrelation
from src.qpar._internal.errors import (
    ArityMismatch,
    IndexOutOfRange,
    OutOfDomain,
    OverlapError,
    UnknownGenerator,
)
from src.qpar._internal.linalg import dense_spectral_norm


class TestEvaluate(unittest.TestCase):
    """求值与定义域"""

    def test_and_examples(self):
        print("\n=== 测试 AND_3 求值 ===")
        f = make_and(3)
        self.assertEqual(f.evaluate("111"), 1)
        self.assertEqual(f.evaluate("101"), 0)
        self.assertEqual(f.domain_size(), 8)
        print("✓ AND_3(111)=1, AND_3(101)=0")

    def test_out_of_domain(self):
        print("\n=== 测试定义域外输入 ===")
        dj = make_dj(4)
        self.assertEqual(dj.evaluate("0000"), 0)
        self.assertEqual(dj.evaluate("0101"), 1)
        with self.assertRaises(OutOfDomain):
            dj.evaluate("0001")

        # n=1 时 X≡+1、Y=(-1,+1) 给出 Φ = -1/√2，不满足任一承诺
        forr = make_forrelation(1)
        with self.assertRaises(OutOfDomain):
            forr.evaluate("0010")
        print("✓ DJ 与 Forrelation 的承诺外输入被拒绝")

    def test_wrong_length(self):
        with self.assertRaises(ArityMismatch):
            make_and(3).evaluate("11")
        print("✓ 长度不符抛出 ArityMismatch")

    def test_index_is_little_endian(self):
        bits = to_bits(6, 3)
        self.assertEqual(bits.tolist(), [0, 1, 1])
        print("✓ 下标按 Σ x_i·2^i 编码")


class TestMeasures(unittest.TestCase):
    """证书复杂度、块敏感度与谱敏感度"""

    def test_certificate_complexity(self):
        print("\n=== 测试证书复杂度 ===")
        and4 = make_and(4)
        self.assertEqual(certificate_complexity(and4, 1), 4)
        self.assertEqual(certificate_complexity(and4, 0), 1)
        and_or = make_and_or(2, 2)
        self.assertEqual(certificate_complexity(and_or, 0), 2)
        self.assertEqual(certificate_complexity(and_or, 1), 2)
        self.assertEqual(certificate_complexity(make_parity(3), "max"), 3)
        print("✓ C(AND_4), C(AND∘OR), C(PARITY_3) 正确")

    def test_minimal_certificate_forces_value(self):
        f = make_and_or(2, 2)
        x = to_bits("0111", 4)
        cert = minimal_certificate(f, x)
        known = {i: int(x[i]) for i in cert}
        self.assertEqual(f.partial_outcomes(known), frozenset({f.evaluate(x)}))
        self.assertEqual(len(cert), 2)
        print(f"✓ 最小证书 {cert} 迫使输出")

    def test_block_sensitivity(self):
        print("\n=== 测试块敏感度 ===")
        self.assertEqual(block_sensitivity(make_parity(3)), 3)
        self.assertEqual(block_sensitivity(make_or(4), x="0000"), 4)
        and_or = make_and_or(2, 2)
        self.assertEqual(block_sensitivity(and_or, side=0), 2)
        self.assertEqual(block_sensitivity(and_or, side=1), 2)
        value, _, blocks = block_sensitivity(and_or, side=1, return_blocks=True)
        self.assertEqual(len(blocks), value)
        flat = [i for b in blocks for i in b]
        self.assertEqual(len(flat), len(set(flat)))
        print("✓ bs(PARITY_3)=3, bs_0000(OR_4)=4, bs_b(AND∘OR)=2")

    def test_spectral_sensitivity(self):
        print("\n=== 测试谱敏感度 ===")
        self.assertEqual(spectral_sensitivity(make_const(3, 1)), 0.0)
        self.assertAlmostEqual(spectral_sensitivity(make_or(2)), sqrt(2), places=9)
        self.assertAlmostEqual(spectral_sensitivity(make_parity(2)), 2.0, places=9)
        print("✓ λ(const)=0, λ(OR_2)=√2, λ(PARITY_2)=2")

    def test_spectral_matches_dense(self):
        for seed in range(5):
            f = make_random(6, seed=seed)
            if f.is_constant():
                continue
            graph = SensitivityGraph.of(f)
            dense = dense_spectral_norm(graph.adjacency().toarray())
            self.assertAlmostEqual(spectral_sensitivity(f), dense, places=9)
        print("✓ 稀疏求解与稠密特征分解一致")

    def test_measure_invariants(self):
        print("\n=== 测试测度不变量 ===")
        corpus = [make_maj(5), make_and_or(2, 2)]
        corpus += [make_random(n, seed=s) for n in (3, 4, 5) for s in range(3)]
        for f in corpus:
            if f.is_constant():
                continue
            self.assertLessEqual(block_sensitivity(f), certificate_complexity(f))
            lam = spectral_sensitivity(f)
            self.assertGreaterEqual(lam, 1.0 - 1e-9)
            self.assertLessEqual(lam, f.arity + 1e-9)
        print(f"✓ {len(corpus)} 个函数满足 bs ≤ C 与 1 ≤ λ ≤ N")

    def test_sensitivity_graph_edges(self):
        f = make_maj(3)
        graph = SensitivityGraph.of(f)
        values, _ = f.table_arrays()
        for u, v in graph.edges.tolist():
            self.assertEqual(bin(u ^ v).count("1"), 1)
            self.assertNotEqual(values[u], values[v])
        adj = graph.adjacency()
        self.assertEqual(abs(adj - adj.T).sum(), 0)
        print("✓ 敏感图对称，边为输出不同的汉明邻居")

    def test_materialize(self):
        f = make_and_or(2, 2)
        self.assertFalse(f.is_table)
        g = f.materialize()
        self.assertTrue(g.is_table)
        self.assertIs(g.materialize(), g)
        self.assertEqual(g.name, f.name)
        self.assertEqual(g.block_meta, f.block_meta)
        self.assertTrue(np.array_equal(f.outputs(), g.outputs()))
        print("✓ 生成器物化为真值表，名称与块元数据保留")


class TestRestrictCompose(unittest.TestCase):
    """限制与复合"""

    def test_restrict_examples(self):
        print("\n=== 测试限制 ===")
        and3 = make_and(3)
        ident = restrict(and3, [0], [1, 1])
        self.assertEqual([ident.evaluate(z) for z in range(2)], [0, 1])
        zero = restrict(and3, [0], [1, 0])
        self.assertTrue(zero.is_constant())
        self.assertEqual(zero.evaluate(1), 0)
        # 自由块为第一个 OR 块，另一块取 01
        or2 = restrict(make_and_or(2, 2), [0, 1], [0, 1])
        self.assertEqual([or2.evaluate(z) for z in range(4)], [0, 1, 1, 1])
        print("✓ 限制得到恒等、常 0 与 OR_2")

    def test_restrict_errors(self):
        f = make_and(3)
        with self.assertRaises(IndexOutOfRange):
            restrict(f, [5], [1, 1])
        with self.assertRaises(OverlapError):
            restrict(f, [0], {0: 1, 1: 1, 2: 1})
        print("✓ 越界与重叠被拒绝")

    def test_restrict_then_evaluate(self):
        f = make_random(5, seed=11)
        for restriction, _ in enumerate_restrictions(f, 2):
            g = restriction.induced()
            for z in range(4):
                self.assertEqual(g.evaluate(z), f.evaluate(restriction.complete(z)))
        print("✓ 限制后求值等于补全后求值")

    def test_enumeration_count(self):
        f = make_random(4, seed=2)
        count = sum(1 for _ in enumerate_restrictions(f, 2))
        self.assertEqual(count, 6 * 4)
        print("✓ 限制个数为 C(N,p)·2^{N-p}")

    def test_compose_examples(self):
        print("\n=== 测试复合 ===")
        and_or = compose(make_and(2), make_or(2))
        self.assertTrue(np.array_equal(and_or.outputs(), make_and_or(2, 2).outputs()))
        self.assertEqual(int(make_and_or(2, 2).outputs().sum()), 9)
        par = compose(make_parity(2), make_parity(2))
        self.assertTrue(np.array_equal(par.outputs(), make_parity(4).outputs()))
        print("✓ AND_2∘OR_2 = AND∘OR，PARITY_2∘PARITY_2 = PARITY_4")

    def test_compose_pointwise(self):
        f, g = make_maj(3), make_random(3, seed=4)
        h = compose(f, g)
        for x in product((0, 1), repeat=9):
            bits = np.array(x, dtype=np.uint8)
            inner = [g.evaluate(bits[3 * j:3 * j + 3]) for j in range(3)]
            self.assertEqual(h.evaluate(bits), f.evaluate(inner))
        print("✓ 复合逐点等于外层作用于内层取值")

    def test_partial_compose_domain(self):
        h = compose(make_parity(2), make_dj(2))
        _, mask = h.table_arrays()
        self.assertEqual(int(mask.sum()), 3 * 3)
        print("✓ 部分函数复合的定义域为内层定义域之积")


class TestDescriptor(unittest.TestCase):
    """描述文本与表达式"""

    def test_generator_round_trip(self):
        print("\n=== 测试描述文本 ===")
        f = make_and_or(2, 2)
        text = to_descriptor(f)
        self.assertTrue(text.startswith("arity 4\nkind and-or\n"))
        g = from_descriptor(text)
        self.assertTrue(np.array_equal(f.outputs(), g.outputs()))
        print(f"✓ 生成器描述往返: {text.splitlines()[1]}")

    def test_table_descriptor(self):
        f = from_table([0, 1, 1, 0], domain=[1, 1, 1, 0], name="xorish")
        g = from_descriptor(to_descriptor(f, table=True))
        self.assertEqual(g.domain_size(), 3)
        self.assertEqual(g.evaluate("10"), 1)
        with self.assertRaises(OutOfDomain):
            g.evaluate("11")
        print("✓ 真值表描述保留定义域")

    def test_function_valued_params(self):
        f = parse_function_expr("cor(f=and(n=2),g=or(n=2))")
        self.assertEqual(f.arity, 4)
        again = from_descriptor(to_descriptor(f))
        self.assertEqual(again.spec_expr(), f.spec_expr())
        print(f"✓ 函数值参数: {f.spec_expr()}")

    def test_unknown_generator(self):
        with self.assertRaises(UnknownGenerator):
            parse_function_expr("nope(n=2)")
        print("✓ 未知生成器被拒绝")

    def test_registry_reset(self):
        before = get_generator_registry().names()
        self.assertIn("read-once", before)
        reset_generator_registry()
        self.assertEqual(get_generator_registry().names(), before)
        f = get_generator_registry().build("and", {"n": 2})
        self.assertEqual(f.evaluate("11"), 1)
        print(f"✓ 重置后注册表重新填充 {len(before)} 个生成器")


if __name__ == "__main__":
    unittest.main(verbosity=2)
