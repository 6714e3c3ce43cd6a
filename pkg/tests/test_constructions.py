#!/usr/bin/env python3
"""函数构造族单元测试

覆盖 k-SUM 族、指针追踪、COR、Forrelation、证书编码、双证书、
作弊表与 2-Adaptive-F 的求值与布局。
"""

import os
import sys
import unittest

import numpy as np

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from src.qpar.boolfn import make_and, make_or, to_bits
from src.qpar.constructions import (
    Bicertificate,
    Certificate,
    TwoAdaptiveLayout,
    build_block_sensitivity_witness,
    build_two_adaptive_instance,
    encode_pointers,
    forrelation_value,
    make_and_or,
    make_block_ksum,
    make_canonical_cheatsheet,
    make_cor,
    make_dj,
    make_forrelation,
    make_ksum,
    make_pointer,
    make_two_adaptive,
)
from src.qpar.constructions.cheatsheet import build_yes_input, cheatsheet_of
from src.qpar.constructions.forrelation import forrelation_direct, join_tables
from src.qpar.constructions.two_adaptive import two_adaptive_of
from src.qpar._internal.errors import (
    ArityMismatch,
    ConstructionFailed,
    IndexOutOfRange,
    OutOfDomain,
)


class TestFamilies(unittest.TestCase):
    """k-SUM、指针追踪与 COR"""

    def test_ksum(self):
        print("\n=== 测试 k-SUM ===")
        f = make_ksum(3, 2, 2, 4)
        # 块值 1, 3, 2：1+3 ≡ 0 (mod 4)
        self.assertEqual(f.evaluate("101101"), 1)
        self.assertEqual(f.evaluate("000000"), 1)
        self.assertEqual(make_ksum(2, 2, 2, 4).evaluate("1010"), 0)
        with self.assertRaises(ArityMismatch):
            make_ksum(2, 3, 2, 4)
        print("✓ k-SUM 求值与参数检查")

    def test_block_ksum(self):
        f = make_block_ksum(3, 2, 2, 4)
        self.assertEqual(f.evaluate("110101"), 1)
        # 块 00 的 1 少于一半
        self.assertEqual(f.evaluate("000101"), 0)
        with self.assertRaises(ArityMismatch):
            make_block_ksum(3, 2, 3, 4)
        print("✓ Block k-SUM：非平衡块多数为 1 才可能输出 1")

    def test_batch_matches_evaluator(self):
        for f in (make_ksum(3, 2, 2, 4), make_block_ksum(3, 2, 2, 4), make_pointer(4, 2)):
            table = f.outputs()
            for idx in range(0, 1 << f.arity, 7):
                self.assertEqual(int(table[idx]), f.evaluate(idx))
        print("✓ 批量求值与逐点求值一致")

    def test_pointer(self):
        print("\n=== 测试指针追踪 ===")
        f = make_pointer(4, 1)
        self.assertEqual(f.evaluate(encode_pointers([0, 1, 2, 3], 4)), 0)
        self.assertEqual(f.evaluate(encode_pointers([3, 0, 0, 0], 4)), 1)
        g = make_pointer(4, 2)
        self.assertEqual(g.evaluate(encode_pointers([1, 2, 0, 0], 4)), 0)
        with self.assertRaises(ArityMismatch):
            make_pointer(3, 1)
        print("✓ X^k(0) 的最低位")

    def test_cor(self):
        print("\n=== 测试 COR ===")
        f = make_cor(make_and(2), make_or(2))
        self.assertEqual(f.evaluate("1110"), 1)
        self.assertEqual(f.evaluate("0000"), 0)
        with self.assertRaises(OutOfDomain):
            f.evaluate("1100")
        # 1·3 + 3·1
        self.assertEqual(f.domain_size(), 6)
        print("✓ COR 定义域为 f(x)=g(y) 的输入对")


class TestForrelation(unittest.TestCase):
    """Forrelation 取值"""

    def test_values(self):
        print("\n=== 测试 Φ ===")
        X = [1, 1, 1, -1]
        self.assertAlmostEqual(forrelation_value(X, X), 1.0, places=12)
        self.assertAlmostEqual(forrelation_value(X, [1, 1, -1, 1]), 0.0, places=12)
        self.assertAlmostEqual(forrelation_value([1, 1], [1, 1]), 2 ** -0.5, places=12)
        print("✓ Φ=1、Φ=0 与 n=1 的 1/√2")

    def test_fast_matches_direct(self):
        rng = np.random.default_rng(3)
        for n in (1, 2, 3):
            for _ in range(5):
                X = rng.choice([-1, 1], size=1 << n)
                Y = rng.choice([-1, 1], size=1 << n)
                self.assertAlmostEqual(forrelation_value(X, Y), forrelation_direct(X, Y),
                                       places=10)
        print("✓ 快速 Walsh-Hadamard 与二重求和一致")

    def test_promise(self):
        f = make_forrelation(2)
        X = [1, 1, 1, -1]
        self.assertEqual(f.evaluate(join_tables(X, X)), 1)
        self.assertEqual(f.evaluate(join_tables(X, [1, 1, -1, 1])), 0)
        with self.assertRaises(ArityMismatch):
            forrelation_value([1, 0], [1, 1])
        print("✓ YES/NO 实例分类")


class TestCertificates(unittest.TestCase):
    """证书与双证书"""

    def test_certificate_codec(self):
        print("\n=== 测试证书编码 ===")
        x = [1, 0, 1]
        cert = Certificate.from_input(x, [0, 2])
        self.assertTrue(cert.matches(x))
        self.assertFalse(cert.matches([0, 0, 1]))
        size = Certificate.cell_size_for(3)
        self.assertEqual(Certificate.decode(cert.encode(size), 3), cert)
        # 条目数为 0 的格子不是证书
        self.assertIsNone(Certificate.decode(np.zeros(size, dtype=np.uint8), 3))
        print(f"✓ 格子大小 {size}")

    def test_certificate_errors(self):
        with self.assertRaises(IndexOutOfRange):
            Certificate(((5, 1),), 3)
        with self.assertRaises(ConstructionFailed):
            Certificate(((0, 1), (0, 0)), 3)
        cert = Certificate.from_input([1, 1, 1], [0, 1, 2])
        with self.assertRaises(ConstructionFailed):
            cert.encode(Certificate.cell_size_for(3, entries=2))
        print("✓ 越界、重复与超容量被拒绝")

    def test_bicertificate(self):
        print("\n=== 测试双证书 ===")
        bc = Bicertificate.build(0, [1, 0], 2, 2)
        self.assertEqual(bc.zero_part, (0, 1))
        self.assertEqual(bc.one_part, (1, 2))
        self.assertTrue(bc.is_valid())
        self.assertEqual(bc.intersection(), 1)
        self.assertEqual(bc.certified_value([0, 0, 1, 0]), 0)
        self.assertEqual(bc.certified_value([1, 1, 1, 0]), 1)
        self.assertIsNone(bc.certified_value([1, 0, 0, 1]))
        self.assertEqual(Bicertificate.decode(bc.encode(), 2, 2), bc)
        self.assertEqual(len(bc.encode()), Bicertificate.encoded_bits(2, 2))
        print("✓ 交点唯一、证明值正确")

    def test_invalid_bicertificate(self):
        bad = Bicertificate((0, 1), (0, 1), 2, 2)
        self.assertFalse(bad.is_valid())
        with self.assertRaises(ConstructionFailed):
            Bicertificate((0, 1), (2, 3), 2, 2).intersection()
        print("✓ one_part 未覆盖全部块时无效")


class TestCheatSheet(unittest.TestCase):
    """规范作弊表"""

    def setUp(self):
        self.fn = make_canonical_cheatsheet(make_dj(2), c=1, blocks=2, block_size=2)
        self.sheet = cheatsheet_of(self.fn)
        # 第一份 AND∘OR 为 1，第二份为 0：DJ(10) = 1
        self.address = to_bits("10100000", 8)

    def test_layout(self):
        print("\n=== 测试作弊表布局 ===")
        layout = self.sheet.layout
        self.assertEqual(layout.address_bits, 8)
        self.assertEqual(layout.cell_size, 48)
        self.assertEqual(layout.total_bits, 8 + 2 * 48)
        self.assertEqual(self.fn.arity, layout.total_bits)
        print(f"✓ 总位数 {layout.total_bits}")

    def test_statuses(self):
        print("\n=== 测试作弊表求值 ===")
        yes = build_yes_input(self.fn, self.address)
        self.assertEqual(self.sheet.status(yes), (1, "ok"))
        self.assertEqual(self.fn.evaluate(yes), 1)

        empty = np.zeros(self.fn.arity, dtype=np.uint8)
        empty[:8] = self.address
        self.assertEqual(self.sheet.status(empty), (0, "empty-cell"))

        outside = np.zeros(self.fn.arity, dtype=np.uint8)
        outside[:8] = 1
        self.assertEqual(self.sheet.status(outside), (0, "domain"))

        # 第 1 位翻转后 OR 块仍为 1，地址不变但证书不再匹配
        flipped = yes.copy()
        flipped[1] ^= 1
        self.assertEqual(self.sheet.status(flipped), (0, "mismatch"))

        weak = build_yes_input(self.fn, self.address, cert_indices=[0])
        self.assertEqual(self.sheet.status(weak), (0, "unforced"))
        print("✓ ok / empty-cell / domain / mismatch / unforced")

    def test_yes_input_needs_domain(self):
        with self.assertRaises(ConstructionFailed):
            build_yes_input(self.fn, np.ones(8, dtype=np.uint8))
        print("✓ 地址不在定义域内时拒绝构造")

    def test_block_sensitivity_witness(self):
        print("\n=== 测试块敏感度见证 ===")
        witness = build_block_sensitivity_witness(make_dj(2), make_and_or(2, 2), c=1)
        self.assertTrue(witness.verify())
        self.assertEqual(len(witness.cases), len(witness.blocks))
        self.assertEqual(set(witness.cases), {"domain", "cell", "certificate"})
        flat = [i for b in witness.blocks for i in b]
        self.assertEqual(len(flat), len(set(flat)))
        self.assertGreaterEqual(len(witness.blocks), 4)
        print(f"✓ {len(witness.blocks)} 个不交敏感块")


class TestTwoAdaptive(unittest.TestCase):
    """2-Adaptive-F"""

    def setUp(self):
        self.fn = make_two_adaptive(make_dj(2), n=2, segments=1)
        self.structure = two_adaptive_of(self.fn)

    def test_layout(self):
        print("\n=== 测试 2-Adaptive 布局 ===")
        layout = TwoAdaptiveLayout.of(2, 1)
        self.assertEqual(layout.add_bits, 8)
        self.assertEqual(layout.bc_bits, 16)
        self.assertEqual(layout.dt_bits, 2)
        self.assertEqual(layout.total_bits, 26)
        self.assertEqual(self.fn.arity, 26)
        self.assertEqual(TwoAdaptiveLayout.of(4).segments, 6)
        with self.assertRaises(ArityMismatch):
            TwoAdaptiveLayout.of(3)
        print("✓ ADD 8 + BC 16 + DT 2 = 26")

    def test_offset_map_tiles(self):
        layout = TwoAdaptiveLayout.of(2, 2)
        rows = sorted(layout.offset_map(), key=lambda r: r[4])
        pos = 0
        for row in rows:
            self.assertEqual(row[4], pos)
            pos += row[5]
        self.assertEqual(pos, layout.total_bits)
        csv_text = layout.offset_map_csv()
        self.assertTrue(csv_text.startswith("region,i,j,k,bit_start,bit_len\n"))
        self.assertEqual(len(csv_text.strip().splitlines()), len(rows) + 1)
        print("✓ 偏移表无缝覆盖全部输入位")

    def test_instance_values(self):
        print("\n=== 测试困难实例 ===")
        x = build_two_adaptive_instance(self.fn, [[1, 0]], dt=[0, 1], seed=5)
        self.assertEqual(self.structure.in_row(x, 0), [1, 0])
        self.assertEqual(self.structure.status(x), (1, "ok"))
        y = build_two_adaptive_instance(self.fn, [[1, 0]], dt=[1, 0], seed=5)
        self.assertEqual(self.structure.status(y), (0, "dt-zero"))
        self.assertTrue(self.structure.conditions_hold(y))
        print("✓ DT[TG] 决定输出")

    def test_broken_instances(self):
        x = build_two_adaptive_instance(self.fn, [[1, 0]], dt=[1, 1], seed=2)

        no_bc = x.copy()
        no_bc[self.structure.layout.bc_start:self.structure.layout.dt_start] = 0
        self.assertEqual(self.structure.status(no_bc), (0, "invalid-bicert"))

        bc = self.structure.bicertificate(x, 0, 0)
        loc = next(loc for loc in bc.one_part if loc != bc.intersection())
        uncertified = x.copy()
        uncertified[self.structure.layout.add_range(0, 0).start + loc] = 0
        self.assertEqual(self.structure.status(uncertified), (0, "uncertified"))

        with self.assertRaises(ConstructionFailed):
            build_two_adaptive_instance(self.fn, [[1, 1]], seed=0)
        with self.assertRaises(ArityMismatch):
            build_two_adaptive_instance(self.fn, [[1, 0]], dt=[1], seed=0)
        print("✓ invalid-bicert / uncertified 与非法 IN 行")

    def test_sampler_is_seeded(self):
        a = build_two_adaptive_instance(self.fn, [[0, 0]], seed=9)
        b = build_two_adaptive_instance(self.fn, [[0, 0]], seed=9)
        self.assertTrue(np.array_equal(a, b))
        print("✓ 相同种子得到相同实例")


if __name__ == "__main__":
    unittest.main(verbosity=2)
