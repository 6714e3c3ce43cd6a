"""
Suites - 验证套件注册表与实现

每个套件由 (套件 id, 参数网格, 种子) 完全确定，返回按用例键排序的
CaseRecord 列表。缺省网格在几秒内完成；完整网格通过命令行参数给出。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import asin, sin, sqrt
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from ..adversary import (
    adjacency_adversary,
    barrier_bound,
    block_decompose,
    max_comb_bound,
    or_witness_relation,
    comb_adv_bound,
    parallel_adv_ratio,
    random_nn_adversary,
    reassemble_blocks,
    symmetric_adversary,
    symmetric_prediction,
)
from ..boolfn import block_sensitivity, spectral_sensitivity, to_bits
from ..boolfn.builders import (
    make_and,
    make_maj,
    make_or,
    make_parity,
    make_random,
    make_threshold,
)
from ..classical import (
    cheatsheet_parallel_algorithm,
    cheatsheet_sequential_algorithm,
    distributional_success,
    exact_parallel_D,
    fixed_bicert_distribution,
    run_strategy,
    sample_hard_instances,
    star_statistics,
    two_adaptive_rand_algorithm,
    two_adaptive_success,
)
from ..classical.lifting import build_ksum_lift, ksum_lift_values
from ..constructions import (
    build_block_sensitivity_witness,
    make_and_or,
    make_canonical_cheatsheet,
    make_cor,
    make_dj,
    make_pointer,
    make_two_adaptive,
)
from ..constructions.cheatsheet import build_yes_input
from ..constructions.forrelation import forrelation_direct, join_tables
from ..quantum import (
    cheatsheet_quantum_3round,
    closed_form_success,
    forrelation_accept_probability,
    grover_search,
    two_adaptive_quantum,
)
from .._internal.errors import UnknownSuite
from .._internal.seeding import make_rng, spawn_seeds
from .._internal.workers import parallel_map
from .report import CaseRecord, SuiteReport, at_least, at_most, close

logger = logging.getLogger(__name__)


class Grid:
    """参数网格；列表参数可重复给出"""

    def __init__(self, values: Optional[Dict[str, Any]] = None,
                 defaults: Optional[Dict[str, Any]] = None) -> None:
        merged = dict(defaults or {})
        merged.update({k: v for k, v in (values or {}).items() if v is not None and v != []})
        self.values = merged

    def ints(self, key: str) -> List[int]:
        value = self.values[key]
        items = value if isinstance(value, (list, tuple)) else [value]
        return [int(v) for v in items]

    def scalar(self, key: str) -> int:
        value = self.values[key]
        return int(value[-1] if isinstance(value, (list, tuple)) else value)

    def as_dict(self) -> Dict[str, Any]:
        return dict(sorted(self.values.items()))


SuiteFn = Callable[[Grid, int, Optional[int]], List[CaseRecord]]


@dataclass(frozen=True)
class Suite:
    id: str
    summary: str
    defaults: Dict[str, Any] = field(default_factory=dict)
    run: SuiteFn = field(default=None, repr=False)


SUITES: Dict[str, Suite] = {}


def register_suite(suite_id: str, summary: str, **defaults):
    def decorator(func: SuiteFn) -> SuiteFn:
        SUITES[suite_id] = Suite(suite_id, summary, defaults, func)
        return func

    return decorator


def list_suites() -> List[Dict[str, Any]]:
    return [{"id": s.id, "summary": s.summary, "defaults": s.defaults}
            for s in sorted(SUITES.values(), key=lambda s: s.id)]


def get_suite(suite_id: str) -> Suite:
    suite = SUITES.get(suite_id)
    if suite is None:
        raise UnknownSuite(f"unknown suite: {suite_id}", suite=suite_id, known=sorted(SUITES))
    return suite


def run_suite(suite_id: str, grid: Optional[Dict[str, Any]] = None, seed: int = 0,
              threads: Optional[int] = None) -> SuiteReport:
    suite = get_suite(suite_id)
    g = Grid(grid, suite.defaults)
    logger.info(f"🧪 running suite {suite_id} grid={g.as_dict()} seed={seed}")
    records = suite.run(g, seed, threads)
    report = SuiteReport(suite_id, seed, g.as_dict(), records)
    logger.info(f"🧪 suite {suite_id}: {report.passed}/{len(records)} passed")
    return report


def _total_corpus(max_arity: int, trials: int, seed: int):
    """AND/OR/PARITY/MAJ、AND∘OR 与随机全函数（跳过常函数）"""
    corpus = []
    for n in range(1, max_arity + 1):
        corpus.extend([make_and(n), make_or(n), make_parity(n), make_maj(n)])
    if max_arity >= 4:
        corpus.append(make_and_or(2, 2))
    for n in range(2, max_arity + 1):
        for s in spawn_seeds(seed + n, trials):
            corpus.append(make_random(n, seed=s))
    unique = {}
    for f in corpus:
        if not f.is_constant():
            unique.setdefault(f.spec_expr(), f)
    return list(unique.values())


# ------------------------------------------------------------------ adversary
@register_suite("spectral", "λ(f) 等于邻接矩阵在 p=1 时的并行对抗比值", max_arity=6, trials=5)
def _spectral(grid: Grid, seed: int, threads: Optional[int]) -> List[CaseRecord]:
    corpus = _total_corpus(grid.scalar("max_arity"), grid.scalar("trials"), seed)

    def case(f) -> CaseRecord:
        lam = spectral_sensitivity(f)
        ratio = parallel_adv_ratio(adjacency_adversary(f), 1, threads=1).value
        return CaseRecord("spectral", {"function": f.spec_expr()}, lam, ratio, close(ratio, lam))

    return parallel_map(case, corpus, threads)


@register_suite("block-diag", "最近邻 Γ_S 的块对角分解", N=[4, 5], p=[1, 2, 3], trials=3)
def _block_diag(grid: Grid, seed: int, threads: Optional[int]) -> List[CaseRecord]:
    cases = [(N, p, t, s) for N in grid.ints("N") for p in grid.ints("p") if p <= N
             for t, s in enumerate(spawn_seeds(seed + N, grid.scalar("trials")))]

    def case(item) -> CaseRecord:
        N, p, t, s = item
        f = make_random(N, seed=s)
        gamma = random_nn_adversary(f, seed=s)
        worst, structural = 0.0, True
        for S in combinations(range(N), p):
            blocks = block_decompose(gamma, S)
            structural &= len(blocks) == 1 << (N - p)
            structural &= all(b.matrix.shape == (1 << p, 1 << p) for b in blocks)
            target = gamma.gamma_S(S)
            rebuilt = reassemble_blocks(gamma, blocks)
            structural &= abs(rebuilt.matrix - target.matrix).max() == 0 if target.matrix.nnz else True
            top = max(b.norm() for b in blocks)
            worst = max(worst, abs(top - target.dense_norm()))
        return CaseRecord("block-diag", {"N": N, "p": p, "trial": t}, 0.0, worst,
                          structural and worst <= 1e-9, "<=", {"structural": structural})

    return parallel_map(case, cases, threads)


@register_suite("barrier", "组合对抗界不超过 √(⌈C0/p⌉⌈C1/p⌉)", max_arity=3, trials=3)
def _barrier(grid: Grid, seed: int, threads: Optional[int]) -> List[CaseRecord]:
    corpus = _total_corpus(grid.scalar("max_arity"), grid.scalar("trials"), seed)
    corpus.append(make_and_or(2, 2))
    cases = [(f, p) for f in corpus for p in range(1, f.arity + 1)]

    def case(item) -> CaseRecord:
        f, p = item
        best = max_comb_bound(f, p)
        bound = barrier_bound(f, p)
        measured = best.value if best else 0.0
        return CaseRecord("barrier", {"function": f.spec_expr(), "p": p}, bound, measured,
                          at_most(measured, bound), "<=",
                          {"relation": best.relation if best else None})

    records = parallel_map(case, cases, threads)
    for n, p in ((8, 2), (4, 1)):
        f = make_or(n)
        value = comb_adv_bound(or_witness_relation(n, f), p)
        records.append(CaseRecord("barrier", {"function": f.spec_expr(), "p": p,
                                              "relation": "or-witness"},
                                  sqrt(n / p), value, close(value, sqrt(n / p))))
    and_or = barrier_bound(make_and_or(2, 2), 2)
    records.append(CaseRecord("barrier", {"function": "and-or(2,2)", "p": 2, "check": "exact"},
                              1.0, and_or, close(and_or, 1.0)))
    return records


@register_suite("symmetric", "对称函数见证矩阵的比值不低于预测值的一半",
                max_n=8, p=[1, 2, 4])
def _symmetric(grid: Grid, seed: int, threads: Optional[int]) -> List[CaseRecord]:
    funcs = []
    for n in range(2, grid.scalar("max_n") + 1):
        funcs.append(make_maj(n))
        funcs.extend(make_threshold(n, t) for t in range(1, n + 1))
    cases = [(f, p) for f in funcs for p in grid.ints("p") if p <= f.arity]

    def case(item) -> CaseRecord:
        f, p = item
        t, gamma = symmetric_adversary(f)
        bound = 0.5 * symmetric_prediction(f.arity, t, p)
        ratio = parallel_adv_ratio(gamma, p, threads=1).value
        return CaseRecord("symmetric", {"function": f.spec_expr(), "p": p}, bound, ratio,
                          at_least(ratio, bound), ">=", {"t_f": t})

    return parallel_map(case, cases, threads)


# ------------------------------------------------------------------ classical
@register_suite("pointer-bounds", "指针追踪 D^{p∥} = min(k, N/p)（块查询）",
                N=[4], k=[1, 2], p=[1, 2])
def _pointer_bounds(grid: Grid, seed: int, threads: Optional[int]) -> List[CaseRecord]:
    cases = [(N, k, p) for N in grid.ints("N") for k in grid.ints("k") for p in grid.ints("p")
             if N % p == 0]

    def case(item) -> CaseRecord:
        N, k, p = item
        measured = exact_parallel_D(make_pointer(N, k), p, "block")
        expected = min(k, N // p)
        return CaseRecord("pointer-bounds", {"N": N, "k": k, "p": p}, expected, measured,
                          measured == expected)

    return parallel_map(case, cases, threads)


COR_COMPONENTS = ("and", "or", "parity", "dj")


def _component(name: str):
    return {"and": make_and, "or": make_or, "parity": make_parity, "dj": make_dj}[name](2)


@register_suite("cor-sandwich", "min(D_f, D_g) ≤ D(COR(f,g)) ≤ 2·min(D_f, D_g)", p=[1, 2])
def _cor_sandwich(grid: Grid, seed: int, threads: Optional[int]) -> List[CaseRecord]:
    cases = [(a, b, p) for a in COR_COMPONENTS for b in COR_COMPONENTS for p in grid.ints("p")]

    def case(item) -> CaseRecord:
        a, b, p = item
        f, g = _component(a), _component(b)
        low = min(exact_parallel_D(f, p), exact_parallel_D(g, p))
        measured = exact_parallel_D(make_cor(f, g), p)
        return CaseRecord("cor-sandwich", {"f": a, "g": b, "p": p}, [low, 2 * low], measured,
                          low <= measured <= 2 * low, "in")

    return parallel_map(case, cases, threads)


def _toy_cheatsheet():
    return make_canonical_cheatsheet(make_dj(2), c=1, blocks=2, block_size=2)


def _cheatsheet_inputs(fn) -> List[np.ndarray]:
    """地址区穷举：零表输入；定义域内地址另加有效表与翻转一位的表"""
    sheet = fn.structure
    layout = sheet.layout
    inputs = []
    for a in range(1 << layout.address_bits):
        address = to_bits(a, layout.address_bits)
        zero = np.zeros(layout.total_bits, dtype=np.uint8)
        zero[:layout.address_bits] = address
        inputs.append(zero)
        if all(v is not None for v in sheet.address_values(zero)):
            yes = build_yes_input(fn, address)
            inputs.append(yes)
            broken = yes.copy()
            broken[0] ^= 1
            inputs.append(broken)
    return inputs


@register_suite("cheatsheet-upper", "作弊表三轮混合算法与确定性算法的上界")
def _cheatsheet_upper(grid: Grid, seed: int, threads: Optional[int]) -> List[CaseRecord]:
    fn = _toy_cheatsheet()
    layout = fn.structure.layout
    inputs = _cheatsheet_inputs(fn)
    records = []

    hybrid = cheatsheet_quantum_3round(fn, p=max(layout.cell_size, layout.address_bits))
    rate = hybrid.success_rate(inputs, seed)
    records.append(CaseRecord("cheatsheet-upper", {"algorithm": "quantum-3round",
                                                   "inputs": len(inputs)},
                              2 / 3, rate, at_least(rate, 2 / 3), ">="))

    def exact_run(make):
        def one(x):
            t = run_strategy(make(), x, fn)
            return bool(t.correct), t.round_count
        return parallel_map(one, inputs, threads)

    seq = exact_run(lambda: cheatsheet_sequential_algorithm(fn))
    seq_rate = sum(ok for ok, _ in seq) / len(seq)
    records.append(CaseRecord("cheatsheet-upper", {"algorithm": "sequential",
                                                   "inputs": len(inputs)},
                              1.0, seq_rate, seq_rate == 1.0))

    p = layout.cell_size
    par = exact_run(lambda: cheatsheet_parallel_algorithm(fn, p))
    bound = exact_parallel_D(fn.structure.inner, p) + 2
    worst = max(r for _, r in par)
    records.append(CaseRecord("cheatsheet-upper", {"algorithm": "parallel-det", "p": p},
                              bound, worst, all(ok for ok, _ in par) and worst <= bound, "<="))
    return records


@register_suite("bs-witness", "作弊表块敏感度见证")
def _bs_witness(grid: Grid, seed: int, threads: Optional[int]) -> List[CaseRecord]:
    g, h = make_dj(2), make_and_or(2, 2)
    witness = build_block_sensitivity_witness(g, h, c=1)
    floor = sum(block_sensitivity(h, side=int(b)) for b in (0, 1))
    cases = sorted(set(witness.cases))
    ok = witness.verify() and len(cases) == 3
    return [CaseRecord("bs-witness", {"g": "dj(2)", "h": "and-or(2,2)", "c": 1}, floor,
                       len(witness.blocks), ok and len(witness.blocks) >= floor, ">=",
                       {"cases": cases})]


@register_suite("two-adaptive", "2-Adaptive-F：两轮算法成功率与低并行度的分布成功率",
                trials=200, segments=1, low_segments=5, p=[1])
def _two_adaptive(grid: Grid, seed: int, threads: Optional[int]) -> List[CaseRecord]:
    fn = make_two_adaptive(make_dj(2), n=2, segments=grid.scalar("segments"))
    instances = sample_hard_instances(fn, grid.scalar("trials"), seed)
    records = []

    quantum = two_adaptive_quantum(fn).success_rate(instances, seed)
    records.append(CaseRecord("two-adaptive", {"algorithm": "quantum"}, 0.6, quantum,
                              at_least(quantum, 0.6), ">="))
    rand = two_adaptive_success(fn, lambda: two_adaptive_rand_algorithm(fn), instances,
                                seed, threads)["success"]
    records.append(CaseRecord("two-adaptive", {"algorithm": "randomized"}, 0.6, rand,
                              at_least(rand, 0.6), ">="))

    # 仿射 DT 族下 p 位以下的两轮策略只能猜目标位置
    segments = grid.scalar("low_segments")
    low_fn = make_two_adaptive(make_dj(2), n=2, segments=segments)
    threshold = two_adaptive_rand_algorithm(low_fn).threshold
    dist = fixed_bicert_distribution(low_fn, seed)
    for p in grid.ints("p"):
        low = distributional_success(low_fn, dist, p=p, k=2)
        case = {"algorithm": "distributional", "segments": segments, "p": p, "k": 2,
                "threshold": threshold}
        records.append(CaseRecord("two-adaptive", case, 0.55, low,
                                  p < threshold and at_most(low, 0.55), "<="))
    return records


@register_suite("ksum-lift", "k-SUM 提升：每块 k-SUM(Y_i) = x_i", max_len=4, trials=10,
                k=2, block_bits=2, modulus=4)
def _ksum_lift(grid: Grid, seed: int, threads: Optional[int]) -> List[CaseRecord]:
    k, bb, mod = grid.scalar("k"), grid.scalar("block_bits"), grid.scalar("modulus")
    sub = k + 1
    seeds = spawn_seeds(seed, grid.scalar("trials"))
    records = []
    for length in range(1, grid.scalar("max_len") + 1):
        def check(x: int) -> int:
            bits = to_bits(x, length)
            bad = 0
            for s in seeds:
                y = build_ksum_lift(bits, sub, k, bb, mod, seed=s)
                bad += ksum_lift_values(y, length, sub, k, bb, mod) != bits.tolist()
            return bad

        mismatches = sum(parallel_map(check, range(1 << length), threads))
        records.append(CaseRecord("ksum-lift", {"length": length, "seeds": len(seeds)}, 0,
                                  mismatches, mismatches == 0))
    return records


@register_suite("star-lemma", "星号引理：Pr[命中数 > 20l/m] ≤ 0.1", n=[16], m=[64], l=[16],
                trials=2000)
def _star_lemma(grid: Grid, seed: int, threads: Optional[int]) -> List[CaseRecord]:
    records = []
    for n in grid.ints("n"):
        for m in grid.ints("m"):
            for l in grid.ints("l"):
                for strategy in ("greedy", "random"):
                    stats = star_statistics(l, n, m, strategy, grid.scalar("trials"), seed, threads)
                    value = stats["exceed_probability"]
                    records.append(CaseRecord(
                        "star-lemma", {"n": n, "m": m, "l": l, "strategy": strategy},
                        0.12, value, at_most(value, 0.12), "<=", {"mean": stats["mean"]}))
    return records


# ------------------------------------------------------------------ quantum
@register_suite("forrelation", "Forrelation 接受概率 = (1+Φ)/2", n=[1, 2, 3], trials=20)
def _forrelation(grid: Grid, seed: int, threads: Optional[int]) -> List[CaseRecord]:
    records = []
    for n in grid.ints("n"):
        rng = make_rng(seed + n)
        size = 1 << n
        pairs = [(1 - 2 * rng.integers(0, 2, size), 1 - 2 * rng.integers(0, 2, size))
                 for _ in range(grid.scalar("trials"))]

        def deviation(pair) -> float:
            X, Y = pair
            accept = forrelation_accept_probability(join_tables(X, Y), n)
            return abs(accept - (1 + forrelation_direct(X, Y)) / 2)

        worst = max(parallel_map(deviation, pairs, threads))
        records.append(CaseRecord("forrelation", {"n": n, "trials": len(pairs)}, 0.0, worst,
                                  worst <= 1e-9, "<="))
    return records


@register_suite("grover", "并行 Grover 成功率等于 sin²((2r+1)·asin(√(p/N)))",
                N=[8, 16], p=[1, 2, 4], r=[0, 1, 2, 3])
def _grover(grid: Grid, seed: int, threads: Optional[int]) -> List[CaseRecord]:
    cases = []
    for N in grid.ints("N"):
        for p in grid.ints("p"):
            size = N // p if N % p == 0 else 0
            if size and not size & (size - 1):
                cases.extend((N, p, r) for r in grid.ints("r"))
    rng = make_rng(seed)
    marks = {N: int(rng.integers(N)) for N in sorted(set(grid.ints("N")))}

    def case(item) -> CaseRecord:
        N, p, r = item
        x = np.zeros(N, dtype=np.uint8)
        x[marks[N]] = 1
        measured = grover_search(x, N, p, r)["success"]
        expected = sin((2 * r + 1) * asin(sqrt(p / N))) ** 2
        ok = close(measured, expected) and close(expected, closed_form_success(N // p, 1, r))
        return CaseRecord("grover", {"N": N, "p": p, "r": r, "marked": marks[N]}, expected,
                          measured, ok)

    return parallel_map(case, cases, threads)
