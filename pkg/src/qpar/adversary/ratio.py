"""
Ratio - 并行对抗比值与最近邻下界

parallel_adv_ratio(Γ, p) = ‖Γ‖ / max_{|S|=p} ‖Γ_S‖。C(N,p) 不超过
QPAR_MAX_SUBSETS 时精确枚举；否则（或显式 mode="sampled"）抽样 S，
报告覆盖率，结果只作启发式参考。
nn_lower_bound(f, p) = λ(f) / max_g λ(g)，g 取遍 p 元限制（按真值表去重）。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np

from ..boolfn.builders import bits_to_hex
from ..boolfn.function import BooleanFunction
from ..boolfn.measures import spectral_sensitivity
from ..boolfn.restriction import Restriction, enumerate_restrictions
from .._internal.config_tools import current_limits
from .._internal.memo_store import get_memo_store
from .._internal.seeding import make_rng
from .._internal.workers import parallel_map
from .matrix import AdversaryMatrix

logger = logging.getLogger(__name__)

MODES = ("exact", "sampled")
LABEL = "witness lower bound"


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}, expected one of {MODES}")


@dataclass
class RatioResult:
    value: float
    norm: float
    best_norm: float
    best_S: Tuple[int, ...]
    subsets: int
    total_subsets: int
    sampled: bool = False

    @property
    def coverage(self) -> float:
        return self.subsets / self.total_subsets if self.total_subsets else 1.0

    def as_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "norm": self.norm,
            "best_norm": self.best_norm,
            "best_S": list(self.best_S),
            "subsets": self.subsets,
            "coverage": self.coverage,
            "sampled": self.sampled,
            "label": LABEL if not self.sampled else f"{LABEL} (heuristic, sampled)",
        }


def _sample_subsets(n: int, p: int, samples: int, seed: int) -> List[Tuple[int, ...]]:
    rng = make_rng(seed)
    picked = {
        tuple(sorted(rng.choice(n, size=p, replace=False).tolist())) for _ in range(samples)
    }
    return sorted(picked)


def candidate_subsets(
    n: int, p: int, mode: str = "exact", samples: Optional[int] = None, seed: int = 0
) -> Tuple[List[Tuple[int, ...]], int, bool]:
    """(子集列表, C(n,p), 是否抽样)"""
    _check_mode(mode)
    total = comb(n, p)
    cap = current_limits().max_subsets
    if mode == "exact" and total <= cap:
        return list(combinations(range(n), p)), total, False
    count = min(total, samples or cap)
    if mode == "exact":
        logger.warning(f"⚠️ C({n},{p})={total} exceeds {cap}, falling back to sampling")
    return _sample_subsets(n, p, count, seed), total, True


def parallel_adv_ratio(
    gamma: AdversaryMatrix,
    p: int,
    mode: str = "exact",
    samples: Optional[int] = None,
    seed: int = 0,
    threads: Optional[int] = None,
) -> RatioResult:
    n = gamma.arity
    p = max(0, min(int(p), n))
    norm = gamma.norm()
    subsets, total, sampled = candidate_subsets(n, p, mode, samples, seed)
    norms = parallel_map(lambda S: gamma.gamma_S(S).norm(), subsets, threads)
    best = int(np.argmax(norms)) if norms else 0
    best_norm = float(norms[best]) if norms else 0.0
    value = norm / best_norm if best_norm > 0 else 0.0
    logger.debug("ratio p=%d: %.6f / %.6f over %d subsets", p, norm, best_norm, len(subsets))
    return RatioResult(
        value, norm, best_norm, tuple(subsets[best]) if subsets else (),
        len(subsets), total, sampled,
    )


def min_index_ratio(gamma: AdversaryMatrix) -> float:
    """‖Γ‖ / max_i ‖Γ_i‖"""
    return parallel_adv_ratio(gamma, 1).value


def restriction_lambda(g: BooleanFunction) -> float:
    """限制函数的 λ，按真值表缓存"""
    values, _ = g.table_arrays()
    key = f"{g.arity}:{bits_to_hex(values)}"
    store = get_memo_store()
    cached = store.get("restriction_lambda", key)
    if cached is not None:
        return float(cached)
    value = spectral_sensitivity(g)
    store.put("restriction_lambda", key, value)
    return value


@dataclass
class BoundResult:
    value: float
    lambda_f: float
    max_lambda: float
    best: Optional[Restriction] = None
    restrictions: int = 0
    sampled: bool = False

    def as_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "lambda_f": self.lambda_f,
            "max_lambda": self.max_lambda,
            "best_restriction": self.best.describe() if self.best else None,
            "restrictions": self.restrictions,
            "sampled": self.sampled,
            "label": LABEL,
        }


def _sampled_restrictions(
    f: BooleanFunction, p: int, samples: int, seed: int
) -> Iterator[Tuple[Restriction, BooleanFunction]]:
    rng = make_rng(seed)
    seen = set()
    for _ in range(samples):
        S = tuple(sorted(rng.choice(f.arity, size=p, replace=False).tolist()))
        complement = [i for i in range(f.arity) if i not in S]
        bits = rng.integers(0, 2, size=len(complement)).tolist()
        r = Restriction(f, S, tuple(zip(complement, bits)))
        key = (S, r.fixed_index)
        if key in seen:
            continue
        seen.add(key)
        yield r, r.induced()


def nn_lower_bound(
    f: BooleanFunction,
    p: int,
    mode: str = "exact",
    samples: Optional[int] = None,
    seed: int = 0,
    threads: Optional[int] = None,
) -> BoundResult:
    """λ(f) / max_g λ(g)；常函数返回 0"""
    _check_mode(mode)
    lam = spectral_sensitivity(f)
    if lam == 0:
        return BoundResult(0.0, 0.0, 0.0)
    p = max(1, min(int(p), f.arity))
    if mode == "exact":
        items = list(enumerate_restrictions(f, p, dedupe=True))
    else:
        items = list(_sampled_restrictions(f, p, samples or current_limits().max_subsets, seed))
    lams = parallel_map(lambda item: restriction_lambda(item[1]), items, threads)
    best = int(np.argmax(lams))
    top = float(lams[best])
    value = lam / top if top > 0 else 0.0
    logger.info(f"📐 NN bound {f.name} p={p}: {lam:.6f} / {top:.6f} = {value:.6f}")
    return BoundResult(value, lam, top, items[best][0], len(items), mode == "sampled")
