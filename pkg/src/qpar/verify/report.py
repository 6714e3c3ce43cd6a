"""
Report - 验证报告

每条用例记录一行 JSON（键排序、按用例键排序输出），同样的套件、网格
与种子得到逐字节相同的报告。另有人读摘要表与长格式 CSV。
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

TOLERANCE = 1e-9


def _clean(value: Any) -> Any:
    """JSON 友好的值：numpy 标量转 Python，非有限浮点转字符串"""
    if hasattr(value, "item") and not isinstance(value, (list, dict)):
        value = value.item()
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return float(f"{value:.12g}")
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    return value


@dataclass
class CaseRecord:
    """一个用例：参数、理论界、实测值、是否通过"""

    suite: str
    case: Dict[str, Any]
    bound: Any
    measured: Any
    passed: bool
    relation: str = "=="
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def key(self) -> str:
        return json.dumps(_clean(self.case), sort_keys=True)

    def as_dict(self) -> Dict[str, Any]:
        row = {
            "suite": self.suite,
            "case": _clean(self.case),
            "bound": _clean(self.bound),
            "measured": _clean(self.measured),
            "relation": self.relation,
            "pass": bool(self.passed),
        }
        if self.extra:
            row["extra"] = _clean(self.extra)
        return row

    @classmethod
    def from_dict(cls, row: Dict[str, Any]) -> "CaseRecord":
        return cls(row["suite"], row["case"], row.get("bound"), row.get("measured"),
                   bool(row["pass"]), row.get("relation", "=="), row.get("extra", {}))


def close(measured: float, expected: float, tol: float = TOLERANCE) -> bool:
    return abs(float(measured) - float(expected)) <= tol * max(1.0, abs(float(expected)))


def at_most(measured: float, bound: float, tol: float = TOLERANCE) -> bool:
    return float(measured) <= float(bound) + tol


def at_least(measured: float, bound: float, tol: float = TOLERANCE) -> bool:
    return float(measured) >= float(bound) - tol


@dataclass
class SuiteReport:
    suite: str
    seed: int
    grid: Dict[str, Any]
    records: List[CaseRecord] = field(default_factory=list)

    def sorted_records(self) -> List[CaseRecord]:
        return sorted(self.records, key=lambda r: (r.suite, r.key))

    @property
    def passed(self) -> int:
        return sum(1 for r in self.records if r.passed)

    @property
    def failed(self) -> int:
        return len(self.records) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def header(self) -> Dict[str, Any]:
        return {"suite": self.suite, "seed": self.seed, "grid": _clean(self.grid),
                "cases": len(self.records), "passed": self.passed, "failed": self.failed}

    def to_jsonl(self) -> str:
        lines = [json.dumps(r.as_dict(), sort_keys=True, ensure_ascii=False)
                 for r in self.sorted_records()]
        lines.append(json.dumps({"summary": self.header()}, sort_keys=True))
        return "\n".join(lines) + "\n"

    def summary_table(self) -> str:
        rows = [("case", "bound", "measured", "rel", "pass")]
        for r in self.sorted_records():
            rows.append((r.key, _fmt(r.bound), _fmt(r.measured), r.relation,
                         "✓" if r.passed else "✗"))
        widths = [max(len(str(row[i])) for row in rows) for i in range(len(rows[0]))]
        lines = ["  ".join(str(c).ljust(w) for c, w in zip(row, widths)) for row in rows]
        lines.append(f"{self.suite}: {self.passed}/{len(self.records)} passed (seed={self.seed})")
        return "\n".join(lines) + "\n"

    def to_long_csv(self) -> str:
        """长格式：suite, case, metric, value"""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["suite", "case", "metric", "value"])
        for r in self.sorted_records():
            for metric, value in (("bound", r.bound), ("measured", r.measured),
                                  ("pass", int(r.passed))):
                writer.writerow([r.suite, r.key, metric, _fmt(value)])
        return buf.getvalue()


def _fmt(value: Any) -> str:
    value = _clean(value)
    if isinstance(value, float):
        return f"{value:.9g}"
    return json.dumps(value) if isinstance(value, (list, dict)) else str(value)


def parse_report(text: str) -> Tuple[List[CaseRecord], List[Dict[str, Any]]]:
    """JSON-lines → (用例记录, 摘要行)"""
    records, summaries = [], []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        row = json.loads(line)
        if "summary" in row:
            summaries.append(row["summary"])
        else:
            records.append(CaseRecord.from_dict(row))
    return records, summaries


def merge_reports(texts: Iterable[str], seed: Optional[int] = None) -> SuiteReport:
    """合并多个报告；同一 (suite, case) 以后出现者为准"""
    merged: Dict[Tuple[str, str], CaseRecord] = {}
    seeds = set()
    for text in texts:
        records, summaries = parse_report(text)
        seeds.update(s.get("seed") for s in summaries)
        for r in records:
            merged[(r.suite, r.key)] = r
    if seed is None:
        seed = next(iter(seeds)) if len(seeds) == 1 else -1
    suites = sorted({s for s, _ in merged})
    report = SuiteReport("+".join(suites) or "merged", seed, {"suites": suites})
    report.records = [merged[k] for k in sorted(merged)]
    return report
