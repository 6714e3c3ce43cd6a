"""
Verify Tools - 验证套件列表、运行与报告合并
"""

import logging
from typing import Any, Dict, List, Optional

from ..verify import list_suites, merge_reports as merge_report_texts, run_suite
from .._internal.config_tools import mcp_tool
from .._internal.errors import QparError, UnknownSuite
from .._internal.response_builder import ResponseBuilder

logger = logging.getLogger(__name__)


@mcp_tool(
    name="list_verification_suites",
    description="列出全部验证套件及其缺省参数网格",
)
def list_verification_suites() -> Dict[str, Any]:
    suites = list_suites()
    return ResponseBuilder.list_result(suites)


@mcp_tool(
    name="run_verification_suite",
    description="按 (套件, 网格, 种子) 运行验证套件，返回 JSON-lines 报告与汇总",
)
def run_verification_suite(
    suite: str,
    grid: Optional[Dict[str, Any]] = None,
    seed: int = 0,
    threads: Optional[int] = None,
) -> Dict[str, Any]:
    """
    运行验证套件

    Args:
        suite: 套件 id（barrier, grover, ...）
        grid: 覆盖缺省网格的参数，如 {"N": [4, 8], "trials": 5}
        seed: 种子
        threads: 线程数，缺省为全部 CPU
    """
    try:
        report = run_suite(suite, grid, seed, threads)
        return ResponseBuilder.status_result(
            "pass" if report.ok else "fail",
            details={"passed": report.passed, "failed": report.failed},
            suite=suite,
            seed=seed,
            grid=report.grid,
            report=report.to_jsonl(),
            summary=report.summary_table(),
        )
    except UnknownSuite:
        return ResponseBuilder.not_found_error("suite", suite)
    except QparError as e:
        return ResponseBuilder.from_error(e)
    except Exception as e:
        return ResponseBuilder.error(f"套件运行失败: {str(e)}")


@mcp_tool(
    name="merge_reports",
    description="合并多份 JSON-lines 报告（按用例键去重排序）",
)
def merge_reports(reports: List[str], seed: Optional[int] = None) -> Dict[str, Any]:
    if not reports:
        return ResponseBuilder.validation_error("reports", reports, "至少一份报告")
    try:
        merged = merge_report_texts(reports, seed)
        return ResponseBuilder.status_result(
            "pass" if merged.ok else "fail",
            details={"passed": merged.passed, "failed": merged.failed},
            suite=merged.suite,
            report=merged.to_jsonl(),
            summary=merged.summary_table(),
        )
    except QparError as e:
        return ResponseBuilder.from_error(e)
    except Exception as e:
        return ResponseBuilder.error(f"报告合并失败: {str(e)}")
