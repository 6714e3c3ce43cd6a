"""
Verify - 可复现的验证套件与报告
"""

from .report import CaseRecord, SuiteReport, merge_reports, parse_report
from .suites import SUITES, Grid, get_suite, list_suites, register_suite, run_suite

__all__ = [
    "CaseRecord",
    "SuiteReport",
    "merge_reports",
    "parse_report",
    "SUITES",
    "Grid",
    "get_suite",
    "list_suites",
    "register_suite",
    "run_suite",
]
