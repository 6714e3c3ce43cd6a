"""
qpar 命令行

fn build|show, measure, dtree solve, sim quantum, adv ratio|barrier,
verify <suite>, report merge。主要产物写到 --output（缺省 stdout），
摘要写到 stderr。退出码：0 成功，1 失败，2 用法错误。
"""

import argparse
import csv
import io
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Sequence

from .tools import (
    adversary_ratio,
    barrier_bound_tool,
    build_function,
    describe_function,
    measure_function,
    nn_bound,
    simulate_quantum,
    solve_parallel_depth,
)
from .tools.function_tools import MEASURE_COLUMNS
from .tools.bound_tools import WITNESSES
from .tools.quantum_tools import PROGRAMS
from .verify import list_suites, merge_reports, run_suite
from .adversary.ratio import MODES
from .classical.model import GRANULARITIES
from ._internal.errors import QparError, UnknownSuite

logger = logging.getLogger("qpar")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# 这些错误类型属于用法错误
USAGE_ERRORS = {"UnknownGenerator", "UnknownSuite", "DescriptorError"}

# verify 的网格参数：(选项, 键, 是否可重复)
GRID_FLAGS = (
    ("--N", "N", True),
    ("--n", "n", True),
    ("--k", "k", True),
    ("--p", "p", True),
    ("--m", "m", True),
    ("--l", "l", True),
    ("--r", "r", True),
    ("--max-arity", "max_arity", False),
    ("--max-n", "max_n", False),
    ("--max-len", "max_len", False),
    ("--trials", "trials", False),
    ("--segments", "segments", False),
    ("--low-segments", "low_segments", False),
)


class UsageError(Exception):
    pass


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(data: Dict[str, Any]) -> str:
    return json.dumps(data, sort_keys=True, ensure_ascii=False, default=str) + "\n"


def _read_source(value: str) -> str:
    """--fn 参数：存在的文件读取其描述文本，否则视为表达式"""
    if os.path.isfile(value):
        with open(value, "r", encoding="utf-8") as fh:
            return fh.read()
    return value


def _check(response: Dict[str, Any]) -> Dict[str, Any]:
    if response.get("success"):
        return response
    print(f"❌ {response.get('error')}", file=sys.stderr)
    if (response.get("validation_error") or response.get("not_found")
            or response.get("error_type") in USAGE_ERRORS):
        raise UsageError(response.get("error"))
    raise RuntimeError(response.get("error"))


def _strip(response: Dict[str, Any], *keys: str) -> Dict[str, Any]:
    return {k: v for k, v in response.items() if k not in keys}


def _extra_params(extra: Sequence[str]) -> Dict[str, str]:
    """--block-size 2 形式的生成器参数 → {"block_size": "2"}"""
    params: Dict[str, str] = {}
    items = list(extra)
    while items:
        flag = items.pop(0)
        if not flag.startswith("--"):
            raise UsageError(f"unexpected argument: {flag}")
        key, _, value = flag[2:].partition("=")
        if not value:
            if not items:
                raise UsageError(f"missing value for {flag}")
            value = items.pop(0)
        params[key.replace("-", "_")] = value
    return params


# ---------------------------------------------------------------- commands
def cmd_fn(args: argparse.Namespace, extra: Sequence[str]) -> int:
    if args.fn_command == "build":
        result = _check(build_function(args.generator, _extra_params(extra), args.table))
        _emit(result["descriptor"], args.output)
        print(f"✅ {result['name']} ({result['arity']} bits)", file=sys.stderr)
        return EXIT_OK
    result = _check(describe_function(_read_source(args.function)))
    _emit(_json(_strip(result, "success")), args.output)
    return EXIT_OK


def cmd_measure(args: argparse.Namespace) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(MEASURE_COLUMNS)
    for source in args.functions:
        row = _check(measure_function(_read_source(source)))
        writer.writerow([row[c] for c in MEASURE_COLUMNS])
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


def cmd_dtree(args: argparse.Namespace) -> int:
    result = _check(solve_parallel_depth(_read_source(args.fn), args.p, args.granularity,
                                         transcript=bool(args.transcript)))
    if args.transcript:
        _emit(result["transcript"], args.transcript)
    _emit(_json(_strip(result, "success", "transcript")), args.output)
    return EXIT_OK


def cmd_sim(args: argparse.Namespace) -> int:
    result = _check(simulate_quantum(args.program, args.input, N=args.N, p=args.p,
                                     rounds=args.rounds, n=args.n, shots=args.shots,
                                     seed=args.seed, trace=bool(args.trace)))
    if args.trace:
        _emit(result["trace"], args.trace)
    _emit(result["distribution_csv"], args.output)
    print(_json(_strip(result, "success", "distribution_csv", "trace")), end="", file=sys.stderr)
    return EXIT_OK


def cmd_adv(args: argparse.Namespace) -> int:
    source = _read_source(args.fn)
    if args.adv_command == "ratio":
        result = _check(adversary_ratio(source, args.p, args.witness, args.mode, args.samples,
                                        args.seed, matrix_csv=bool(args.matrix_csv)))
        if args.matrix_csv:
            _emit(result["matrix_csv"], args.matrix_csv)
        _emit(_json(_strip(result, "success", "matrix_csv")), args.output)
    elif args.adv_command == "nn":
        result = _check(nn_bound(source, args.p, args.mode, args.samples, args.seed))
        _emit(_json(_strip(result, "success")), args.output)
    else:
        result = _check(barrier_bound_tool(source, args.p))
        _emit(_json(_strip(result, "success")), args.output)
    return EXIT_OK


def _grid(args: argparse.Namespace) -> Dict[str, Any]:
    grid: Dict[str, Any] = {}
    for _, key, _ in GRID_FLAGS:
        value = getattr(args, key, None)
        if value is not None:
            grid[key] = value
    return grid


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite == "list":
        _emit("".join(_json(s) for s in list_suites()), args.output)
        return EXIT_OK
    try:
        report = run_suite(args.suite, _grid(args), args.seed, args.threads)
    except UnknownSuite as e:
        raise UsageError(e.message) from e
    _emit(report.to_jsonl(), args.output)
    if args.csv_for_plot:
        _emit(report.to_long_csv(), args.csv_for_plot)
    sys.stderr.write(report.summary_table())
    return report.exit_code()


def cmd_report(args: argparse.Namespace) -> int:
    texts: List[str] = []
    for path in args.files:
        with open(path, "r", encoding="utf-8") as fh:
            texts.append(fh.read())
    merged = merge_reports(texts, args.merge_seed)
    _emit(merged.to_jsonl(), args.output)
    if args.csv_for_plot:
        _emit(merged.to_long_csv(), args.csv_for_plot)
    sys.stderr.write(merged.summary_table())
    return merged.exit_code()


# ---------------------------------------------------------------- parser
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpar", description="并行查询复杂度工作台")
    parser.add_argument("--seed", type=int, default=0, help="64 位种子（缺省 0）")
    parser.add_argument("--threads", type=int, default=None, help="线程数（缺省全部 CPU）")
    parser.add_argument("--output", "-o", default=None, help="主要产物的输出文件")
    parser.add_argument("--csv-for-plot", default=None, help="长格式 CSV 输出文件")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    fn = sub.add_parser("fn", help="构造或查看函数描述")
    fn_sub = fn.add_subparsers(dest="fn_command", required=True)
    build = fn_sub.add_parser("build", help="fn build <generator> --<param> <value> ...")
    build.add_argument("generator")
    build.add_argument("--table", action="store_true", help="物化为真值表")
    show = fn_sub.add_parser("show")
    show.add_argument("function", help="描述文件或表达式")

    measure = sub.add_parser("measure", help="C0, C1, C, bs, λ 的 CSV 行")
    measure.add_argument("functions", nargs="+")

    dtree = sub.add_parser("dtree")
    dtree_sub = dtree.add_subparsers(dest="dtree_command", required=True)
    solve = dtree_sub.add_parser("solve", help="精确 D^{p∥}")
    solve.add_argument("--fn", required=True)
    solve.add_argument("--p", type=int, default=1)
    solve.add_argument("--granularity", choices=GRANULARITIES, default="bit")
    solve.add_argument("--transcript", default=None, help="最优对局记录的输出文件")

    sim = sub.add_parser("sim")
    sim_sub = sim.add_subparsers(dest="sim_command", required=True)
    quantum = sim_sub.add_parser("quantum", help="精确模拟量子程序")
    quantum.add_argument("--program", choices=PROGRAMS, required=True)
    quantum.add_argument("--input", required=True, help="位串，第 i 个字符为 x_i")
    quantum.add_argument("--N", type=int, default=None)
    quantum.add_argument("--n", type=int, default=None)
    quantum.add_argument("--p", type=int, default=1)
    quantum.add_argument("--rounds", type=int, default=1)
    quantum.add_argument("--shots", type=int, default=None)
    quantum.add_argument("--trace", default=None, help="逐步记录的输出文件")

    adv = sub.add_parser("adv")
    adv_sub = adv.add_subparsers(dest="adv_command", required=True)
    ratio = adv_sub.add_parser("ratio", help="见证矩阵的并行对抗比值")
    ratio.add_argument("--witness", choices=WITNESSES, default="adjacency")
    ratio.add_argument("--matrix-csv", default=None, help="矩阵 CSV 输出文件")
    nn = adv_sub.add_parser("nn", help="最近邻对抗下界")
    for p_ in (ratio, nn):
        p_.add_argument("--mode", choices=MODES, default="exact")
        p_.add_argument("--samples", type=int, default=None)
    barrier = adv_sub.add_parser("barrier", help="证书屏障与最大组合界")
    for p_ in (ratio, nn, barrier):
        p_.add_argument("--fn", required=True)
        p_.add_argument("--p", type=int, default=1)

    verify = sub.add_parser("verify", help="运行验证套件（verify list 列出全部）")
    verify.add_argument("suite")
    for flag, key, repeat in GRID_FLAGS:
        if repeat:
            verify.add_argument(flag, dest=key, type=int, action="append", default=None)
        else:
            verify.add_argument(flag, dest=key, type=int, default=None)

    report = sub.add_parser("report")
    report_sub = report.add_subparsers(dest="report_command", required=True)
    merge = report_sub.add_parser("merge", help="合并 JSON-lines 报告")
    merge.add_argument("files", nargs="+")
    merge.add_argument("--merge-seed", type=int, default=None)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    if extra and not (args.command == "fn" and args.fn_command == "build"):
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    _configure_logging(args.verbose)
    if args.threads:
        os.environ["QPAR_THREADS"] = str(args.threads)

    handlers = {
        "fn": lambda: cmd_fn(args, extra),
        "measure": lambda: cmd_measure(args),
        "dtree": lambda: cmd_dtree(args),
        "sim": lambda: cmd_sim(args),
        "adv": lambda: cmd_adv(args),
        "verify": lambda: cmd_verify(args),
        "report": lambda: cmd_report(args),
    }
    try:
        return handlers[args.command]()
    except UsageError as e:
        print(f"qpar: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except QparError as e:
        print(f"❌ {type(e).__name__}: {e.message}", file=sys.stderr)
        return EXIT_FAIL
    except (RuntimeError, OSError) as e:
        logger.debug("command failed", exc_info=True)
        if not isinstance(e, RuntimeError):
            print(f"❌ {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
