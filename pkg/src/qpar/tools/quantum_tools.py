"""
Quantum Tools - 精确模拟 p-并行量子查询程序
"""

import logging
from typing import Any, Dict, Optional

from ..boolfn import to_bits
from ..quantum import (
    deutsch_jozsa_program,
    forrelation_program,
    grover_parallel,
    run_program,
)
from .._internal.config_tools import mcp_tool
from .._internal.errors import QparError
from .._internal.response_builder import ResponseBuilder

logger = logging.getLogger(__name__)

PROGRAMS = ("grover", "forrelation", "dj")


def build_program(program: str, N: Optional[int] = None, p: int = 1, rounds: int = 1,
                  n: Optional[int] = None):
    """(程序, 输入长度, 判定成功的测量谓词)"""
    if program == "grover":
        prog = grover_parallel(N, p, rounds)
        size = N // p

        def hit(outcome, bits):
            return any(bits[j * size + o] for j, o in enumerate(outcome))

        return prog, N, hit
    if program == "forrelation":
        return forrelation_program(n), 2 << n, lambda outcome, bits: outcome[0] == 0
    if program == "dj":
        return deutsch_jozsa_program(N), N, lambda outcome, bits: outcome[0] == 0
    raise ValueError(f"unknown program: {program}")


@mcp_tool(
    name="simulate_quantum",
    description="在给定输入上精确运行 grover / forrelation / dj 程序，返回测量分布",
)
def simulate_quantum(
    program: str,
    input_bits: str,
    N: Optional[int] = None,
    p: int = 1,
    rounds: int = 1,
    n: Optional[int] = None,
    shots: Optional[int] = None,
    seed: int = 0,
    trace: bool = False,
) -> Dict[str, Any]:
    """
    模拟量子程序

    Args:
        program: grover（需要 N、p、rounds）、forrelation（需要 n）、dj（需要 N）
        input_bits: 输入位串，第 i 个字符为 x_i
        shots: 采样次数；缺省只返回精确分布
        trace: 是否附带逐步记录
    """
    if program not in PROGRAMS:
        return ResponseBuilder.validation_error("program", program, " / ".join(PROGRAMS))
    if program in ("grover", "dj") and not N:
        return ResponseBuilder.validation_error("N", N, "正整数")
    if program == "forrelation" and not n:
        return ResponseBuilder.validation_error("n", n, "正整数")
    try:
        prog, length, accept = build_program(program, N, p, rounds, n)
        bits = to_bits(input_bits, length)
        result = run_program(prog, bits, shots=shots, seed=seed)
        success = result.probability(lambda o: accept(o, bits))
        logger.info(f"⚛️ {prog.name}: {result.rounds} rounds, success {success:.6f}")
        response = ResponseBuilder.success(
            program=prog.name,
            rounds=result.rounds,
            parallelism=prog.parallelism,
            success_probability=success,
            distribution_csv=result.distribution_csv(),
        )
        if result.counts is not None:
            response["counts"] = {" ".join(map(str, o)): c for o, c in sorted(result.counts.items())}
        if trace:
            response["trace"] = result.trace_jsonl()
        return response
    except QparError as e:
        return ResponseBuilder.from_error(e)
    except Exception as e:
        return ResponseBuilder.error(f"量子模拟失败: {str(e)}")
