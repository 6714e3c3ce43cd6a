#!/usr/bin/env python3
"""MCP 服务器单元测试

通过 fastmcp 内存客户端列出并调用已注册的工具。
"""

import json
import os
import sys

import pytest
from fastmcp import Client

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from src.qpar.server import mcp
from src.qpar.tools import ALL_TOOLS


def _payload(result):
    """工具返回的字典（取第一段文本内容）"""
    content = getattr(result, "content", result)
    return json.loads(content[0].text)


@pytest.mark.asyncio
async def test_all_tools_registered():
    async with Client(mcp) as client:
        names = {tool.name for tool in await client.list_tools()}
    assert names == {tool.mcp_tool_name for tool in ALL_TOOLS}
    assert "barrier_bound" in names


@pytest.mark.asyncio
async def test_measure_function_tool():
    async with Client(mcp) as client:
        result = await client.call_tool("measure_function", {"function": "and(n=3)"})
    row = _payload(result)
    assert row["success"] is True
    assert (row["C0"], row["C1"], row["bs"]) == (1, 3, 3)


@pytest.mark.asyncio
async def test_tool_errors_are_responses():
    async with Client(mcp) as client:
        result = await client.call_tool(
            "run_verification_suite", {"suite": "nope", "seed": 0}
        )
    response = _payload(result)
    assert response["success"] is False
    assert response["not_found"] is True


@pytest.mark.asyncio
async def test_simulate_quantum_tool():
    async with Client(mcp) as client:
        result = await client.call_tool(
            "simulate_quantum",
            {"program": "grover", "input_bits": "00000100", "N": 8, "p": 2, "rounds": 1},
        )
    response = _payload(result)
    assert response["success"] is True
    assert response["rounds"] == 1
    assert response["success_probability"] == pytest.approx(1.0)
    assert response["distribution_csv"].startswith("outcome,probability\n")
