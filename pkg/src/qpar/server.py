"""
FastMCP Server for the qpar workbench
把工具层函数注册为 MCP 工具：函数构造与测度、精确并行深度、对抗下界、
量子模拟与验证套件。
"""

import json
import os
import sys

from fastmcp import FastMCP

from ._internal.config_tools import MCP_CONFIG, set_loaded_config
from .tools import ALL_TOOLS

# 创建FastMCP服务器实例
mcp = FastMCP("qpar-workbench")

for _tool in ALL_TOOLS:
    mcp.tool(_tool, name=_tool.mcp_tool_name, description=_tool.mcp_tool_description)


def main():
    """主入口函数 - 基于环境变量的简化启动"""
    continue_on_error = os.environ.get("CONTINUE_ON_ERROR", "false").lower() == "true"

    # 如果指定了MCP配置文件，尝试加载到全局变量
    if MCP_CONFIG and os.path.exists(MCP_CONFIG):
        try:
            with open(MCP_CONFIG, "r") as f:
                set_loaded_config(json.load(f))
            print(f"✅ MCP配置已加载到全局变量: {MCP_CONFIG}", file=sys.stderr)
        except Exception as e:
            print(f"⚠️  MCP配置加载失败: {e}", file=sys.stderr)
            set_loaded_config(None)
    elif MCP_CONFIG:
        print(f"⚠️  MCP配置文件不存在: {MCP_CONFIG}", file=sys.stderr)
        set_loaded_config(None)

    print(f"🚀 qpar-workbench: {len(ALL_TOOLS)} tools", file=sys.stderr)
    try:
        mcp.run()
    except Exception as e:
        if not continue_on_error:
            sys.stderr.write(f"Server error: {e}\n")
            sys.exit(1)
        else:
            sys.stderr.write(f"Warning: {e}\n")


if __name__ == "__main__":
    main()
