"""
qpar - 并行查询复杂度工作台

分层说明:
- boolfn: 布尔函数、限制、复合与复杂度测度
- constructions: 各函数族与作弊表、2-Adaptive 等构造
- classical: p-并行查询模型、精确 minimax 求解器、算法与对手
- quantum: 态矢量模拟器、并行预言机与量子轮次程序
- adversary: 并行对抗矩阵、组合界与证书屏障
- verify: 可复现的验证套件与报告
- tools: MCP 工具层（server 注册、cli 调用）
"""

__version__ = "0.1.0"
