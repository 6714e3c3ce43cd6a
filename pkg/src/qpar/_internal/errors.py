"""
Errors - 统一异常层次

所有工作台操作抛出的异常都派生自 QparError，携带 details 字典，
工具层据此构建 ResponseBuilder.error 响应。
"""

from typing import Any, Dict


class QparError(Exception):
    """工作台异常基类"""

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    def to_response_fields(self) -> Dict[str, Any]:
        """转换为响应字段（error_type + details）"""
        fields: Dict[str, Any] = {"error_type": type(self).__name__}
        fields.update(self.details)
        return fields


class OutOfDomain(QparError):
    """输入不在(部分)函数的定义域内"""


class ArityMismatch(QparError):
    """输入长度与函数元数不符"""


class TooLarge(QparError):
    """超过穷举计算的规模上限"""


class IndexOutOfRange(QparError):
    """下标越界"""


class OverlapError(QparError):
    """自由集合与赋值集合重叠"""


class NotTotal(QparError):
    """操作要求全函数"""


class ConstructionFailed(QparError):
    """构造无法完成"""


class StrategyViolation(QparError):
    """查询策略违反并行度或下标约束"""


class BudgetExceeded(QparError):
    """对手策略超出引理的假设范围"""


class ParallelismTooSmall(QparError):
    """并行度低于算法所需阈值"""


class LayoutMismatch(QparError):
    """寄存器或区域布局不兼容"""


class CapExceeded(QparError):
    """量子比特数或内存超出上限"""


class NoConvergence(QparError):
    """迭代特征值求解未收敛"""


class NotNearestNeighbor(QparError):
    """矩阵存在汉明距离不为1的非零项"""


class EmptyRelation(QparError):
    """关系为空"""


class ConstantFunction(QparError):
    """函数为常函数"""


class NotSymmetric(QparError):
    """函数不是对称函数"""


class DescriptorError(QparError):
    """函数描述文本格式错误"""


class UnknownGenerator(DescriptorError):
    """未注册的生成器名称"""


class UnknownSuite(QparError):
    """未注册的验证套件"""
