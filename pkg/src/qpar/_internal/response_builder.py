"""
Response Builder - 工具响应格式标准化

统一所有工具函数的返回字典：成功响应合并数据字段，失败响应携带
error 消息与异常类型，供 MCP 服务器与命令行共享。
"""

from typing import Any, Dict, List, Optional

from .errors import QparError


class ResponseBuilder:
    """响应构建器 - 标准化所有工具的响应格式"""

    @staticmethod
    def success(data: Any = None, **kwargs) -> Dict[str, Any]:
        """构建成功响应

        Args:
            data: 响应数据，dict 会直接合并，其他类型放入 data 字段
            **kwargs: 额外的响应字段

        Returns:
            Dict[str, Any]: 标准化的成功响应
        """
        result: Dict[str, Any] = {"success": True}

        if data is not None:
            if isinstance(data, dict):
                result.update(data)
            else:
                result["data"] = data

        result.update(kwargs)
        return result

    @staticmethod
    def error(message: str, **kwargs) -> Dict[str, Any]:
        """构建错误响应

        Args:
            message: 错误消息
            **kwargs: 额外的错误详情字段

        Returns:
            Dict[str, Any]: 标准化的错误响应
        """
        result: Dict[str, Any] = {"success": False, "error": message}
        result.update(kwargs)
        return result

    @staticmethod
    def from_error(exc: QparError, **kwargs) -> Dict[str, Any]:
        """把工作台异常转换为错误响应（error_type 为异常类名）"""
        fields = exc.to_response_fields()
        fields.update(kwargs)
        return ResponseBuilder.error(exc.message, **fields)

    @staticmethod
    def validation_error(field: str, value: Any, expected: str) -> Dict[str, Any]:
        """构建参数验证错误响应

        Args:
            field: 验证失败的字段名
            value: 实际值
            expected: 期望值描述
        """
        return ResponseBuilder.error(
            f"Invalid {field}: {value}. Expected: {expected}",
            validation_error=True,
            field=field,
            actual_value=value,
            expected_value=expected,
        )

    @staticmethod
    def not_found_error(resource_type: str, identifier: str) -> Dict[str, Any]:
        """构建资源未找到错误响应（生成器、套件、文件）"""
        return ResponseBuilder.error(
            f"{resource_type.title()} not found: {identifier}",
            not_found=True,
            resource_type=resource_type,
            resource_id=identifier,
        )

    @staticmethod
    def list_result(
        items: List[Any], total_count: Optional[int] = None, **kwargs
    ) -> Dict[str, Any]:
        """构建列表结果响应

        Args:
            items: 列表项目
            total_count: 总数量（与返回数量不同时标记 filtered）
            **kwargs: 额外的元数据
        """
        result = ResponseBuilder.success(items=items, count=len(items), **kwargs)
        if total_count is not None and total_count != len(items):
            result["total_count"] = total_count
            result["filtered"] = True
        return result

    @staticmethod
    def status_result(
        status: str, details: Optional[Dict[str, Any]] = None, **kwargs
    ) -> Dict[str, Any]:
        """构建状态结果响应（验证套件 pass/fail）

        Args:
            status: 状态值 (pass/fail)
            details: 状态详情
            **kwargs: 额外的状态数据
        """
        result = ResponseBuilder.success(status=status, **kwargs)
        if details:
            result["details"] = details
        result["passed"] = status == "pass"
        return result

    @staticmethod
    def bound_result(kind: str, value: float, **kwargs) -> Dict[str, Any]:
        """构建下界数值响应

        构造出的见证矩阵只给出下界，统一标注 "witness lower bound"。
        """
        return ResponseBuilder.success(
            bound_kind=kind,
            value=float(value),
            label="witness lower bound",
            **kwargs,
        )
