# -*- coding: utf-8 -*-
"""
异常定义模块
所有对外抛出的错误都继承自 SutureCalcError
"""

from typing import Any, Dict, Optional


class SutureCalcError(Exception):
    """基础异常，message 为可读说明，detail 为可序列化的附加信息"""

    def __init__(self, message: str, detail: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.detail = detail or {}

    def to_dict(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": self.message, "detail": self.detail}


# ==================== Novikov 环 ====================

class NoLeadingTermError(SutureCalcError):
    """零元素没有首项"""


class NonUnitError(SutureCalcError):
    """元素不是单位"""


class ExpressionParseError(SutureCalcError):
    """表达式解析失败，position 为出错的字符位置"""

    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(message, {"position": position, "text": text})
        self.position = position
        self.text = text


# ==================== 模与同态 ====================

class DimensionMismatchError(SutureCalcError):
    pass


class RingMismatchError(SutureCalcError):
    pass


class UnitGroupError(SutureCalcError):
    pass


# ==================== 传递系统 ====================

class SystemAxiomError(SutureCalcError):
    """系统公理不成立，violations 为违例列表"""

    def __init__(self, message: str, violations=None):
        super().__init__(message, {"violations": [str(v) for v in (violations or [])]})
        self.violations = list(violations or [])


class MorphismMismatchError(SutureCalcError):
    pass


class QuotientError(SutureCalcError):
    pass


# ==================== 曲面同调 ====================

class SurfaceMismatchError(SutureCalcError):
    pass


class NonPrimitiveCurveError(SutureCalcError):
    pass


class NotSymplecticError(SutureCalcError):
    pass


class FactorizationError(SutureCalcError):
    pass


# ==================== 闭包演算 ====================

class ClosureDataError(SutureCalcError):
    pass


class EtaConditionError(ClosureDataError):
    """η 条件 (φ_−·ψ)(η) = η′ 不成立"""


class CutDataError(ClosureDataError):
    pass


class ChainingError(SutureCalcError):
    """字母端点无法首尾相接"""


class EndpointMismatchError(SutureCalcError):
    pass


# ==================== 命令行 ====================

class DocumentError(SutureCalcError):
    """输入文档解析失败，location 指出出错位置"""

    def __init__(self, message: str, location: str):
        super().__init__(message, {"location": location})
        self.location = location
