# -*- coding: utf-8 -*-
"""
通用 Schema
"""

import json
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, StrictInt


FORMAT_VERSION = 1

# 矩阵元素：整数或环元素文本
Entry = Union[StrictInt, str]


class StrictModel(BaseModel):
    """拒绝未知字段的基础模型"""
    model_config = ConfigDict(extra="forbid")


class Document(StrictModel):
    """输入文档的顶层模型"""
    format_version: Literal[1] = FORMAT_VERSION


class CheckRecord(BaseModel):
    """单项检查结果"""
    index: int
    name: str
    relation: str
    passed: bool
    inputs: Dict[str, Any] = {}
    result: Any = None


class Report(BaseModel):
    """报告文档"""
    format_version: int = FORMAT_VERSION
    command: str
    status: Literal["pass", "fail", "error"]
    checks: List[CheckRecord] = []
    counterexample: Optional[Dict[str, Any]] = None
    error: Optional[Dict[str, Any]] = None

    @classmethod
    def from_checks(cls, command: str, checks: List[CheckRecord]) -> "Report":
        failed = next((c for c in checks if not c.passed), None)
        return cls(
            command=command,
            status="pass" if failed is None else "fail",
            checks=checks,
            counterexample=failed.model_dump() if failed is not None else None,
        )

    @classmethod
    def from_error(cls, command: str, error: Dict[str, Any]) -> "Report":
        return cls(command=command, status="error", error=error)

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "error": 2}[self.status]

    def to_json(self) -> str:
        """键排序后的稳定输出，相同输入得到相同字节"""
        return json.dumps(self.model_dump(), sort_keys=True, indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        failed = sum(1 for c in self.checks if not c.passed)
        lines = [f"{self.command}: {self.status} ({len(self.checks)} 项检查, {failed} 项失败)"]
        for check in self.checks:
            mark = "✓" if check.passed else "✗"
            lines.append(f"  {mark} [{check.index}] {check.name} ({check.relation})")
        if self.error:
            lines.append(f"  错误: {self.error.get('message', '')} @ {self.error.get('detail', {}).get('location', '')}")
        return "\n".join(lines)
