# -*- coding: utf-8 -*-
"""
环与表达式 Schema
"""

from typing import Dict, List, Optional

from pydantic import Field, model_validator

from ...errors import UnitGroupError
from ...rings import RingKind, RingSpec, UnitGroup, check_unit_group
from .common import Document, StrictModel


class RingDoc(StrictModel):
    """系数环及 G"""
    kind: RingKind = RingKind.INTEGERS
    unit_group: UnitGroup = UnitGroup.SIGNS

    @model_validator(mode="after")
    def check_group(self):
        try:
            check_unit_group(self.kind, self.unit_group)
        except UnitGroupError as exc:
            raise ValueError(exc.message)
        return self

    def spec(self) -> RingSpec:
        return RingSpec(self.kind, self.unit_group)


class ExpressionItem(StrictModel):
    """一条表达式，expected 给出时与截断后的值比较"""
    text: str = Field(..., min_length=1)
    expected: Optional[str] = None


class ExpressionDocument(Document):
    expressions: List[ExpressionItem] = Field(..., min_length=1)
    # 覆盖命令行的截断指数
    cutoff: Optional[str] = None


class AssignmentDocument(Document):
    """秩一模型的单位指定：字母种类 → 环元素文本"""
    ring: RingDoc = RingDoc(kind=RingKind.NOVIKOV, unit_group=UnitGroup.FULL_UNITS)
    assignment: Dict[str, str] = {}
