# -*- coding: utf-8 -*-
"""
批处理任务 Schema
"""

from fractions import Fraction
from typing import List, Literal, Optional

from pydantic import Field, field_validator, model_validator

from ...errors import UnitGroupError
from ...rings import RingKind, UnitGroup, check_unit_group
from .common import StrictModel


CommandName = Literal[
    "ring-eval",
    "system-validate",
    "system-quotient",
    "system-tensor",
    "system-flatten",
    "mcg-factor",
    "mcg-act",
    "surgery-build",
    "psi-build",
    "coherence",
    "rank1-eval",
    "khm-check",
]

# 必须给出输入文件的命令
NEEDS_INPUT = {"system-quotient", "system-tensor", "system-flatten"}
# 只检查生成数据的命令
GENERATED_ONLY = {"coherence", "khm-check"}


class JobOptions(StrictModel):
    cutoff: str = "50"
    unit_group: Optional[UnitGroup] = None
    ring: Optional[RingKind] = None
    seed: int = 0
    cases: int = Field(default=200, ge=1)
    workers: int = Field(default=1, ge=1)
    output: Optional[str] = None
    text: bool = False

    @field_validator("cutoff")
    @classmethod
    def check_cutoff(cls, value: str) -> str:
        try:
            Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"截断指数不是有理数: {value!r}")
        return value

    def cutoff_fraction(self) -> Fraction:
        return Fraction(self.cutoff)


class JobSpec(StrictModel):
    """一次命令行调用"""
    command: CommandName
    inputs: List[str] = []
    # ring-eval 的行内表达式
    expressions: List[str] = []
    options: JobOptions = JobOptions()

    @model_validator(mode="after")
    def check_command(self):
        if self.command in NEEDS_INPUT and not self.inputs:
            raise ValueError(f"{self.command} 需要输入文件")
        if self.command in GENERATED_ONLY and self.inputs:
            raise ValueError(f"{self.command} 不接受输入文件")
        if self.command == "ring-eval" and not (self.inputs or self.expressions):
            raise ValueError("ring-eval 需要表达式或输入文件")
        if self.expressions and self.command != "ring-eval":
            raise ValueError("--expr 只用于 ring-eval")
        if self.options.ring is not None and self.command not in ("system-tensor", "rank1-eval"):
            raise ValueError("--ring 只用于 system-tensor 与 rank1-eval")
        if self.command == "system-tensor" and self.options.ring == RingKind.INTEGERS:
            raise ValueError("张量目标环不能是 Integers")
        if self.command == "rank1-eval" and self.options.ring is not None and self.options.unit_group is not None:
            try:
                check_unit_group(self.options.ring, self.options.unit_group)
            except UnitGroupError as exc:
                raise ValueError(exc.message)
        return self
