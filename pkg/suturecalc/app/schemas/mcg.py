# -*- coding: utf-8 -*-
"""
映射类群 Schema
"""

from typing import List, Literal, Optional

from pydantic import Field, StrictInt, model_validator

from ...mcg import SurfaceModel, TwistWord, as_matrix, word_from_vectors
from .common import Document, StrictModel


IntRows = List[List[StrictInt]]


class LetterDoc(StrictModel):
    curve: List[StrictInt] = Field(..., min_length=2)
    sign: Literal[1, -1] = 1


class WordBody(StrictModel):
    """{"genus": g, "letters": [{"curve": [...], "sign": ±1}]}"""
    genus: int = Field(..., ge=1)
    letters: List[LetterDoc] = []

    @model_validator(mode="after")
    def check_lengths(self):
        for i, letter in enumerate(self.letters):
            if len(letter.curve) != 2 * self.genus:
                raise ValueError(f"letters[{i}].curve 的长度应为 {2 * self.genus}")
        return self

    def build(self) -> TwistWord:
        return word_from_vectors(SurfaceModel(self.genus), [(l.curve, l.sign) for l in self.letters])


def _check_square(rows: IntRows, name: str):
    n = len(rows)
    if n == 0 or n % 2 or any(len(r) != n for r in rows):
        raise ValueError(f"{name} 必须是偶数阶方阵")


class FactorDocument(Document):
    matrices: List[IntRows] = Field(..., min_length=1)
    positive_only: bool = False
    # 缺省为 a_i, b_i, a_i − a_{i+1}
    generators: Optional[IntRows] = None

    @model_validator(mode="after")
    def check_matrices(self):
        for i, rows in enumerate(self.matrices):
            _check_square(rows, f"matrices[{i}]")
        return self

    def arrays(self):
        return [as_matrix(rows) for rows in self.matrices]


class ActDocument(Document):
    word: WordBody
    curves: IntRows = []

    @model_validator(mode="after")
    def check_curves(self):
        for i, curve in enumerate(self.curves):
            if len(curve) != 2 * self.word.genus:
                raise ValueError(f"curves[{i}] 的长度应为 {2 * self.word.genus}")
        return self


class SurgeryDocument(Document):
    word: WordBody
    # A 部分的长度，缺省为整个字
    split: Optional[int] = Field(default=None, ge=0)
