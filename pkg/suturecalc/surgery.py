# -*- coding: utf-8 -*-
"""
手术表示模块
把扭转字放到 R × F 的高度上，得到 ±1 框架的手术表示及其同调作用
"""

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from .errors import SurfaceMismatchError
from .mcg import (
    CurveClass,
    SurfaceModel,
    TwistLetter,
    TwistWord,
    default_generators,
    factor_symplectic,
    identity_matrix,
    twist_matrix,
)


UPPER_BAND = (Fraction(1, 4), Fraction(3, 4))
LOWER_BAND = (Fraction(-3, 4), Fraction(-1, 4))


@dataclass(frozen=True)
class SurgeryEntry:
    curve: CurveClass
    height: Fraction
    framing: int
    cancelling_partner: Optional[Fraction] = None


@dataclass(frozen=True)
class SurgeryPresentation:
    """按高度严格递减排列的手术曲线"""
    surface: SurfaceModel
    entries: Tuple[SurgeryEntry, ...]

    def key(self) -> str:
        text = ";".join(
            f"{e.curve.vector}@{e.height}/{e.framing}/{e.cancelling_partner}" for e in self.entries
        )
        return hashlib.sha1(f"{self.surface.genus}|{text}".encode("utf-8")).hexdigest()[:12]

    def upper(self) -> Tuple[SurgeryEntry, ...]:
        return tuple(e for e in self.entries if e.height > 0)

    def lower(self) -> Tuple[SurgeryEntry, ...]:
        return tuple(e for e in self.entries if e.height < 0)


def _heights(count: int, top: Fraction) -> List[Fraction]:
    """在 (top − 1/2, top) 中等距放置 count 个高度，递减"""
    if count == 1:
        return [top - Fraction(1, 4)]
    return [top - Fraction(i, 2 * (count + 1)) for i in range(1, count + 1)]


def _place(letters: Sequence[TwistLetter], top: Fraction) -> List[SurgeryEntry]:
    heights = _heights(len(letters), top)
    entries = []
    for i, (letter, height) in enumerate(zip(letters, heights)):
        if letter.sign == 1:
            entries.append(SurgeryEntry(letter.curve, height, -1))
            continue
        upper = top if i == 0 else heights[i - 1]
        entries.append(SurgeryEntry(letter.curve, height, 1, (height + upper) / 2))
    return entries


def build_surgery(word: TwistWord, split: Optional[int] = None) -> SurgeryPresentation:
    """
    把字 w = A·B 放到高度上

    Args:
        word: 扭转字，正字母得到 −1 框架，负字母得到 +1 框架及其抵消伙伴高度
        split: A 的长度，前 split 个字母放在 (1/4, 3/4)，其余放在 (−3/4, −1/4)；默认全部属于 A
    """
    split = len(word) if split is None else split
    if not 0 <= split <= len(word):
        raise ValueError(f"split 超出范围: {split}")
    upper = _place(word.letters[:split], UPPER_BAND[1])
    lower = _place(word.letters[split:], LOWER_BAND[1])
    presentation = SurgeryPresentation(word.surface, tuple(upper + lower))
    logger.debug(f"手术表示: {len(upper)} 条上层曲线, {len(lower)} 条下层曲线")
    return presentation


def validate_presentation(presentation: SurgeryPresentation) -> List[str]:
    """返回所有违反的条件，空列表表示合法"""
    problems = []
    entries = presentation.entries
    for band, part in ((UPPER_BAND, presentation.upper()), (LOWER_BAND, presentation.lower())):
        previous = band[1]
        for entry in part:
            if not band[0] < entry.height < band[1]:
                problems.append(f"高度 {entry.height} 不在 ({band[0]}, {band[1]}) 内")
            if entry.height >= previous:
                problems.append(f"高度 {entry.height} 没有严格递减")
            if entry.framing not in (1, -1):
                problems.append(f"框架 {entry.framing} 不是 ±1")
            elif entry.framing == 1:
                partner = entry.cancelling_partner
                if partner is None or not entry.height < partner < previous:
                    problems.append(f"+1 曲线 {entry.curve.label()} 的抵消高度不在 ({entry.height}, {previous}) 内")
            elif entry.cancelling_partner is not None:
                problems.append(f"−1 曲线 {entry.curve.label()} 不应带抵消高度")
            previous = entry.height
    if any(e.height == 0 for e in entries):
        problems.append("高度 0 被占用")
    for entry in entries:
        if entry.curve.surface.genus != presentation.surface.genus:
            problems.append(f"曲线 {entry.curve.label()} 不在曲面上")
    return problems


def _band_action(entries: Sequence[SurgeryEntry], dimension: int) -> np.ndarray:
    result = identity_matrix(dimension)
    for entry in entries:
        result = result.dot(twist_matrix(entry.curve, -entry.framing))
    return result


def presentation_action(presentation: SurgeryPresentation) -> Tuple[np.ndarray, np.ndarray]:
    """上下两层的同调作用 (A, B)，各自按高度递减相乘"""
    n = presentation.surface.dimension
    return _band_action(presentation.upper(), n), _band_action(presentation.lower(), n)


def eliminate_negative_twists(word: TwistWord, generators: Optional[Sequence[CurveClass]] = None) -> TwistWord:
    """每个负字母 D_c⁻¹ 换成其同调作用的正分解"""
    letters: List[TwistLetter] = []
    for letter in word.letters:
        if letter.sign == 1:
            letters.append(letter)
            continue
        replacement = factor_symplectic(
            twist_matrix(letter.curve, -1),
            generators=list(generators) if generators else default_generators(word.surface),
            positive_only=True,
            surface=word.surface,
        )
        letters.extend(replacement.letters)
    return TwistWord(word.surface, tuple(letters))


def cancellation_presentation(word: TwistWord, generators: Optional[Sequence[CurveClass]] = None) -> SurgeryPresentation:
    """
    抵消模型：对每个负字母，在抵消高度放一条 −1 曲线，
    并在 (t_i, t′_i) 内放其正替换字；整体同调作用为恒等
    """
    base = build_surgery(word)
    entries: List[SurgeryEntry] = []
    for entry in base.entries:
        if entry.framing != 1:
            continue
        top = entry.cancelling_partner
        entries.append(SurgeryEntry(entry.curve, top, -1))
        replacement = eliminate_negative_twists(
            TwistWord(word.surface, (TwistLetter(entry.curve, -1),)), generators
        )
        count = len(replacement)
        for j, letter in enumerate(replacement.letters, start=1):
            if letter.sign != 1:
                raise SurfaceMismatchError("正替换字中出现负字母")
            height = entry.height + (top - entry.height) * Fraction(count + 1 - j, count + 1)
            entries.append(SurgeryEntry(letter.curve, height, -1))
    return SurgeryPresentation(word.surface, tuple(entries))
