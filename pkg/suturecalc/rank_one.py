# -*- coding: utf-8 -*-
"""
秩一模型
每类字母指定一个单位，态射字的值为按顺序的乘积，用于检查态射在 G-等价意义下相同
"""

from typing import Any, Dict, Mapping, Union

from .errors import NonUnitError, UnitGroupError
from .modules import FreeModule, Homomorphism, g_equivalent
from .morphisms import LetterKind, MorphismWord
from .rings import RingKind, RingSpec, UnitGroup


DEFAULT_RING = RingSpec(RingKind.NOVIKOV, UnitGroup.FULL_UNITS)

# Lefschetz 型手术字母在任何 G 下都只能取 ±1
SIGN_ONLY = (LetterKind.HANDLE_MINUS, LetterKind.HANDLE_PLUS, LetterKind.XI_MERGE)


def normalize_assignment(assignment: Mapping[Union[str, LetterKind], Any], ring: RingSpec = DEFAULT_RING) -> Dict[LetterKind, Any]:
    """
    校验并规范化字母种类到单位的指定

    Args:
        assignment: 未列出的种类取 1；SpliceSplit 取 SpliceMerge 的逆
        ring: 系数环及 G

    Returns:
        LetterKind → 环元素
    """
    ops = ring.ops
    result: Dict[LetterKind, Any] = {}
    for key, value in assignment.items():
        kind = LetterKind(key)
        if kind in (LetterKind.UNIT_SCALAR, LetterKind.SPLICE_SPLIT):
            raise UnitGroupError(f"{kind.value} 的值不能单独指定")
        element = ops.parse(value) if isinstance(value, str) else ops.check(value)
        if ops.unit_inverse(element) is None:
            raise NonUnitError(f"{kind.value} 的值不是可逆单位", {"value": ops.format(element)})
        signed = ops.in_group(element, UnitGroup.SIGNS)
        if kind in SIGN_ONLY and not signed:
            raise UnitGroupError(f"{kind.value} 只能取 ±1", {"value": ops.format(element)})
        if ring.unit_group != UnitGroup.FULL_UNITS and not ops.in_group(element, ring.unit_group):
            raise UnitGroupError(
                f"{kind.value} 的值不在 G={ring.unit_group.value} 中", {"value": ops.format(element)}
            )
        result[kind] = element
    for kind in LetterKind:
        if kind not in (LetterKind.UNIT_SCALAR, LetterKind.SPLICE_SPLIT):
            result.setdefault(kind, ops.one())
    result[LetterKind.SPLICE_SPLIT] = ops.unit_inverse(result[LetterKind.SPLICE_MERGE])
    return result


def evaluate_rank_one(word: MorphismWord, assignment: Mapping[Union[str, LetterKind], Any], ring: RingSpec = DEFAULT_RING):
    """字的值：逐字母相乘，带 inverted 标记的字母取逆，UnitScalar 贡献其自身的单位"""
    ops = ring.ops
    values = normalize_assignment(assignment, ring)
    result = ops.one()
    for letter in word.letters:
        if letter.kind == LetterKind.UNIT_SCALAR:
            if not letter.payload.ring.same_ring(ring):
                raise UnitGroupError("单位标量所在的环与求值环不一致")
            value = letter.payload.unit
            # 规范形式忽略标量，只有 G 中的标量才不改变 G-等价类
            if ring.unit_group != UnitGroup.FULL_UNITS and not ops.in_group(value, ring.unit_group):
                raise UnitGroupError(
                    f"单位标量不在 G={ring.unit_group.value} 中", {"value": ops.format(value)}
                )
        else:
            value = values[letter.kind]
            if letter.inverted:
                value = ops.unit_inverse(value)
        result = ops.mul(result, value)
    return result


def rank_one_homomorphism(word: MorphismWord, assignment, ring: RingSpec = DEFAULT_RING) -> Homomorphism:
    """字在秩一自由模 R 上的作用"""
    module = FreeModule(ring, 1)
    return Homomorphism(module, module, ((evaluate_rank_one(word, assignment, ring),),))


def rank_one_agree(first: MorphismWord, second: MorphismWord, assignment, ring: RingSpec = DEFAULT_RING) -> bool:
    return g_equivalent(
        rank_one_homomorphism(first, assignment, ring),
        rank_one_homomorphism(second, assignment, ring),
        ring.unit_group,
    )
