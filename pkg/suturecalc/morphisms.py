# -*- coding: utf-8 -*-
"""
闭包之间的形式态射
基本字母、态射字，以及同亏格、亏格跳跃、一般路径与微分同胚诱导的 Ψ 构造
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable, List, Optional, Sequence, Tuple, Union

from loguru import logger

from .closures import (
    ClosureDescriptor,
    ComplementMap,
    CutData,
    Diffeomorphism,
    GluingData,
    IntMatrix,
    cut_open,
    identity_key,
    to_array,
    to_key,
    twist_by,
)
from .errors import (
    ChainingError,
    ClosureDataError,
    EndpointMismatchError,
    EtaConditionError,
    NonUnitError,
    UnitGroupError,
)
from .mcg import CurveClass, TwistWord, factor_symplectic, is_symplectic, symplectic_inverse
from .rings import RingSpec, UnitGroup
from .surgery import SurgeryPresentation, build_surgery, presentation_action


class LetterKind(str, Enum):
    HANDLE_MINUS = "HandleMinus"
    HANDLE_PLUS = "HandlePlus"
    THETA = "Theta"
    SPLICE_MERGE = "SpliceMerge"
    SPLICE_SPLIT = "SpliceSplit"
    XI_MERGE = "XiMerge"
    UNIT_SCALAR = "UnitScalar"


@dataclass(frozen=True)
class HandlePayload:
    presentation: SurgeryPresentation
    base: ClosureDescriptor


@dataclass(frozen=True)
class ThetaPayload:
    complement_map: ComplementMap
    minus: IntMatrix
    plus: IntMatrix


@dataclass(frozen=True)
class SplicePayload:
    """unit_ambiguous: 映射环面模与 R 的识别只确定到单位"""
    cut: CutData
    unit_ambiguous: bool = True


@dataclass(frozen=True)
class UnitPayload:
    ring: RingSpec
    unit: Any


Payload = Union[HandlePayload, ThetaPayload, SplicePayload, UnitPayload, None]


def minus_closure(payload: HandlePayload) -> ClosureDescriptor:
    return payload.base.derive("minus", payload.presentation.key())


def plus_closure(payload: HandlePayload) -> ClosureDescriptor:
    return payload.base.derive("plus", payload.presentation.key())


# ==================== 基本字母 ====================

@dataclass(frozen=True)
class ElementaryMorphism:
    """
    态射字中的一个字母
    inverted 只用于 HandleMinus / HandlePlus / XiMerge，其余种类的逆在 payload 中体现
    """
    kind: LetterKind
    source: ClosureDescriptor
    target: ClosureDescriptor
    payload: Payload = None
    inverted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", LetterKind(self.kind))
        self._validate()

    def _endpoints(self, forward_source, forward_target):
        expected = (forward_target, forward_source) if self.inverted else (forward_source, forward_target)
        if (self.source, self.target) != expected:
            raise EndpointMismatchError(
                f"{self.kind.value} 字母的端点不符",
                {"source": self.source.id, "target": self.target.id},
            )

    def _validate(self):
        kind = self.kind
        if kind in (LetterKind.HANDLE_MINUS, LetterKind.HANDLE_PLUS):
            if not isinstance(self.payload, HandlePayload):
                raise ClosureDataError("手术字母缺少手术表示")
            if kind == LetterKind.HANDLE_MINUS:
                self._endpoints(minus_closure(self.payload), self.payload.base)
            else:
                self._endpoints(minus_closure(self.payload), plus_closure(self.payload))
        elif kind == LetterKind.THETA:
            if self.inverted or not isinstance(self.payload, ThetaPayload):
                raise ClosureDataError("Θ 字母的数据不合法")
            if self.source.genus != self.target.genus or self.source.marked != self.target.marked:
                raise ClosureDataError("Θ 只连接亏格与标记状态相同的闭包")
            cmap = self.payload.complement_map
            if cmap.source != self.source.complement_tag or cmap.target != self.target.complement_tag:
                raise EndpointMismatchError("Θ 的补空间映射端点与闭包标签不符")
            n = self.source.surface.dimension
            for name in ("minus", "plus"):
                matrix = to_array(getattr(self.payload, name))
                if matrix.shape != (n, n) or not is_symplectic(matrix):
                    raise ClosureDataError(f"Θ 的 {name} 不是 {n}×{n} 辛矩阵")
        elif kind in (LetterKind.SPLICE_MERGE, LetterKind.SPLICE_SPLIT):
            if self.inverted or not isinstance(self.payload, SplicePayload):
                raise ClosureDataError("拼接字母缺少切割数据")
            child = cut_open(self.payload.cut)
            parent = self.payload.cut.parent
            if kind == LetterKind.SPLICE_MERGE:
                self._endpoints(child, parent)
            else:
                self._endpoints(parent, child)
        elif kind == LetterKind.XI_MERGE:
            plain, marked = (self.target, self.source) if self.inverted else (self.source, self.target)
            if plain.marked or not marked.marked or marked.strip() != plain:
                raise ClosureDataError("Ξ 字母必须从非标记闭包指向同一闭包的标记版本")
        elif kind == LetterKind.UNIT_SCALAR:
            if not isinstance(self.payload, UnitPayload) or self.source != self.target:
                raise ClosureDataError("单位标量字母必须是自映射")
            if self.payload.ring.ops.unit_inverse(self.payload.unit) is None:
                raise NonUnitError(
                    "单位标量必须在环中精确可逆",
                    {"unit": self.payload.ring.ops.format(self.payload.unit)},
                )
            ring = self.payload.ring
            if ring.unit_group != UnitGroup.FULL_UNITS and not ring.ops.in_group(self.payload.unit, ring.unit_group):
                raise UnitGroupError(
                    f"单位标量不在 G={ring.unit_group.value} 中",
                    {"unit": ring.ops.format(self.payload.unit)},
                )

    def inverse(self) -> "ElementaryMorphism":
        kind = self.kind
        if kind == LetterKind.THETA:
            p = self.payload
            return ElementaryMorphism(
                kind,
                self.target,
                self.source,
                ThetaPayload(
                    p.complement_map.inverse(),
                    to_key(symplectic_inverse(to_array(p.minus))),
                    to_key(symplectic_inverse(to_array(p.plus))),
                ),
            )
        if kind == LetterKind.SPLICE_MERGE:
            return ElementaryMorphism(LetterKind.SPLICE_SPLIT, self.target, self.source, self.payload)
        if kind == LetterKind.SPLICE_SPLIT:
            return ElementaryMorphism(LetterKind.SPLICE_MERGE, self.target, self.source, self.payload)
        if kind == LetterKind.UNIT_SCALAR:
            ring = self.payload.ring
            return ElementaryMorphism(
                kind, self.source, self.target, UnitPayload(ring, ring.ops.unit_inverse(self.payload.unit))
            )
        return ElementaryMorphism(kind, self.target, self.source, self.payload, not self.inverted)

    def describe(self) -> str:
        name = self.kind.value + ("⁻¹" if self.inverted else "")
        return f"{name}({self.source.id} → {self.target.id})"


def theta(source: ClosureDescriptor, target: ClosureDescriptor, complement_map: ComplementMap, minus, plus) -> ElementaryMorphism:
    return ElementaryMorphism(
        LetterKind.THETA, source, target, ThetaPayload(complement_map, to_key(minus), to_key(plus))
    )


def is_identity_theta(letter: ElementaryMorphism) -> bool:
    if letter.kind != LetterKind.THETA or letter.source != letter.target:
        return False
    p = letter.payload
    n = letter.source.surface.dimension
    return p.complement_map.is_identity() and p.minus == identity_key(n) and p.plus == identity_key(n)


def splice_merge(cut: CutData) -> ElementaryMorphism:
    return ElementaryMorphism(LetterKind.SPLICE_MERGE, cut_open(cut), cut.parent, SplicePayload(cut))


def splice_split(cut: CutData) -> ElementaryMorphism:
    return splice_merge(cut).inverse()


def xi_merge(closure: ClosureDescriptor, eta) -> ElementaryMorphism:
    """Ξ: D → D^η"""
    return ElementaryMorphism(LetterKind.XI_MERGE, closure, closure.mark(eta))


def unit_scalar(closure: ClosureDescriptor, ring: RingSpec, unit) -> ElementaryMorphism:
    return ElementaryMorphism(LetterKind.UNIT_SCALAR, closure, closure, UnitPayload(ring, ring.ops.check(unit)))


def handle_theta(payload: HandlePayload) -> ElementaryMorphism:
    """
    HM(X₋)⁻¹ 与 HM(X₊) 的复合记为 base → (Y)_+ 的 Θ
    补空间不变，两侧矩阵为手术表示在 B 段与 A 段上的作用
    """
    upper, lower = presentation_action(payload.presentation)
    base = payload.base
    return theta(
        base,
        plus_closure(payload),
        ComplementMap.identity(base.complement_tag),
        lower,
        symplectic_inverse(upper),
    )


# ==================== 态射字 ====================

@dataclass(frozen=True)
class MorphismWord:
    """按作用顺序排列的字母（第一个字母最先作用）"""
    source: ClosureDescriptor
    target: ClosureDescriptor
    letters: Tuple[ElementaryMorphism, ...] = ()

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        node = self.source
        for index, letter in enumerate(letters):
            if letter.source != node:
                raise ChainingError(
                    f"第 {index} 个字母的源 {letter.source.id} 与前一字母的目标 {node.id} 不符",
                    {"index": index},
                )
            node = letter.target
        if node != self.target:
            raise ChainingError(f"态射字终点 {node.id} 与声明的 {self.target.id} 不符")

    @classmethod
    def identity(cls, closure: ClosureDescriptor) -> "MorphismWord":
        return cls(closure, closure, ())

    @classmethod
    def of(cls, letters: Sequence[ElementaryMorphism]) -> "MorphismWord":
        if not letters:
            raise ChainingError("空字母序列无法推断端点")
        return cls(letters[0].source, letters[-1].target, tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def then(self, other: "MorphismWord") -> "MorphismWord":
        """先 self 再 other"""
        if self.target != other.source:
            raise ChainingError(f"无法连接: {self.target.id} ≠ {other.source.id}")
        return MorphismWord(self.source, other.target, self.letters + other.letters)

    def inverse(self) -> "MorphismWord":
        return MorphismWord(self.target, self.source, tuple(l.inverse() for l in reversed(self.letters)))

    def kinds(self) -> List[str]:
        return [l.kind.value + ("⁻¹" if l.inverted else "") for l in self.letters]


def compose_words(words: Iterable[MorphismWord]) -> MorphismWord:
    result: Optional[MorphismWord] = None
    for word in words:
        result = word if result is None else result.then(word)
    if result is None:
        raise ChainingError("没有可复合的态射字")
    return result


# ==================== Ψ 构造 ====================

def psi_same_genus(
    source: ClosureDescriptor,
    target: ClosureDescriptor,
    gluing: GluingData,
    positive_only: bool = False,
    generators: Optional[Sequence[CurveClass]] = None,
) -> MorphismWord:
    """
    同亏格闭包之间的 Ψ：手术 (Y)→(Y)_−→(Y)_+ 再接 Θ

    Args:
        gluing: 从 source 到 target 的粘合数据；非标记闭包忽略 ψ
        positive_only: 扭转分解只使用正扭转
    """
    if source.genus != target.genus:
        raise ClosureDataError(f"同亏格 Ψ 要求亏格相同: {source.genus} ≠ {target.genus}")
    if gluing.source != source or gluing.target != target:
        raise EndpointMismatchError(
            "粘合数据的端点与给定闭包不符",
            {"source": gluing.source.id, "target": gluing.target.id},
        )
    phi_minus = to_array(gluing.phi_minus)
    if source.marked:
        psi = to_array(gluing.psi)
        image = phi_minus.dot(psi).dot(source.eta.array())
        if tuple(int(x) for x in image) != target.eta.vector:
            raise EtaConditionError("η 条件不成立: (φ_−·ψ)(η) ≠ η′")
        upper = factor_symplectic(gluing.phi.dot(psi), generators, positive_only, source.surface)
        lower = factor_symplectic(symplectic_inverse(psi), generators, positive_only, source.surface)
        frame = phi_minus.dot(psi)
    else:
        upper = factor_symplectic(gluing.phi, generators, positive_only, source.surface)
        lower = TwistWord(source.surface, ())
        frame = phi_minus

    presentation = build_surgery(upper + lower, split=len(upper))
    payload = HandlePayload(presentation, source)
    d_minus, d_plus = minus_closure(payload), plus_closure(payload)
    letters = (
        ElementaryMorphism(LetterKind.HANDLE_MINUS, source, d_minus, payload, inverted=True),
        ElementaryMorphism(LetterKind.HANDLE_PLUS, d_minus, d_plus, payload),
        theta(d_plus, target, gluing.complement_map, frame, frame),
    )
    logger.debug(f"Ψ {source.id} → {target.id}: A 长 {len(upper)}, B 长 {len(lower)}")
    return MorphismWord(source, target, letters)


@dataclass(frozen=True)
class SameGenusStep:
    gluing: GluingData

    @property
    def source(self) -> ClosureDescriptor:
        return self.gluing.source

    @property
    def target(self) -> ClosureDescriptor:
        return self.gluing.target


@dataclass(frozen=True)
class GenusStep:
    """
    亏格 g 的 lower 与亏格 g+1 的 upper 之间的一步
    enter 把 lower 粘到切开后的子闭包，exit 把切割父闭包粘到 upper；端点重合时可为 None
    """
    lower: ClosureDescriptor
    upper: ClosureDescriptor
    cut: CutData
    enter: Optional[GluingData] = None
    exit: Optional[GluingData] = None
    descending: bool = False

    @property
    def source(self) -> ClosureDescriptor:
        return self.upper if self.descending else self.lower

    @property
    def target(self) -> ClosureDescriptor:
        return self.lower if self.descending else self.upper

    def reversed(self) -> "GenusStep":
        return GenusStep(self.lower, self.upper, self.cut, self.enter, self.exit, not self.descending)


Step = Union[SameGenusStep, GenusStep]


def _leg(source, target, gluing, **options) -> MorphismWord:
    if gluing is None:
        if source != target:
            raise EndpointMismatchError(f"缺少粘合数据: {source.id} → {target.id}")
        return MorphismWord.identity(source)
    return psi_same_genus(source, target, gluing, **options)


def psi_genus_step(step: GenusStep, **options) -> MorphismWord:
    """升亏格：lower →Ψ 子闭包 →拼接 父闭包 →Ψ upper；降亏格取逆"""
    lower, upper, cut = step.lower, step.upper, step.cut
    if upper.genus != lower.genus + 1 or cut.parent.genus != upper.genus:
        raise ClosureDataError(
            "亏格跳跃步的亏格不符",
            {"lower": lower.genus, "upper": upper.genus, "parent": cut.parent.genus},
        )
    child = cut_open(cut)
    ascending = compose_words([
        _leg(lower, child, step.enter, **options),
        MorphismWord(child, cut.parent, (splice_merge(cut),)),
        _leg(cut.parent, upper, step.exit, **options),
    ])
    return ascending.inverse() if step.descending else ascending


def psi_general(
    source: ClosureDescriptor,
    target: ClosureDescriptor,
    steps: Sequence[Step],
    **options,
) -> MorphismWord:
    """沿闭包路径复合各步的 Ψ，相邻闭包亏格差至多为一"""
    if not steps:
        if source != target:
            raise ChainingError(f"空路径无法连接 {source.id} 与 {target.id}")
        return MorphismWord.identity(source)
    words = []
    node = source
    for index, step in enumerate(steps):
        if step.source != node:
            raise ChainingError(f"第 {index} 步的起点 {step.source.id} 不是 {node.id}", {"index": index})
        if isinstance(step, SameGenusStep):
            words.append(psi_same_genus(step.source, step.target, step.gluing, **options))
        elif isinstance(step, GenusStep):
            words.append(psi_genus_step(step, **options))
        else:
            raise ChainingError(f"无法识别的路径步: {type(step).__name__}")
        node = step.target
    if node != target:
        raise ChainingError(f"路径终点 {node.id} 不是 {target.id}")
    return compose_words(words)


def diffeo_map(
    f: Diffeomorphism,
    source: ClosureDescriptor,
    target: ClosureDescriptor,
    steps: Sequence[Step],
    **options,
) -> MorphismWord:
    """
    Ψ_{f,D,D′} = Θ(D′_f → D′) ∘ Ψ_{D,D′_f}

    Args:
        f: source 所在流形到 target 所在流形的微分同胚
        steps: 从 source 到 D′_f 的路径
    """
    if source.manifold != f.source:
        raise ClosureDataError(f"{source.id} 不是 {f.source} 的闭包")
    twisted = twist_by(target, f)
    word = psi_general(source, twisted, steps, **options)
    if twisted == target:
        return word
    n = target.surface.dimension
    closing = theta(twisted, target, ComplementMap.identity(target.complement_tag), identity_key(n), identity_key(n))
    return word.then(MorphismWord(twisted, target, (closing,)))


def xi_comparison(
    source: ClosureDescriptor,
    target: ClosureDescriptor,
    eta,
    gluing: GluingData,
    **options,
) -> MorphismWord:
    """Ξ_{D,D′} = Ψ_{D^η,D′} ∘ Ξ_{D,D^η}，source 为非标记闭包，target 为标记闭包"""
    letter = xi_merge(source, eta)
    return MorphismWord(source, letter.target, (letter,)).then(
        psi_same_genus(letter.target, target, gluing, **options)
    )
