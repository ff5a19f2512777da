# -*- coding: utf-8 -*-
"""
带基点纽结的嵌入簿记
每个嵌入标签对应一个射影传递系统，嵌套的标签之间有生成映射，
一般情形经共同加细得到连接态射，最后展平为一个传递系统
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Set

from loguru import logger

from .errors import ClosureDataError
from .modules import Homomorphism, compose_hom, inverse_class, scale
from .novikov import exp_hom
from .rings import RingKind, UnitGroup
from .transys import (
    SystemMorphism,
    SystemOfSystems,
    TransitiveSystem,
    compose_system_morphisms,
    flatten_system_of_systems,
    identity_morphism,
    inverse_morphism,
    morphisms_equal,
    transport_morphism,
)


class EmbeddingKind(str, Enum):
    KNOT = "knot"
    POINT = "point"


@dataclass(frozen=True)
class EmbeddingTag:
    """
    纽结（或基点小球）邻域的嵌入标签
    shift 为生成映射附带的 t 指数权重
    """
    name: str
    kind: EmbeddingKind = EmbeddingKind.KNOT
    shift: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "kind", EmbeddingKind(self.kind))
        object.__setattr__(self, "shift", Fraction(self.shift))


class NestingPoset:
    """嵌套关系的传递闭包；inner 嵌套在 outer 中表示 inner 的邻域含于 outer 的邻域"""

    def __init__(self, tags: Sequence[EmbeddingTag] = ()):
        self.tags: Dict[str, EmbeddingTag] = {}
        self._inside: Dict[str, Set[str]] = {}
        for tag in tags:
            self.add(tag)

    def add(self, tag: EmbeddingTag) -> EmbeddingTag:
        if tag.name in self.tags:
            raise ClosureDataError(f"嵌入标签重复: {tag.name}")
        self.tags[tag.name] = tag
        self._inside[tag.name] = set()
        return tag

    def nest(self, inner: str, outer: str):
        for name in (inner, outer):
            if name not in self.tags:
                raise ClosureDataError(f"未知的嵌入标签: {name}")
        if inner == outer or outer in self._inside[inner]:
            raise ClosureDataError(f"嵌套关系成环: {inner} ⊂ {outer}")
        moved = {inner} | self._inside[inner]
        for name, inside in self._inside.items():
            if name == outer or outer in inside:
                inside.update(moved)

    def is_nested(self, inner: str, outer: str) -> bool:
        return inner == outer or inner in self._inside[outer]

    def lower_bounds(self, first: str, second: str) -> List[str]:
        return sorted(n for n in self.tags if self.is_nested(n, first) and self.is_nested(n, second))

    def refinement(self, first: str, second: str, fresh: bool = False) -> str:
        """
        两个标签的共同加细

        Args:
            fresh: 为 True 时总是新建一个同时嵌套在两者中的标签
        """
        if not fresh:
            bounds = self.lower_bounds(first, second)
            if bounds:
                return bounds[0]
        name = f"({first}∧{second})"
        serial = 1
        while name in self.tags:
            serial += 1
            name = f"({first}∧{second})#{serial}"
        self.add(EmbeddingTag(name, self.tags[first].kind, self.tags[first].shift))
        self.nest(name, first)
        self.nest(name, second)
        return name


@dataclass
class KnotHomologyModel:
    """
    每个标签 φ 的内层系统 S_φ、基指标及标架同构 E_φ: M_{φ,base} → V
    新建的加细标签沿用其外层标签的系统与标架
    """
    poset: NestingPoset
    systems: Dict[str, TransitiveSystem] = field(default_factory=dict)
    frames: Dict[str, Homomorphism] = field(default_factory=dict)
    bases: Dict[str, str] = field(default_factory=dict)

    def register(self, tag: str, system: TransitiveSystem, frame: Homomorphism, base: Optional[str] = None):
        if system.ring.kind != RingKind.NOVIKOV or system.unit_group != UnitGroup.FULL_UNITS:
            raise ClosureDataError("纽结模型的内层系统必须是 Novikov 环上的射影传递系统")
        self.systems[tag] = system
        self.frames[tag] = frame
        self.bases[tag] = base if base is not None else system.indices[0]

    def ensure(self, tag: str):
        if tag in self.systems:
            return
        outers = sorted(n for n in self.systems if self.poset.is_nested(tag, n))
        if not outers:
            raise ClosureDataError(f"标签 {tag} 没有可沿用的外层系统")
        source = outers[0]
        self.register(tag, self.systems[source], self.frames[source], self.bases[source])


def nested_generator(model: KnotHomologyModel, outer: str, inner: str) -> SystemMorphism:
    """inner 嵌套在 outer 中时的生成映射 Ψ_{outer,inner}"""
    if not model.poset.is_nested(inner, outer):
        raise ClosureDataError(f"{inner} 没有嵌套在 {outer} 中")
    model.ensure(outer)
    model.ensure(inner)
    weight = model.poset.tags[inner].shift - model.poset.tags[outer].shift
    link = scale(
        exp_hom(weight),
        compose_hom(inverse_class(model.frames[inner], UnitGroup.FULL_UNITS), model.frames[outer]),
    )
    return transport_morphism(
        model.systems[outer], model.systems[inner], link, model.bases[outer], model.bases[inner]
    )


def khm_psi(model: KnotHomologyModel, phi: str, phi_prime: str, refinement: Optional[str] = None) -> SystemMorphism:
    """
    外层连接态射 Ψ_{φ,φ′}

    Args:
        refinement: 指定的共同加细 φ″；缺省时取已有的下界或新建一个
    """
    poset = model.poset
    model.ensure(phi)
    model.ensure(phi_prime)
    if phi == phi_prime:
        return identity_morphism(model.systems[phi])
    if poset.is_nested(phi_prime, phi) and refinement is None:
        return nested_generator(model, phi, phi_prime)
    if poset.is_nested(phi, phi_prime) and refinement is None:
        return inverse_morphism(nested_generator(model, phi_prime, phi))
    common = refinement or poset.refinement(phi, phi_prime)
    if not (poset.is_nested(common, phi) and poset.is_nested(common, phi_prime)):
        raise ClosureDataError(f"{common} 不是 {phi} 与 {phi_prime} 的共同加细")
    return compose_system_morphisms(
        inverse_morphism(nested_generator(model, phi_prime, common)),
        nested_generator(model, phi, common),
    )


def refinement_independent(model: KnotHomologyModel, phi: str, phi_prime: str) -> bool:
    """两个不同的新建共同加细给出相同的连接态射"""
    first = model.poset.refinement(phi, phi_prime, fresh=True)
    second = model.poset.refinement(phi, phi_prime, fresh=True)
    return morphisms_equal(
        khm_psi(model, phi, phi_prime, refinement=first),
        khm_psi(model, phi, phi_prime, refinement=second),
    )


def build_khm_tower(model: KnotHomologyModel, tags: Sequence[str]) -> SystemOfSystems:
    tags = tuple(tags)
    for tag in tags:
        model.ensure(tag)
    connectors = {(a, b): khm_psi(model, a, b) for a, b in product(tags, repeat=2)}
    return SystemOfSystems(tags, {t: model.systems[t] for t in tags}, connectors)


def flatten_khm(model: KnotHomologyModel, tags: Sequence[str]) -> TransitiveSystem:
    """外层公理校验通过后取所有内层模的并"""
    flat = flatten_system_of_systems(build_khm_tower(model, tags), check=True)
    logger.info(f"纽结塔展平: {len(tags)} 个标签, {len(flat.indices)} 个指标")
    return flat
