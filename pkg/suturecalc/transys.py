# -*- coding: utf-8 -*-
"""
G-传递系统模块
模族 {M_α}、同构类 {g^α_β}、系统之间的态射、公理校验、商模、张量与展平
"""

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from loguru import logger

from .errors import MorphismMismatchError, QuotientError, RingMismatchError, SystemAxiomError
from .modules import (
    FreeModule,
    GClassHom,
    Homomorphism,
    compose_hom,
    identity_hom,
    inverse_class,
    map_entries,
)
from .rings import RingKind, RingSpec, UnitGroup


Pair = Tuple[str, str]


@dataclass(frozen=True)
class Violation:
    """公理违例，indices 为出错的指标元组"""
    kind: str  # missing / isomorphism / identity / cocycle / compatibility / connector
    indices: Tuple[str, ...]
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.kind}{self.indices}: {self.detail}" if self.detail else f"{self.kind}{self.indices}"


@dataclass(frozen=True, eq=False)
class TransitiveSystem:
    indices: Tuple[str, ...]
    modules: Mapping[str, FreeModule]
    maps: Mapping[Pair, GClassHom]
    unit_group: UnitGroup

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))
        object.__setattr__(self, "unit_group", UnitGroup(self.unit_group))
        if len(set(self.indices)) != len(self.indices):
            raise SystemAxiomError("指标重复")
        missing = [a for a in self.indices if a not in self.modules]
        if missing:
            raise SystemAxiomError(f"缺少模: {missing}")

    @property
    def ring(self) -> RingSpec:
        return self.modules[self.indices[0]].ring

    def map(self, alpha: str, beta: str) -> GClassHom:
        try:
            return self.maps[(alpha, beta)]
        except KeyError:
            raise MorphismMismatchError(f"缺少映射 {alpha}->{beta}")

    def same_shape(self, other: "TransitiveSystem") -> bool:
        return self.indices == other.indices and all(
            self.modules[a].same_as(other.modules[a]) for a in self.indices
        )


@dataclass(frozen=True, eq=False)
class SystemMorphism:
    """系统态射，components[(α, γ)] 为 f^α_γ"""
    source: TransitiveSystem
    target: TransitiveSystem
    components: Mapping[Pair, GClassHom]

    def component(self, alpha: str, gamma: str) -> GClassHom:
        try:
            return self.components[(alpha, gamma)]
        except KeyError:
            raise MorphismMismatchError(f"缺少分量 {alpha}->{gamma}")

    @property
    def unit_group(self) -> UnitGroup:
        return self.target.unit_group


@dataclass(frozen=True, eq=False)
class SystemOfSystems:
    """外层传递系统：每个外层指标对应一个内层系统，外层映射为系统态射"""
    outer_indices: Tuple[str, ...]
    inner: Mapping[str, TransitiveSystem]
    connectors: Mapping[Pair, SystemMorphism]


@dataclass(frozen=True, eq=False)
class QuotientModule:
    """商模：M = M_{base} 及各 M_α → M 的典范同构"""
    module: FreeModule
    base: str
    identifications: Dict[str, Homomorphism] = field(default_factory=dict)


# ==================== 校验 ====================

def validate_system(system: TransitiveSystem) -> List[Violation]:
    """
    校验同构条件、恒等公理与上循环公理

    Returns:
        违例列表，为空表示系统合法
    """
    violations: List[Violation] = []
    indices = system.indices
    for alpha, beta in product(indices, repeat=2):
        if (alpha, beta) not in system.maps:
            violations.append(Violation("missing", (alpha, beta)))
    if violations:
        return violations

    for alpha, beta in product(indices, repeat=2):
        g = system.maps[(alpha, beta)]
        if g.source.rank != system.modules[alpha].rank or g.target.rank != system.modules[beta].rank:
            violations.append(Violation("isomorphism", (alpha, beta), "尺寸与模的秩不符"))
        elif not g.is_isomorphism():
            violations.append(Violation("isomorphism", (alpha, beta), "不是同构"))
    for alpha in indices:
        g = system.maps[(alpha, alpha)]
        if g.rep.is_square() and not g.contains_identity():
            violations.append(Violation("identity", (alpha,), "id ∉ g^α_α"))
    if violations:
        return violations

    group = system.unit_group
    for alpha, beta, gamma in product(indices, repeat=3):
        composite = GClassHom(compose_hom(system.maps[(beta, gamma)].rep, system.maps[(alpha, beta)].rep), group)
        if composite != GClassHom(system.maps[(alpha, gamma)].rep, group):
            violations.append(Violation("cocycle", (alpha, beta, gamma), "g^β_γ∘g^α_β ≠ g^α_γ"))
    logger.debug(f"系统校验完成: {len(indices)} 个指标, {len(violations)} 个违例")
    return violations


def validate_morphism(morphism: SystemMorphism) -> List[Violation]:
    """相容性 f^β_δ∘g^α_β ≐ h^γ_δ∘f^α_γ，对所有 (α, β, γ, δ)"""
    source, target = morphism.source, morphism.target
    group = target.unit_group if target.unit_group.contains(source.unit_group) else source.unit_group
    violations: List[Violation] = []
    for alpha, gamma in product(source.indices, target.indices):
        if (alpha, gamma) not in morphism.components:
            violations.append(Violation("missing", (alpha, gamma)))
    if violations:
        return violations
    for alpha, beta in product(source.indices, repeat=2):
        g = source.maps[(alpha, beta)].rep
        for gamma, delta in product(target.indices, repeat=2):
            left = compose_hom(morphism.components[(beta, delta)].rep, g)
            right = compose_hom(target.maps[(gamma, delta)].rep, morphism.components[(alpha, gamma)].rep)
            if GClassHom(left, group) != GClassHom(right, group):
                violations.append(Violation("compatibility", (alpha, beta, gamma, delta)))
    return violations


def morphisms_equal(m1: SystemMorphism, m2: SystemMorphism) -> bool:
    """分量逐一按类相等"""
    if set(m1.components) != set(m2.components):
        return False
    return all(m1.components[key] == m2.components[key] for key in m1.components)


# ==================== 态射构造 ====================

def identity_morphism(system: TransitiveSystem) -> SystemMorphism:
    return SystemMorphism(system, system, dict(system.maps))


def transport_morphism(
    source: TransitiveSystem,
    target: TransitiveSystem,
    phi: Homomorphism,
    alpha0: str,
    gamma0: str,
) -> SystemMorphism:
    """由一个同构 φ: M_{α0} → N_{γ0} 经两系统传递得到的态射"""
    group = target.unit_group
    components = {}
    for alpha, gamma in product(source.indices, target.indices):
        rep = compose_hom(target.maps[(gamma0, gamma)].rep, compose_hom(phi, source.maps[(alpha, alpha0)].rep))
        components[(alpha, gamma)] = GClassHom(rep, group)
    return SystemMorphism(source, target, components)


def compose_system_morphisms(m2: SystemMorphism, m1: SystemMorphism) -> SystemMorphism:
    """
    m2∘m1，分量取 m2^γ_ε∘m1^α_γ 并检查与中间指标 γ 无关
    """
    if not m1.target.same_shape(m2.source):
        raise MorphismMismatchError("m1 的目标与 m2 的源不一致")
    group = m2.unit_group if m2.unit_group.contains(m1.unit_group) else m1.unit_group
    components = {}
    for alpha, epsilon in product(m1.source.indices, m2.target.indices):
        candidates = [
            GClassHom(compose_hom(m2.component(gamma, epsilon).rep, m1.component(alpha, gamma).rep), group)
            for gamma in m1.target.indices
        ]
        first = candidates[0]
        for gamma, other in zip(m1.target.indices, candidates):
            if other != first:
                raise MorphismMismatchError(
                    f"分量 {alpha}->{epsilon} 依赖中间指标 {gamma}",
                    {"alpha": alpha, "epsilon": epsilon, "gamma": gamma},
                )
        components[(alpha, epsilon)] = first
    return SystemMorphism(m1.source, m2.target, components)


def inverse_morphism(morphism: SystemMorphism) -> SystemMorphism:
    components = {
        (gamma, alpha): comp.inverse() for (alpha, gamma), comp in morphism.components.items()
    }
    return SystemMorphism(morphism.target, morphism.source, components)


# ==================== 生成树补全 ====================

def complete_from_spanning_tree(
    indices: Sequence[str],
    modules: Mapping[str, FreeModule],
    given: Mapping[Pair, Homomorphism],
    unit_group: UnitGroup,
) -> Dict[Pair, GClassHom]:
    """
    用 BFS 生成树补全缺失的有序对映射
    已给出的映射保持不变，缺失的 (α, β) 取 root→β ∘ α→root
    """
    indices = list(indices)
    neighbours: Dict[str, List[str]] = {a: [] for a in indices}
    for (a, b) in given:
        if a != b:
            neighbours[a].append(b)
            neighbours[b].append(a)

    def edge(a: str, b: str) -> Homomorphism:
        if (a, b) in given:
            return given[(a, b)]
        return inverse_class(given[(b, a)], unit_group)

    root = indices[0]
    down: Dict[str, Homomorphism] = {root: identity_hom(modules[root])}
    up: Dict[str, Homomorphism] = {root: identity_hom(modules[root])}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        for nxt in sorted(set(neighbours[node]), key=indices.index):
            if nxt in down:
                continue
            down[nxt] = compose_hom(edge(node, nxt), down[node])
            up[nxt] = compose_hom(up[node], edge(nxt, node))
            queue.append(nxt)
    unreachable = [a for a in indices if a not in down]
    if unreachable:
        raise SystemAxiomError(f"以下指标无法通过已给映射连通: {unreachable}")

    maps: Dict[Pair, GClassHom] = {}
    derived = 0
    for alpha, beta in product(indices, repeat=2):
        if (alpha, beta) in given:
            rep = given[(alpha, beta)]
        elif alpha == beta:
            rep = identity_hom(modules[alpha])
        else:
            rep = compose_hom(down[beta], up[alpha])
            derived += 1
        maps[(alpha, beta)] = GClassHom(rep, unit_group)
    logger.debug(f"生成树补全: 推导出 {derived} 个映射")
    return maps


def build_system(
    indices: Sequence[str],
    modules: Mapping[str, FreeModule],
    given: Mapping[Pair, Homomorphism],
    unit_group: UnitGroup,
) -> TransitiveSystem:
    maps = complete_from_spanning_tree(indices, modules, given, unit_group)
    return TransitiveSystem(tuple(indices), dict(modules), maps, unit_group)


# ==================== 商模 ====================

def quotient_module(system: TransitiveSystem, base: Optional[str] = None) -> QuotientModule:
    """
    以基指标 α₀ 传递实现商模，要求 G 平凡
    所有三角形 g^β_{α₀}∘g^α_β = g^α_{α₀} 精确成立
    """
    if system.unit_group != UnitGroup.TRIVIAL:
        raise QuotientError(f"G = {system.unit_group.value} 时商模只在相差单位意义下定义")
    base = base if base is not None else system.indices[0]
    identifications = {alpha: system.map(alpha, base).rep for alpha in system.indices}
    for alpha, beta in product(system.indices, repeat=2):
        left = compose_hom(identifications[beta], system.map(alpha, beta).rep)
        if left.matrix != identifications[alpha].matrix:
            raise QuotientError(f"三角形 ({alpha}, {beta}) 不交换，系统不合法")
    return QuotientModule(system.modules[base], base, identifications)


def rebase_quotient(quotient: QuotientModule, system: TransitiveSystem, new_base: str) -> QuotientModule:
    """把商模的识别族沿 g^{α₀}_{α₁} 传递到新基指标"""
    transport = system.map(quotient.base, new_base).rep
    identifications = {
        alpha: compose_hom(transport, ident) for alpha, ident in quotient.identifications.items()
    }
    return QuotientModule(system.modules[new_base], new_base, identifications)


# ==================== 张量与展平 ====================

def tensor_system(system: TransitiveSystem, target_ring: RingSpec) -> TransitiveSystem:
    """沿典范环同态 Z → R 作张量，结果的 G 为 R 的全部单位"""
    if system.ring.kind != RingKind.INTEGERS:
        raise RingMismatchError(f"张量函子要求整数系统，实际为 {system.ring.kind.value}")
    ring = RingSpec(target_ring.kind, UnitGroup.FULL_UNITS)
    ops = ring.ops
    modules = {a: FreeModule(ring, m.rank) for a, m in system.modules.items()}
    maps = {
        key: GClassHom(map_entries(g.rep, ring, ops.from_int), UnitGroup.FULL_UNITS)
        for key, g in system.maps.items()
    }
    return TransitiveSystem(system.indices, modules, maps, UnitGroup.FULL_UNITS)


def tensor_morphism(morphism: SystemMorphism, target_ring: RingSpec) -> SystemMorphism:
    ring = RingSpec(target_ring.kind, UnitGroup.FULL_UNITS)
    ops = ring.ops
    components = {
        key: GClassHom(map_entries(c.rep, ring, ops.from_int), UnitGroup.FULL_UNITS)
        for key, c in morphism.components.items()
    }
    return SystemMorphism(
        tensor_system(morphism.source, target_ring),
        tensor_system(morphism.target, target_ring),
        components,
    )


def validate_system_of_systems(tower: SystemOfSystems) -> List[Violation]:
    """外层恒等与上循环公理，系统态射按分量类相等比较"""
    violations: List[Violation] = []
    outer = tower.outer_indices
    for phi, psi in product(outer, repeat=2):
        if (phi, psi) not in tower.connectors:
            violations.append(Violation("missing", (phi, psi)))
    if violations:
        return violations
    for phi in outer:
        if not morphisms_equal(tower.connectors[(phi, phi)], identity_morphism(tower.inner[phi])):
            violations.append(Violation("identity", (phi,), "外层恒等公理不成立"))
    for key, connector in tower.connectors.items():
        if validate_morphism(connector):
            violations.append(Violation("connector", key, "连接态射不相容"))
    for phi, psi, chi in product(outer, repeat=3):
        try:
            composite = compose_system_morphisms(tower.connectors[(psi, chi)], tower.connectors[(phi, psi)])
        except MorphismMismatchError as exc:
            violations.append(Violation("cocycle", (phi, psi, chi), exc.message))
            continue
        if not morphisms_equal(composite, tower.connectors[(phi, chi)]):
            violations.append(Violation("cocycle", (phi, psi, chi), "外层上循环公理不成立"))
    return violations


def flatten_label(outer: str, inner: str) -> str:
    return f"{outer}/{inner}"


def flatten_system_of_systems(tower: SystemOfSystems, check: bool = True) -> TransitiveSystem:
    """
    取所有内层模的并：同一外层指标内保持原映射，跨外层指标取连接态射的分量
    """
    if check:
        violations = validate_system_of_systems(tower)
        if violations:
            raise SystemAxiomError("外层公理不成立", violations)
    groups = {tower.inner[phi].unit_group for phi in tower.outer_indices}
    rings = {tower.inner[phi].ring.kind for phi in tower.outer_indices}
    if len(groups) != 1 or len(rings) != 1:
        raise RingMismatchError("内层系统的环或单位群不一致")
    group = groups.pop()
    indices, modules, maps = [], {}, {}
    for phi in tower.outer_indices:
        inner = tower.inner[phi]
        for alpha in inner.indices:
            label = flatten_label(phi, alpha)
            indices.append(label)
            modules[label] = inner.modules[alpha]
    for phi, psi in product(tower.outer_indices, repeat=2):
        source, target = tower.inner[phi], tower.inner[psi]
        for alpha, beta in product(source.indices, target.indices):
            if phi == psi:
                rep = source.maps[(alpha, beta)].rep
            else:
                rep = tower.connectors[(phi, psi)].component(alpha, beta).rep
            maps[(flatten_label(phi, alpha), flatten_label(psi, beta))] = GClassHom(rep, group)
    logger.debug(f"展平完成: {len(indices)} 个指标")
    return TransitiveSystem(tuple(indices), modules, maps, group)


def restrict_system(system: TransitiveSystem, indices: Sequence[str]) -> TransitiveSystem:
    """限制到指标子集"""
    keep = tuple(indices)
    return TransitiveSystem(
        keep,
        {a: system.modules[a] for a in keep},
        {(a, b): system.maps[(a, b)] for a, b in product(keep, repeat=2)},
        system.unit_group,
    )
