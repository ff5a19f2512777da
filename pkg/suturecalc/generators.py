# -*- coding: utf-8 -*-
"""
随机测试数据生成
每个闭包带一对随机标架 F^±，粘合数据都由标架导出，因此沿任意闭环的 Ψ 在规范形式下应为恒等
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count, product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .closures import (
    ClosureDescriptor,
    CutData,
    Diffeomorphism,
    GluingData,
    IntMatrix,
    complement_identification,
    cut_open,
    to_array,
    to_key,
    twist_by,
)
from .knots import EmbeddingKind, EmbeddingTag, KnotHomologyModel, NestingPoset
from .mcg import (
    CurveClass,
    SurfaceModel,
    TwistLetter,
    TwistWord,
    block_diagonal,
    carry_to_first_basis,
    default_generators,
    identity_matrix,
    symplectic_inverse,
    word_action,
)
from .modules import FreeModule, GClassHom, Homomorphism, compose_hom, make_hom, scale
from .morphisms import GenusStep, LetterKind, SameGenusStep, Step
from .novikov import NovikovElement, exp_hom
from .rank_one import SIGN_ONLY
from .rings import RingKind, RingSpec, UnitGroup
from .transys import TransitiveSystem, build_system


@dataclass(frozen=True)
class FramedClosure:
    descriptor: ClosureDescriptor
    frame_minus: IntMatrix
    frame_plus: IntMatrix

    @property
    def id(self) -> str:
        return self.descriptor.id

    @property
    def genus(self) -> int:
        return self.descriptor.genus


class CaseGenerator:
    """
    可复现的随机数据源

    Args:
        seed: 随机种子
        word_length: 随机辛矩阵所用扭转字的长度
    """

    def __init__(self, seed: int = 0, word_length: int = 4):
        self.rng = random.Random(seed)
        self.word_length = word_length
        self._serial = count()

    def fresh(self, prefix: str) -> str:
        return f"{prefix}{next(self._serial)}"

    # ==================== 映射类群 ====================

    def random_word(self, surface: SurfaceModel, length: Optional[int] = None,
                    curves: Optional[Sequence[CurveClass]] = None, positive: bool = False) -> TwistWord:
        curves = list(curves) if curves else default_generators(surface)
        length = self.word_length if length is None else length
        letters = tuple(
            TwistLetter(self.rng.choice(curves), 1 if positive else self.rng.choice((1, -1)))
            for _ in range(length)
        )
        return TwistWord(surface, letters)

    def random_symplectic(self, genus: int, length: Optional[int] = None) -> np.ndarray:
        return word_action(self.random_word(SurfaceModel(genus), length))

    def random_primitive(self, surface: SurfaceModel) -> CurveClass:
        image = word_action(self.random_word(surface)).dot(np.array(surface.basis_vector("a1"), dtype=object))
        return CurveClass(surface, tuple(int(x) for x in image), "η")

    def stabilizer_matrix(self, surface: SurfaceModel) -> np.ndarray:
        """固定 a₁ 的随机辛矩阵：只用与 a₁ 不相交的曲线"""
        curves = [c for c in default_generators(surface) if c.name != "b1"]
        return word_action(self.random_word(surface, curves=curves))

    # ==================== 闭包 ====================

    def framed(self, descriptor: ClosureDescriptor) -> FramedClosure:
        genus = descriptor.genus
        return FramedClosure(
            descriptor,
            to_key(self.random_symplectic(genus)),
            to_key(self.random_symplectic(genus)),
        )

    def closure(self, closure_id: Optional[str] = None, genus: int = 2, marked: bool = True,
                manifold: str = "M", odd: bool = False, complement_tag: Optional[str] = None) -> FramedClosure:
        closure_id = closure_id or self.fresh("D")
        surface = SurfaceModel(genus, "p" if odd else None)
        descriptor = ClosureDescriptor(
            id=closure_id,
            genus=genus,
            complement_tag=complement_tag or f"T[{closure_id}]",
            surface=surface,
            eta=self.random_primitive(surface) if marked else None,
            odd=odd,
            manifold=manifold,
        )
        return self.framed(descriptor)

    # ==================== 粘合数据 ====================

    def psi_choice(self, phi_minus: np.ndarray, eta_source: CurveClass, eta_target: CurveClass) -> np.ndarray:
        """满足 (φ_−·ψ)(η) = η′ 的随机 ψ"""
        surface = eta_source.surface
        v = CurveClass(surface, tuple(int(x) for x in symplectic_inverse(phi_minus).dot(eta_target.array())))
        return symplectic_inverse(carry_to_first_basis(v)).dot(self.stabilizer_matrix(surface)).dot(
            carry_to_first_basis(eta_source)
        )

    def gluing(self, source: FramedClosure, target: FramedClosure) -> GluingData:
        phi_minus = to_array(target.frame_minus).dot(symplectic_inverse(to_array(source.frame_minus)))
        phi_plus = to_array(target.frame_plus).dot(symplectic_inverse(to_array(source.frame_plus)))
        s, t = source.descriptor, target.descriptor
        if s.marked:
            psi = self.psi_choice(phi_minus, s.eta, t.eta)
        else:
            psi = identity_matrix(s.surface.dimension)
        return GluingData(s, t, complement_identification(s, t), phi_minus, phi_plus, psi)

    def cut_auxiliary(self, genus: int, marked: bool, manifold: str = "M", odd: bool = False,
                      prefix: str = "X") -> Tuple[CutData, FramedClosure, FramedClosure]:
        """
        随机切割辅助闭包：父闭包亏格 genus+1，切开后得到亏格 genus 的子闭包

        Returns:
            (切割数据, 带标架的子闭包, 带标架的父闭包)，父标架为 B·diag(F_child, I)
        """
        name = self.fresh(prefix)
        tag = f"T[{name}]"
        parent_surface = SurfaceModel(genus + 1, "p" if odd else None)
        basis = self.random_symplectic(genus + 1)
        eta = None
        child_eta = eta_split = None
        if marked:
            child_eta = self.random_primitive(SurfaceModel(genus)).vector
            eta_split = (self.rng.randint(-2, 2), self.rng.choice((1, -1)))
            eta = CurveClass(parent_surface, tuple(int(x) for x in basis.dot(np.array(child_eta + eta_split, dtype=object))))
        parent = ClosureDescriptor(
            id=f"{name}:parent", genus=genus + 1, complement_tag=tag, surface=parent_surface,
            eta=eta, odd=odd, manifold=manifold,
        )
        n = 2 * genus
        columns = [tuple(int(x) for x in basis[:, j]) for j in range(n + 2)]
        c1 = CurveClass(parent_surface, columns[n], "c1")
        cut = CutData(
            parent=parent,
            c1=c1,
            c2=-c1,
            dual=CurveClass(parent_surface, columns[n + 1], "d"),
            child_basis=tuple(columns[:n]),
            child_eta=child_eta,
            eta_split=eta_split,
            child_id=f"{name}:child",
        )
        child = self.framed(cut_open(cut))
        parent_framed = FramedClosure(
            parent,
            to_key(basis.dot(block_diagonal(to_array(child.frame_minus), identity_matrix(2)))),
            to_key(basis.dot(block_diagonal(to_array(child.frame_plus), identity_matrix(2)))),
        )
        return cut, child, parent_framed

    def genus_step(self, lower: FramedClosure, upper: FramedClosure) -> GenusStep:
        if upper.genus != lower.genus + 1:
            raise ValueError(f"亏格跳跃步需要 {lower.genus} → {lower.genus + 1}")
        cut, child, parent = self.cut_auxiliary(
            lower.genus, lower.descriptor.marked, lower.descriptor.manifold, lower.descriptor.odd
        )
        return GenusStep(
            lower=lower.descriptor,
            upper=upper.descriptor,
            cut=cut,
            enter=self.gluing(lower, child),
            exit=self.gluing(parent, upper),
        )


@dataclass
class ClosurePool:
    """
    一组带标架的闭包，每条有序边的数据只生成一次
    亏格差为一的反向边取正向边的逆
    """
    generator: CaseGenerator
    closures: Dict[str, FramedClosure] = field(default_factory=dict)
    _edges: Dict[Tuple[str, str], Step] = field(default_factory=dict)

    def add(self, closure: FramedClosure) -> FramedClosure:
        self.closures[closure.id] = closure
        return closure

    def step(self, source_id: str, target_id: str) -> Step:
        key = (source_id, target_id)
        if key in self._edges:
            return self._edges[key]
        source, target = self.closures[source_id], self.closures[target_id]
        if source.genus == target.genus:
            step: Step = SameGenusStep(self.generator.gluing(source, target))
        elif target.genus == source.genus + 1:
            step = self.generator.genus_step(source, target)
        elif source.genus == target.genus + 1:
            step = self.step(target_id, source_id).reversed()
        else:
            raise ValueError(f"亏格差超过一: {source_id} → {target_id}")
        self._edges[key] = step
        return step

    def path(self, ids: Sequence[str]) -> List[Step]:
        return [self.step(a, b) for a, b in zip(ids, ids[1:])]

    def random_cycle(self, start: str, length: int) -> List[str]:
        """从 start 出发、相邻亏格差至多为一的随机闭环"""
        rng = self.generator.rng
        ids = [start]
        for _ in range(length - 1):
            current = self.closures[ids[-1]]
            options = [c for c, f in self.closures.items() if abs(f.genus - current.genus) <= 1]
            ids.append(rng.choice(options))
        last, first = self.closures[ids[-1]], self.closures[start]
        if abs(last.genus - first.genus) > 1:
            bridge = [
                c for c, f in self.closures.items()
                if abs(f.genus - first.genus) <= 1 and abs(f.genus - last.genus) <= 1
            ]
            ids.append(rng.choice(bridge))
        ids.append(start)
        return ids


# ==================== 纽结模型 ====================

def _unimodular(generator: CaseGenerator, ring: RingSpec, rank: int) -> Homomorphism:
    """t^k 乘一个随机的行列式为一的整数矩阵"""
    blocks = [generator.random_symplectic(1) for _ in range(rank // 2)]
    if rank % 2:
        blocks.append(identity_matrix(1))
    integer = block_diagonal(*blocks)
    rows = [[NovikovElement.constant(int(x)) for x in row] for row in integer]
    return scale(exp_hom(generator.rng.randint(-2, 2)), make_hom(ring, rows))


def random_inner_system(generator: CaseGenerator, size: int = 3, rank: int = 2) -> TransitiveSystem:
    ring = RingSpec(RingKind.NOVIKOV, UnitGroup.FULL_UNITS)
    indices = [f"α{i}" for i in range(size)]
    modules = {a: FreeModule(ring, rank) for a in indices}
    given = {(a, indices[0]): _unimodular(generator, ring, rank) for a in indices[1:]}
    return build_system(indices, modules, given, UnitGroup.FULL_UNITS)


def random_knot_model(generator: CaseGenerator, size: int = 4, rank: int = 2) -> Tuple[KnotHomologyModel, List[str]]:
    """
    随机嵌套偏序上的纽结模型

    Returns:
        (模型, 原始标签名列表)
    """
    rng = generator.rng
    names = [f"φ{i}" for i in range(size)]
    poset = NestingPoset([
        EmbeddingTag(n, rng.choice(list(EmbeddingKind)), Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
        for n in names
    ])
    # 只让后出现的标签嵌入先出现的标签，保证无环
    for i, j in product(range(size), repeat=2):
        if i < j and rng.random() < 0.3 and not poset.is_nested(names[i], names[j]):
            poset.nest(names[j], names[i])
    model = KnotHomologyModel(poset)
    ring = RingSpec(RingKind.NOVIKOV, UnitGroup.FULL_UNITS)
    for name in names:
        model.register(name, random_inner_system(generator, rng.randint(1, 3), rank), _unimodular(generator, ring, rank))
    return model, names


# ==================== 传递系统 ====================

def random_system(generator: CaseGenerator, size: int = 4, rank: int = 2,
                  ring: RingSpec = RingSpec(RingKind.INTEGERS, UnitGroup.SIGNS)) -> TransitiveSystem:
    """以第一个指标为根的星形生成树补全得到的合法系统，矩阵为行列式一的整数矩阵"""
    ops = ring.ops
    indices = [f"α{i}" for i in range(size)]
    modules = {a: FreeModule(ring, rank) for a in indices}
    given = {}
    for a in indices[1:]:
        blocks = [generator.random_symplectic(1) for _ in range(rank // 2)]
        if rank % 2:
            blocks.append(identity_matrix(1))
        rows = [[ops.from_int(int(x)) for x in row] for row in block_diagonal(*blocks)]
        given[(a, indices[0])] = make_hom(ring, rows)
    return build_system(indices, modules, given, ring.unit_group)


def inject_defect(generator: CaseGenerator, system: TransitiveSystem) -> TransitiveSystem:
    """
    破坏一个非对角映射：秩 ≥ 2 时右乘初等矩阵（破坏上循环），秩一时乘 2（破坏同构）
    """
    if len(system.indices) < 2:
        raise ValueError("至少需要两个指标")
    alpha, beta = generator.rng.sample(list(system.indices), 2)
    g = system.maps[(alpha, beta)]
    ring = system.ring
    ops = ring.ops
    rank = g.source.rank
    if rank >= 2:
        rows = [[ops.one() if i == j or (i, j) == (0, 1) else ops.zero() for j in range(rank)] for i in range(rank)]
        rep = compose_hom(g.rep, make_hom(ring, rows))
    else:
        rep = scale(ops.from_int(2), g.rep)
    maps = dict(system.maps)
    maps[(alpha, beta)] = GClassHom(rep, system.unit_group)
    return TransitiveSystem(system.indices, system.modules, maps, system.unit_group)


# ==================== 秩一指定 ====================

def random_unit(generator: CaseGenerator, ring: RingSpec, signs_only: bool = False) -> str:
    """G 中的随机单位（字符串形式）；signs_only 时只取 ±1"""
    rng = generator.rng
    group = ring.unit_group
    sign = 1 if group == UnitGroup.TRIVIAL else rng.choice((1, -1))
    if signs_only or group != UnitGroup.FULL_UNITS:
        return str(sign)
    if ring.kind == RingKind.NOVIKOV:
        exponent = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        return ring.ops.format(NovikovElement.monomial(exponent, sign))
    if ring.kind == RingKind.RATIONAL_FIELD:
        return str(Fraction(sign * rng.randint(1, 5), rng.randint(1, 5)))
    return str(sign) if ring.kind == RingKind.INTEGERS else "1"


def random_assignment(generator: CaseGenerator, ring: RingSpec) -> Dict[str, str]:
    """与关系集相容的随机指定：取值都在 G 中，手术与 Ξ 字母只取 ±1"""
    values: Dict[str, str] = {}
    for kind in LetterKind:
        if kind in (LetterKind.UNIT_SCALAR, LetterKind.SPLICE_SPLIT):
            continue
        values[kind.value] = random_unit(generator, ring, signs_only=kind in SIGN_ONLY)
    return values


# ==================== 微分同胚与闭包池 ====================

def random_diffeomorphism(generator: CaseGenerator, source: str, target: str) -> Diffeomorphism:
    return Diffeomorphism.atomic(generator.fresh("f"), source, target)


def twisted(closure: FramedClosure, f: Diffeomorphism) -> FramedClosure:
    """D′_f 沿用 D′ 的标架"""
    return FramedClosure(twist_by(closure.descriptor, f), closure.frame_minus, closure.frame_plus)


def closure_pool(generator: CaseGenerator, size: int = 4, genera: Sequence[int] = (2, 3),
                 marked: bool = True, manifold: str = "M") -> ClosurePool:
    """同一缝合流形上 size 个闭包，亏格轮流取自 genera"""
    pool = ClosurePool(generator)
    for i in range(size):
        pool.add(generator.closure(genus=genera[i % len(genera)], marked=marked, manifold=manifold))
    return pool
