# -*- coding: utf-8 -*-
"""
闭包记录模块
闭包、补空间标签之间的自由群胚、粘合数据、切开数据与标准稳定化
"""

from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from .errors import ClosureDataError, CutDataError, EndpointMismatchError, EtaConditionError
from .mcg import (
    CurveClass,
    SurfaceModel,
    as_matrix,
    block_diagonal,
    identity_matrix,
    is_symplectic,
    matrix_key,
    pairing,
    symplectic_inverse,
)


IntMatrix = Tuple[Tuple[int, ...], ...]


def to_key(matrix) -> IntMatrix:
    return matrix_key(as_matrix(matrix))


def to_array(key: IntMatrix) -> np.ndarray:
    return as_matrix(key)


def identity_key(n: int) -> IntMatrix:
    return matrix_key(identity_matrix(n))


# ==================== 自由群胚 ====================

@dataclass(frozen=True)
class GroupoidArrow:
    """生成箭头：补空间标架 tag → 流形，或缝合流形之间的微分同胚"""
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class ComplementMap:
    """
    自由群胚中已约化的路径
    letters 中每项为 (箭头, ±1)，−1 表示逆箭头；空路径为 source 上的恒等
    """
    source: str
    target: str
    letters: Tuple[Tuple[GroupoidArrow, int], ...] = ()

    def __post_init__(self):
        stack = []
        for arrow, sign in self.letters:
            if stack and stack[-1][0] == arrow and stack[-1][1] == -sign:
                stack.pop()
            else:
                stack.append((arrow, sign))
        node = self.source
        for arrow, sign in stack:
            start, end = (arrow.source, arrow.target) if sign == 1 else (arrow.target, arrow.source)
            if start != node:
                raise ClosureDataError(f"群胚路径不连贯: {arrow.name} 从 {start} 出发，当前位置 {node}")
            node = end
        if node != self.target:
            raise ClosureDataError(f"群胚路径终点 {node} 与声明的 {self.target} 不符")
        object.__setattr__(self, "letters", tuple(stack))

    @classmethod
    def identity(cls, obj: str) -> "ComplementMap":
        return cls(obj, obj, ())

    @classmethod
    def generator(cls, arrow: GroupoidArrow) -> "ComplementMap":
        return cls(arrow.source, arrow.target, ((arrow, 1),))

    def then(self, other: "ComplementMap") -> "ComplementMap":
        if self.target != other.source:
            raise ClosureDataError(f"无法连接路径: {self.target} ≠ {other.source}")
        return ComplementMap(self.source, other.target, self.letters + other.letters)

    def inverse(self) -> "ComplementMap":
        return ComplementMap(self.target, self.source, tuple((a, -s) for a, s in reversed(self.letters)))

    def is_identity(self) -> bool:
        return not self.letters and self.source == self.target

    def describe(self) -> str:
        if not self.letters:
            return f"id[{self.source}]"
        return " · ".join(a.name if s == 1 else f"{a.name}⁻¹" for a, s in self.letters)


def frame_arrow(tag: str, manifold: str) -> GroupoidArrow:
    return GroupoidArrow(f"ι[{tag}]", tag, manifold)


@dataclass(frozen=True)
class Diffeomorphism:
    """缝合流形之间的微分同胚（标签层），path 为 source → target 的群胚路径"""
    source: str
    target: str
    path: ComplementMap
    label: str

    @classmethod
    def atomic(cls, name: str, source: str, target: str) -> "Diffeomorphism":
        return cls(source, target, ComplementMap.generator(GroupoidArrow(name, source, target)), name)

    @classmethod
    def identity(cls, manifold: str) -> "Diffeomorphism":
        return cls(manifold, manifold, ComplementMap.identity(manifold), "id")

    def is_identity(self) -> bool:
        return self.path.is_identity()

    def then(self, other: "Diffeomorphism") -> "Diffeomorphism":
        """先 self 再 other，即 other∘self"""
        if self.target != other.source:
            raise ClosureDataError(f"微分同胚无法复合: {self.target} ≠ {other.source}")
        if self.is_identity():
            return other
        if other.is_identity():
            return self
        return Diffeomorphism(self.source, other.target, self.path.then(other.path), f"{other.label}∘{self.label}")


# ==================== 闭包 ====================

@dataclass(frozen=True)
class ClosureDescriptor:
    """
    闭包的组合记录
    Y、r、m 抽象为 complement_tag 与 embedding（补空间标签到缝合流形的路径）
    eta 为 None 时是普通（非标记）闭包
    """
    id: str
    genus: int
    complement_tag: str
    surface: Optional[SurfaceModel] = None
    eta: Optional[CurveClass] = None
    odd: bool = False
    manifold: str = "M"
    embedding: Optional[ComplementMap] = None
    stage: Optional[str] = None

    def __post_init__(self):
        if self.genus < 2:
            raise ClosureDataError(f"闭包亏格必须 ≥ 2: {self.id} 的亏格为 {self.genus}")
        surface = self.surface or SurfaceModel(self.genus)
        if surface.genus != self.genus:
            raise ClosureDataError(f"{self.id}: 曲面亏格与闭包亏格不符")
        if self.odd and surface.marked_point is None:
            raise ClosureDataError(f"{self.id}: 奇闭包需要标记点")
        object.__setattr__(self, "surface", surface)
        if self.embedding is None:
            object.__setattr__(
                self, "embedding", ComplementMap.generator(frame_arrow(self.complement_tag, self.manifold))
            )
        elif self.embedding.source != self.complement_tag or self.embedding.target != self.manifold:
            raise ClosureDataError(f"{self.id}: 嵌入路径端点与标签/流形不符")
        if self.eta is not None:
            eta = CurveClass(surface, self.eta.vector, "η")
            if not any(eta.vector) or not eta.is_primitive():
                raise ClosureDataError(f"{self.id}: η 必须是非零本原类", {"eta": list(eta.vector)})
            object.__setattr__(self, "eta", eta)

    @property
    def marked(self) -> bool:
        return self.eta is not None

    def strip(self) -> "ClosureDescriptor":
        """去掉标记曲线"""
        return replace(self, eta=None)

    def mark(self, eta) -> "ClosureDescriptor":
        vector = eta.vector if isinstance(eta, CurveClass) else tuple(eta)
        return replace(self, eta=CurveClass(self.surface, vector, "η"))

    def derive(self, stage: str, key: str) -> "ClosureDescriptor":
        """手术中间闭包 (Y)_− / (Y)_+"""
        return replace(self, id=f"{self.id}~{stage}:{key}", stage=stage)


def make_closure(
    closure_id: str,
    genus: int,
    complement_tag: Optional[str] = None,
    eta=None,
    odd: bool = False,
    marked_point: Optional[str] = None,
    manifold: str = "M",
) -> ClosureDescriptor:
    surface = SurfaceModel(genus, marked_point if marked_point else ("p" if odd else None))
    eta_curve = None
    if eta is not None:
        eta_curve = CurveClass(surface, tuple(eta), "η")
    return ClosureDescriptor(
        id=closure_id,
        genus=genus,
        complement_tag=complement_tag or f"T[{closure_id}]",
        surface=surface,
        eta=eta_curve,
        odd=odd,
        manifold=manifold,
    )


def complement_identification(source: ClosureDescriptor, target: ClosureDescriptor) -> ComplementMap:
    """同一缝合流形的两个闭包之间、与嵌入相容的补空间识别"""
    if source.manifold != target.manifold:
        raise ClosureDataError(f"{source.id} 与 {target.id} 不是同一缝合流形的闭包")
    return source.embedding.then(target.embedding.inverse())


def twist_by(closure: ClosureDescriptor, f: Diffeomorphism) -> ClosureDescriptor:
    """D′_f：同一闭包，嵌入改为 m′∘f"""
    if closure.manifold != f.target:
        raise ClosureDataError(f"{closure.id} 不是 {f.target} 的闭包")
    if f.is_identity():
        return closure
    return replace(
        closure,
        id=f"{closure.id}∘{f.label}",
        manifold=f.source,
        embedding=closure.embedding.then(f.path.inverse()),
    )


def std_parent(closure: ClosureDescriptor) -> ClosureDescriptor:
    """标准稳定化：亏格加一，η ↦ η + b_{g+1}；手术中间闭包保留 stage"""
    surface = SurfaceModel(closure.genus + 1, closure.surface.marked_point)
    eta = None
    if closure.eta is not None:
        eta = CurveClass(surface, closure.eta.vector + (0, 1), "η")
    return replace(closure, id=f"{closure.id}⁺", genus=closure.genus + 1, surface=surface, eta=eta)


# ==================== 粘合数据 ====================

@dataclass(frozen=True)
class GluingData:
    """
    同亏格闭包之间的粘合数据 C、φ^C_±、ψ^C
    φ^C = (φ^C_+)⁻¹·φ^C_− 只在需要时计算
    """
    source: ClosureDescriptor
    target: ClosureDescriptor
    complement_map: ComplementMap
    phi_minus: IntMatrix
    phi_plus: IntMatrix
    psi: IntMatrix

    def __post_init__(self):
        for name in ("phi_minus", "phi_plus", "psi"):
            object.__setattr__(self, name, to_key(getattr(self, name)))
        if self.source.genus != self.target.genus:
            raise ClosureDataError(f"粘合数据要求同亏格: {self.source.genus} ≠ {self.target.genus}")
        if self.complement_map.source != self.source.complement_tag or self.complement_map.target != self.target.complement_tag:
            raise EndpointMismatchError("补空间映射端点与闭包标签不符")
        n = self.source.surface.dimension
        for name in ("phi_minus", "phi_plus", "psi"):
            matrix = to_array(getattr(self, name))
            if matrix.shape != (n, n) or not is_symplectic(matrix):
                raise ClosureDataError(f"{name} 不是 {n}×{n} 辛矩阵")
        if self.source.marked != self.target.marked:
            raise ClosureDataError("粘合数据两端的标记状态不一致")
        if self.source.marked:
            image = to_array(self.phi_minus).dot(to_array(self.psi)).dot(self.source.eta.array())
            if tuple(int(x) for x in image) != self.target.eta.vector:
                raise EtaConditionError(
                    "η 条件不成立: (φ_−·ψ)(η) ≠ η′",
                    {"image": [int(x) for x in image], "expected": list(self.target.eta.vector)},
                )

    @property
    def phi(self) -> np.ndarray:
        return symplectic_inverse(to_array(self.phi_plus)).dot(to_array(self.phi_minus))

    def with_psi(self, psi) -> "GluingData":
        return replace(self, psi=to_key(psi))


# ==================== 切开数据 ====================

@dataclass(frozen=True)
class CutData:
    """
    可切开闭包的切割数据
    child_basis 为亏格 g 子曲面的辛基（父曲面坐标），c1 与 dual 补全为父曲面的辛基
    eta_split = (x, y) 给出 η = B·(child_eta, x, y)
    """
    parent: ClosureDescriptor
    c1: CurveClass
    c2: CurveClass
    dual: CurveClass
    child_basis: Tuple[Tuple[int, ...], ...]
    child_eta: Optional[Tuple[int, ...]] = None
    eta_split: Optional[Tuple[int, int]] = None
    child_id: str = ""

    def __post_init__(self):
        parent = self.parent
        basis = tuple(tuple(int(x) for x in v) for v in self.child_basis)
        object.__setattr__(self, "child_basis", basis)
        if not self.child_id:
            object.__setattr__(self, "child_id", f"{parent.id}/cut")
        if self.child_eta is not None:
            object.__setattr__(self, "child_eta", tuple(int(x) for x in self.child_eta))
        if self.eta_split is not None:
            object.__setattr__(self, "eta_split", tuple(int(x) for x in self.eta_split))
        g = len(basis) // 2
        if len(basis) % 2 or g + 1 != parent.genus:
            raise CutDataError(f"子曲面基的大小 {len(basis)} 与父闭包亏格 {parent.genus} 不符")
        if any(c != -d for c, d in zip(self.c1.vector, self.c2.vector)):
            raise CutDataError("切割曲线的类必须相反: [c1] + [c2] ≠ 0")
        if parent.marked:
            if self.child_eta is None or self.eta_split is None:
                raise CutDataError("标记闭包的切割数据需要 child_eta 与 eta_split")
            if abs(pairing(parent.eta.vector, self.c1.vector)) != 1:
                raise CutDataError(
                    "η 必须与每条切割曲线恰好相交一次",
                    {"intersection": pairing(parent.eta.vector, self.c1.vector)},
                )
        b = self.basis_matrix()
        if not is_symplectic(b):
            raise CutDataError("子曲面基与 (c1, dual) 不构成辛基")
        if parent.marked:
            child_eta = CurveClass(SurfaceModel(g), self.child_eta)
            if not child_eta.is_primitive():
                raise CutDataError("子闭包的 η 不是本原类")
            image = b.dot(np.array(self.child_eta + self.eta_split, dtype=object))
            if tuple(int(x) for x in image) != parent.eta.vector:
                raise CutDataError("η 与 B·(child_eta, x, y) 不一致")

    @property
    def child_genus(self) -> int:
        return self.parent.genus - 1

    def basis_matrix(self) -> np.ndarray:
        columns = list(self.child_basis) + [self.c1.vector, self.dual.vector]
        return as_matrix([[col[i] for col in columns] for i in range(self.parent.surface.dimension)])

    @classmethod
    def standard(cls, child: ClosureDescriptor) -> "CutData":
        """std_parent(child) 上的标准切割：c1 = a_{g+1}, dual = b_{g+1}"""
        parent = std_parent(child)
        surface = parent.surface
        g = child.genus
        n = surface.dimension
        basis = tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(2 * g))
        c1 = CurveClass(surface, surface.basis_vector(f"a{g + 1}"), f"a{g + 1}")
        return cls(
            parent=parent,
            c1=c1,
            c2=-c1,
            dual=CurveClass(surface, surface.basis_vector(f"b{g + 1}"), f"b{g + 1}"),
            child_basis=basis,
            child_eta=child.eta.vector if child.marked else None,
            eta_split=(0, 1) if child.marked else None,
            child_id=child.id,
        )

    def is_standard(self) -> bool:
        return self == CutData.standard(cut_open(self))


def cut_open(cut: CutData) -> ClosureDescriptor:
    """切开得到亏格减一的子闭包，补空间标签不变"""
    parent = cut.parent
    g = cut.child_genus
    surface = SurfaceModel(g, parent.surface.marked_point)
    eta = CurveClass(surface, cut.child_eta, "η") if parent.marked else None
    return ClosureDescriptor(
        id=cut.child_id,
        genus=g,
        complement_tag=parent.complement_tag,
        surface=surface,
        eta=eta,
        odd=parent.odd,
        manifold=parent.manifold,
        embedding=parent.embedding,
        stage=parent.stage,
    )


def lift_matrix(key: IntMatrix) -> IntMatrix:
    """diag(M, I₂)"""
    return matrix_key(block_diagonal(to_array(key), identity_matrix(2)))


def unlift_matrix(key: IntMatrix) -> Optional[IntMatrix]:
    """若矩阵形如 diag(M, I₂) 则返回 M"""
    matrix = to_array(key)
    n = matrix.shape[0] - 2
    if n < 2:
        return None
    inner = matrix[:n, :n]
    if not np.array_equal(matrix[n:, n:], identity_matrix(2)):
        return None
    if any(matrix[:n, n:].flat) or any(matrix[n:, :n].flat):
        return None
    return matrix_key(inner)
