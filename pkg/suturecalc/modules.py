# -*- coding: utf-8 -*-
"""
自由模与同态模块
有限生成自由模上的矩阵同态、行列式、G-等价类及其复合
"""

from dataclasses import dataclass
from typing import Any, Optional, Sequence, Tuple

from .errors import DimensionMismatchError, NonUnitError, RingMismatchError, UnitGroupError
from .rings import RingSpec, UnitGroup


Matrix = Tuple[Tuple[Any, ...], ...]


@dataclass(frozen=True)
class FreeModule:
    """秩为 rank 的自由 R-模"""
    ring: RingSpec
    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise DimensionMismatchError(f"秩不能为负: {self.rank}")

    def same_as(self, other: "FreeModule") -> bool:
        return self.rank == other.rank and self.ring.same_ring(other.ring)


@dataclass(frozen=True)
class Homomorphism:
    """
    同态 source → target
    matrix 为 target.rank × source.rank 的环元素矩阵
    """
    source: FreeModule
    target: FreeModule
    matrix: Matrix

    def __post_init__(self):
        if not self.source.ring.same_ring(self.target.ring):
            raise RingMismatchError(f"源与目标的环不一致: {self.source.ring} / {self.target.ring}")
        ops = self.source.ring.ops
        rows = tuple(tuple(ops.check(x) for x in row) for row in self.matrix)
        if len(rows) != self.target.rank or any(len(row) != self.source.rank for row in rows):
            raise DimensionMismatchError(
                f"矩阵尺寸应为 {self.target.rank}×{self.source.rank}",
                {"rows": len(rows), "cols": [len(r) for r in rows]},
            )
        object.__setattr__(self, "matrix", rows)

    @property
    def ring(self) -> RingSpec:
        return self.source.ring

    @property
    def shape(self) -> Tuple[int, int]:
        return self.target.rank, self.source.rank

    def is_square(self) -> bool:
        return self.source.rank == self.target.rank

    def is_zero(self) -> bool:
        ops = self.ring.ops
        return all(ops.is_zero(x) for row in self.matrix for x in row)

    def entry(self, i: int, j: int):
        return self.matrix[i][j]

    def pivot(self) -> Optional[Tuple[int, int]]:
        """行优先顺序下第一个非零元素的位置"""
        ops = self.ring.ops
        for i, row in enumerate(self.matrix):
            for j, x in enumerate(row):
                if not ops.is_zero(x):
                    return i, j
        return None

    def formatted(self):
        ops = self.ring.ops
        return [[ops.format(x) for x in row] for row in self.matrix]


# ==================== 构造 ====================

def make_hom(ring: RingSpec, rows: Sequence[Sequence[Any]], source_rank: Optional[int] = None) -> Homomorphism:
    """由矩阵行构造同态，元素按环解析"""
    ops = ring.ops
    matrix = tuple(tuple(ops.parse(x) if isinstance(x, str) else ops.check(x) for x in row) for row in rows)
    cols = source_rank if source_rank is not None else (len(matrix[0]) if matrix else 0)
    return Homomorphism(FreeModule(ring, cols), FreeModule(ring, len(matrix)), matrix)


def identity_hom(module: FreeModule) -> Homomorphism:
    ops = module.ring.ops
    n = module.rank
    rows = tuple(tuple(ops.one() if i == j else ops.zero() for j in range(n)) for i in range(n))
    return Homomorphism(module, module, rows)


def zero_hom(source: FreeModule, target: FreeModule) -> Homomorphism:
    ops = source.ring.ops
    return Homomorphism(source, target, tuple(tuple(ops.zero() for _ in range(source.rank)) for _ in range(target.rank)))


def scale(u, f: Homomorphism) -> Homomorphism:
    ops = f.ring.ops
    return Homomorphism(f.source, f.target, tuple(tuple(ops.mul(u, x) for x in row) for row in f.matrix))


def map_entries(f: Homomorphism, ring: RingSpec, func) -> Homomorphism:
    """逐元素映射到另一个环"""
    source = FreeModule(ring, f.source.rank)
    target = FreeModule(ring, f.target.rank)
    return Homomorphism(source, target, tuple(tuple(func(x) for x in row) for row in f.matrix))


# ==================== 运算 ====================

def compose_hom(f: Homomorphism, g: Homomorphism) -> Homomorphism:
    """
    f∘g（先 g 后 f）

    Args:
        f: 外层同态，f.source 必须等于 g.target
        g: 内层同态
    """
    if not f.ring.same_ring(g.ring):
        raise RingMismatchError(f"环不一致: {f.ring} / {g.ring}")
    if f.source.rank != g.target.rank:
        raise DimensionMismatchError(
            f"无法复合: f 的源秩 {f.source.rank} ≠ g 的目标秩 {g.target.rank}"
        )
    ops = f.ring.ops
    inner = g.target.rank
    rows = []
    for i in range(f.target.rank):
        row = []
        for j in range(g.source.rank):
            acc = ops.zero()
            for k in range(inner):
                a = f.matrix[i][k]
                if ops.is_zero(a):
                    continue
                b = g.matrix[k][j]
                if ops.is_zero(b):
                    continue
                acc = ops.add(acc, ops.mul(a, b))
            row.append(acc)
        rows.append(tuple(row))
    return Homomorphism(g.source, f.target, tuple(rows))


def hom_equal(f: Homomorphism, g: Homomorphism) -> bool:
    return f.shape == g.shape and f.matrix == g.matrix


def determinant(f: Homomorphism):
    """Bareiss 无分数消元，除法均为精确除法"""
    if not f.is_square():
        raise DimensionMismatchError(f"非方阵没有行列式: {f.shape}")
    ops = f.ring.ops
    n = f.source.rank
    if n == 0:
        return ops.one()
    m = [list(row) for row in f.matrix]
    sign = 1
    previous = ops.one()
    for k in range(n - 1):
        if ops.is_zero(m[k][k]):
            swap = next((i for i in range(k + 1, n) if not ops.is_zero(m[i][k])), None)
            if swap is None:
                return ops.zero()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                numerator = ops.sub(ops.mul(m[i][j], m[k][k]), ops.mul(m[i][k], m[k][j]))
                quotient = ops.exact_divide(numerator, previous)
                if quotient is None:
                    raise ArithmeticError("Bareiss 消元出现非精确除法")
                m[i][j] = quotient
        previous = m[k][k]
    result = m[n - 1][n - 1]
    return result if sign == 1 else ops.neg(result)


def is_isomorphism(f: Homomorphism) -> bool:
    """方阵且行列式是环中的单位"""
    if not f.is_square():
        return False
    return f.ring.ops.is_unit(determinant(f))


def adjugate(f: Homomorphism) -> Homomorphism:
    """伴随矩阵 adj(f)，满足 adj(f)·f = det(f)·id"""
    ops = f.ring.ops
    n = f.source.rank
    if n == 0:
        return f
    if n == 1:
        return Homomorphism(f.target, f.source, ((ops.one(),),))
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            # adj[i][j] = (-1)^{i+j} · det(删去第 j 行第 i 列)
            minor = tuple(
                tuple(f.matrix[r][c] for c in range(n) if c != i)
                for r in range(n) if r != j
            )
            sub = FreeModule(f.ring, n - 1)
            value = determinant(Homomorphism(sub, sub, minor))
            row.append(value if (i + j) % 2 == 0 else ops.neg(value))
        rows.append(tuple(row))
    return Homomorphism(f.target, f.source, tuple(rows))


def inverse_class(f: Homomorphism, group: UnitGroup) -> Homomorphism:
    """
    f⁻¹ 所在 G-等价类的一个代表

    Returns:
        det 可精确求逆时返回精确逆；否则当 G = FullUnits 时返回伴随矩阵
    """
    det = determinant(f)
    ops = f.ring.ops
    if not ops.is_unit(det):
        raise NonUnitError("行列式不是单位，同态不可逆", {"det": ops.format(det)})
    adj = adjugate(f)
    inverse = ops.unit_inverse(det)
    if inverse is not None:
        return scale(inverse, adj)
    if group == UnitGroup.FULL_UNITS:
        return adj
    raise UnitGroupError(f"行列式 {ops.format(det)} 的逆不是有限支撑元素，G={group.value} 下无法表示逆")


# ==================== G-等价 ====================

def g_equivalent(f: Homomorphism, g: Homomorphism, group: UnitGroup) -> bool:
    """
    是否存在 u ∈ G 使 f = u·g
    交叉相乘：取 g 的第一个非零元 g_ij，检查 f·g_ij = g·f_ij，再检查 f_ij/g_ij ∈ G
    """
    if f.shape != g.shape:
        raise DimensionMismatchError(f"形状不一致: {f.shape} / {g.shape}")
    if not f.ring.same_ring(g.ring):
        raise RingMismatchError(f"环不一致: {f.ring} / {g.ring}")
    group = UnitGroup(group)
    if group == UnitGroup.TRIVIAL:
        return f.matrix == g.matrix
    ops = f.ring.ops
    pivot = g.pivot()
    if pivot is None:
        return f.is_zero()
    i, j = pivot
    fij, gij = f.matrix[i][j], g.matrix[i][j]
    if ops.is_zero(fij):
        return False
    for row_f, row_g in zip(f.matrix, g.matrix):
        for a, b in zip(row_f, row_g):
            if ops.mul(a, gij) != ops.mul(b, fij):
                return False
    return ops.ratio_in_group(fij, gij, group)


def normalize_class(f: Homomorphism, group: UnitGroup) -> Homomorphism:
    """
    规范代表元 u·f，u ∈ G 使第一个非零元素取规范形式
    零映射原样返回
    """
    pivot = f.pivot()
    if pivot is None:
        return f
    u = f.ring.ops.normalizer(f.matrix[pivot[0]][pivot[1]], UnitGroup(group))
    return scale(u, f)


@dataclass(frozen=True, eq=False)
class GClassHom:
    """同态的 G-等价类，相等性由 g_equivalent 判定"""
    rep: Homomorphism
    unit_group: UnitGroup

    def __post_init__(self):
        object.__setattr__(self, "unit_group", UnitGroup(self.unit_group))

    @property
    def source(self) -> FreeModule:
        return self.rep.source

    @property
    def target(self) -> FreeModule:
        return self.rep.target

    def __eq__(self, other):
        if not isinstance(other, GClassHom):
            return NotImplemented
        if self.rep.shape != other.rep.shape or not self.rep.ring.same_ring(other.rep.ring):
            return False
        group = self.unit_group if self.unit_group.contains(other.unit_group) else other.unit_group
        return g_equivalent(self.rep, other.rep, group)

    def __hash__(self):
        # 零元位置在乘以单位后不变
        ops = self.rep.ring.ops
        pattern = tuple(tuple(ops.is_zero(x) for x in row) for row in self.rep.matrix)
        return hash((self.rep.shape, pattern))

    def compose(self, inner: "GClassHom") -> "GClassHom":
        """self∘inner，G 取两者中较大的"""
        group = self.unit_group if self.unit_group.contains(inner.unit_group) else inner.unit_group
        return GClassHom(compose_hom(self.rep, inner.rep), group)

    def normalized(self) -> "GClassHom":
        return GClassHom(normalize_class(self.rep, self.unit_group), self.unit_group)

    def inverse(self) -> "GClassHom":
        return GClassHom(inverse_class(self.rep, self.unit_group), self.unit_group)

    def is_isomorphism(self) -> bool:
        return is_isomorphism(self.rep)

    def contains_identity(self) -> bool:
        if not self.rep.is_square():
            return False
        return g_equivalent(identity_hom(self.rep.source), self.rep, self.unit_group)
