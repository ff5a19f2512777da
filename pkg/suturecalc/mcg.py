# -*- coding: utf-8 -*-
"""
曲面同调与 Dehn 扭转模块
H₁(R) 采用交错基 a₁, b₁, …, a_g, b_g，交叉形式为标准辛形式
正扭转的同调作用约定为 x ↦ x + ⟨x,c⟩·c
"""

from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import product
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from .config import settings
from .errors import (
    FactorizationError,
    NonPrimitiveCurveError,
    NotSymplecticError,
    SurfaceMismatchError,
)


Vector = Tuple[int, ...]


# ==================== 整数矩阵工具 ====================

def as_matrix(rows) -> np.ndarray:
    """转换为 Python 整数的 object 数组，避免 int64 溢出"""
    array = np.array(rows, dtype=object)
    if array.ndim != 2:
        raise ValueError("矩阵必须是二维的")
    return np.vectorize(int, otypes=[object])(array) if array.size else array


def identity_matrix(n: int) -> np.ndarray:
    return np.identity(n, dtype=int).astype(object)


def matrix_key(matrix: np.ndarray) -> Tuple[Vector, ...]:
    """可哈希的矩阵表示"""
    return tuple(tuple(int(x) for x in row) for row in matrix)


def matrices_equal(x: np.ndarray, y: np.ndarray) -> bool:
    return x.shape == y.shape and np.array_equal(x, y)


@lru_cache(maxsize=None)
def _form(genus: int) -> np.ndarray:
    j = np.zeros((2 * genus, 2 * genus), dtype=int).astype(object)
    for i in range(genus):
        j[2 * i, 2 * i + 1] = 1
        j[2 * i + 1, 2 * i] = -1
    return j


def form_matrix(genus: int) -> np.ndarray:
    """标准辛形式矩阵 J，⟨x,y⟩ = xᵀJy"""
    return _form(genus).copy()


def is_symplectic(matrix: np.ndarray) -> bool:
    n = matrix.shape[0]
    if matrix.shape != (n, n) or n % 2:
        return False
    j = form_matrix(n // 2)
    return matrices_equal(matrix.T.dot(j).dot(matrix), j)


def symplectic_inverse(matrix: np.ndarray) -> np.ndarray:
    """M⁻¹ = −J·Mᵀ·J"""
    j = form_matrix(matrix.shape[0] // 2)
    return -j.dot(matrix.T).dot(j)


def block_diagonal(*blocks: np.ndarray) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=int).astype(object)
    offset = 0
    for block in blocks:
        size = block.shape[0]
        out[offset:offset + size, offset:offset + size] = block
        offset += size
    return out


# ==================== 曲面与曲线 ====================

@dataclass(frozen=True)
class SurfaceModel:
    """亏格 g 的闭曲面，marked_point 用于奇闭包"""
    genus: int
    marked_point: Optional[str] = None

    def __post_init__(self):
        if self.genus < 1:
            raise SurfaceMismatchError(f"亏格必须 ≥ 1: {self.genus}")

    @property
    def dimension(self) -> int:
        return 2 * self.genus

    @property
    def basis(self) -> Tuple[str, ...]:
        return tuple(f"{letter}{i}" for i in range(1, self.genus + 1) for letter in ("a", "b"))

    def basis_vector(self, label: str) -> Vector:
        index = self.basis.index(label)
        return tuple(1 if k == index else 0 for k in range(self.dimension))

    def curve(self, label: str) -> "CurveClass":
        return CurveClass(self, self.basis_vector(label), label)


def content(vector: Iterable[int]) -> int:
    return reduce(gcd, (abs(int(x)) for x in vector), 0)


@dataclass(frozen=True)
class CurveClass:
    """曲线的同调类"""
    surface: SurfaceModel
    vector: Vector
    name: str = ""

    def __post_init__(self):
        vector = tuple(int(x) for x in self.vector)
        if len(vector) != self.surface.dimension:
            raise SurfaceMismatchError(f"向量长度 {len(vector)} 与亏格 {self.surface.genus} 不符")
        object.__setattr__(self, "vector", vector)

    def is_primitive(self) -> bool:
        return content(self.vector) == 1

    def require_essential(self) -> "CurveClass":
        if not any(self.vector):
            raise NonPrimitiveCurveError("零向量不能表示本质曲线", {"curve": list(self.vector)})
        if not self.is_primitive():
            raise NonPrimitiveCurveError("曲线类不是本原的", {"curve": list(self.vector)})
        return self

    def array(self) -> np.ndarray:
        return np.array(self.vector, dtype=object)

    def __neg__(self) -> "CurveClass":
        return CurveClass(self.surface, tuple(-x for x in self.vector), f"-{self.name}" if self.name else "")

    def label(self) -> str:
        return self.name or str(list(self.vector))


def intersection(x: CurveClass, y: CurveClass) -> int:
    """⟨x,y⟩ = Σ(x_{a_i}·y_{b_i} − x_{b_i}·y_{a_i})"""
    if x.surface.genus != y.surface.genus:
        raise SurfaceMismatchError("曲线位于不同曲面上")
    return pairing(x.vector, y.vector)


def pairing(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i] for i in range(len(x) // 2))


@lru_cache(maxsize=4096)
def _transvection(vector: Vector, power: int) -> np.ndarray:
    """T_c^n = I + n·c(Jc)ᵀ；返回缓存中的共享数组，调用方只读"""
    c = np.array(vector, dtype=object)
    jc = _form(len(vector) // 2).dot(c)
    return identity_matrix(len(vector)) + power * np.outer(c, jc)


def twist_matrix(c: CurveClass, sign: int) -> np.ndarray:
    """
    Dehn 扭转的同调作用

    Args:
        c: 本原曲线类
        sign: +1 为正扭转 x ↦ x + ⟨x,c⟩c，−1 为其逆
    """
    if sign not in (1, -1):
        raise ValueError(f"sign 必须是 ±1: {sign}")
    c.require_essential()
    return _transvection(c.vector, sign).copy()


def transport_curve(matrix: np.ndarray, c: CurveClass) -> CurveClass:
    """f(c) = M·c"""
    c.require_essential()
    image = tuple(int(x) for x in matrix.dot(c.array()))
    return CurveClass(c.surface, image, f"f({c.name})" if c.name else "")


# ==================== 扭转字 ====================

@dataclass(frozen=True)
class TwistLetter:
    curve: CurveClass
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign 必须是 ±1: {self.sign}")

    def inverse(self) -> "TwistLetter":
        return TwistLetter(self.curve, -self.sign)

    def matrix(self) -> np.ndarray:
        return twist_matrix(self.curve, self.sign)


@dataclass(frozen=True)
class TwistWord:
    """带符号扭转字，word_action 为按顺序的矩阵乘积（最右边的字母最先作用）"""
    surface: SurfaceModel
    letters: Tuple[TwistLetter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for letter in self.letters:
            if letter.curve.surface.genus != self.surface.genus:
                raise SurfaceMismatchError("字母的曲线不在同一曲面上")

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "TwistWord") -> "TwistWord":
        if other.surface.genus != self.surface.genus:
            raise SurfaceMismatchError("无法连接不同曲面上的字")
        return TwistWord(self.surface, self.letters + other.letters)

    def inverse(self) -> "TwistWord":
        return TwistWord(self.surface, tuple(l.inverse() for l in reversed(self.letters)))

    def is_positive(self) -> bool:
        return all(l.sign == 1 for l in self.letters)

    def reduced(self) -> "TwistWord":
        """消去相邻的 D_c·D_c⁻¹"""
        stack: List[TwistLetter] = []
        for letter in self.letters:
            if stack and stack[-1].curve.vector == letter.curve.vector and stack[-1].sign == -letter.sign:
                stack.pop()
            else:
                stack.append(letter)
        return TwistWord(self.surface, tuple(stack))


def _letter_runs(word: TwistWord) -> Tuple[Tuple[Vector, int], ...]:
    """相邻同一曲线的字母合并为幂"""
    runs: List[List] = []
    for letter in word.letters:
        vector = letter.curve.vector
        if runs and runs[-1][0] == vector:
            runs[-1][1] += letter.sign
        else:
            letter.curve.require_essential()
            runs.append([vector, letter.sign])
    return tuple((vector, power) for vector, power in runs if power)


@lru_cache(maxsize=256)
def _runs_action(dimension: int, runs: Tuple[Tuple[Vector, int], ...]) -> np.ndarray:
    result = identity_matrix(dimension)
    for vector, power in runs:
        result = result.dot(_transvection(vector, power))
    return result


def word_action(word: TwistWord) -> np.ndarray:
    return _runs_action(word.surface.dimension, _letter_runs(word)).copy()


def is_identity_on_homology(word: TwistWord) -> bool:
    return matrices_equal(word_action(word), identity_matrix(word.surface.dimension))


# ==================== 辛矩阵分解 ====================

def default_generators(surface: SurfaceModel) -> List[CurveClass]:
    """a_i, b_i 以及连接类 c_i = a_i − a_{i+1}"""
    g = surface.genus
    curves = []
    for i in range(1, g + 1):
        curves.append(surface.curve(f"a{i}"))
        curves.append(surface.curve(f"b{i}"))
    for i in range(1, g):
        vector = [0] * surface.dimension
        vector[2 * (i - 1)] = 1
        vector[2 * i] = -1
        curves.append(CurveClass(surface, tuple(vector), f"c{i}"))
    return curves


def _push_run(runs: List[Tuple[Vector, int]], vector: Vector, power: int) -> None:
    """追加 T^power，与末尾同一曲线的幂合并，合并为 0 时消去"""
    if runs and runs[-1][0] == vector:
        total = runs.pop()[1] + power
        if total:
            runs.append((vector, total))
    elif power:
        runs.append((vector, power))


class _Eliminator:
    """
    左乘扭转把矩阵消元为单位阵，ops 按顺序记录 (曲线, 幂)
    a_k, b_k 位于坐标 2k, 2k+1（k 从 0 开始）
    """

    def __init__(self, matrix: np.ndarray):
        self.current = matrix.copy()
        self.dimension = matrix.shape[0]
        self.genus = self.dimension // 2
        self.ops: List[Tuple[Vector, int]] = []

    def _unit(self, index: int) -> Vector:
        return tuple(1 if k == index else 0 for k in range(self.dimension))

    def a(self, k: int) -> Vector:
        return self._unit(2 * k)

    def b(self, k: int) -> Vector:
        return self._unit(2 * k + 1)

    def c(self, k: int) -> Vector:
        return tuple(1 if i == 2 * k else (-1 if i == 2 * k + 2 else 0) for i in range(self.dimension))

    def twist(self, vector: Vector, power: int):
        if power == 0:
            return
        self.current = _transvection(vector, power).dot(self.current)
        _push_run(self.ops, vector, power)

    # v_{a_k} += m·v_{b_k}
    def add_b_to_a(self, k: int, m: int):
        self.twist(self.a(k), -m)

    # v_{b_k} += m·v_{a_k}
    def add_a_to_b(self, k: int, m: int):
        self.twist(self.b(k), m)

    # v_{a_k} += m·v_{b_{k+1}}, v_{a_{k+1}} += m·v_{b_k}
    def cross(self, k: int, m: int):
        if m == 0:
            return
        self.twist(self.a(k + 1), -m)
        self.twist(self.a(k), -m)
        self.twist(self.c(k), m)

    # v_{a_k} += m·v_{a_{k+1}}，要求 v_{b_k} = v_{b_{k+1}} = 0
    def add_down(self, k: int, m: int):
        if m == 0:
            return
        self.add_a_to_b(k + 1, 1)
        self.cross(k, m)
        self.add_a_to_b(k + 1, -1)

    # v_{a_{k+1}} += m·v_{a_k}，要求 v_{b_k} = v_{b_{k+1}} = 0
    def add_up(self, k: int, m: int):
        if m == 0:
            return
        self.add_a_to_b(k, 1)
        self.cross(k, m)
        self.add_a_to_b(k, -1)

    def column(self, index: int) -> List[int]:
        return [int(x) for x in self.current[:, index]]

    def reduce_to_a(self, index: int, k: int):
        """把第 index 列（仅在块 k.. 上非零，本原）化为 e_{a_k}"""
        for j in range(k, self.genus):
            while True:
                v = self.column(index)
                x, y = v[2 * j], v[2 * j + 1]
                if y == 0:
                    break
                if x == 0:
                    self.add_b_to_a(j, 1)
                    continue
                self.add_a_to_b(j, -(y // x))
                v = self.column(index)
                x, y = v[2 * j], v[2 * j + 1]
                if y == 0:
                    break
                self.add_b_to_a(j, -(x // y))
        for j in range(self.genus - 2, k - 1, -1):
            while True:
                v = self.column(index)
                x, y = v[2 * j], v[2 * j + 2]
                if y == 0:
                    break
                if x == 0:
                    self.add_down(j, 1)
                    continue
                self.add_up(j, -(y // x))
                v = self.column(index)
                x, y = v[2 * j], v[2 * j + 2]
                if y == 0:
                    break
                self.add_down(j, -(x // y))
        if self.column(index)[2 * k] == -1:
            self.add_a_to_b(k, 1)
            self.add_b_to_a(k, -2)
            self.add_a_to_b(k, 1)
        if self.column(index) != list(self._unit(2 * k)):
            raise FactorizationError("列消元失败：向量不是本原的", {"column": self.column(index)})

    def reduce_b_column(self, k: int):
        """在 a_k 列已为 e_{a_k} 时把 b_k 列化为 e_{b_k}"""
        index = 2 * k + 1
        if k + 1 < self.genus:
            tail = self.column(index)[2 * k + 2:]
            d = content(tail)
            if d:
                # 尾部按本原向量消元，线性性给出 d·e_{a_{k+1}}
                vector = [0] * (2 * k + 2) + [x // d for x in tail]
                sub = _Eliminator(np.array([[x] for x in vector], dtype=object))
                sub.reduce_to_a(0, k + 1)
                for vec, power in sub.ops:
                    self.twist(vec, power)
                value = self.column(index)[2 * k + 2]
                self.cross(k, -value)
        self.add_b_to_a(k, -self.column(index)[2 * k])
        if self.column(index) != list(self._unit(index)):
            raise FactorizationError("b 列消元失败", {"column": self.column(index)})

    def run(self):
        for k in range(self.genus):
            self.reduce_to_a(2 * k, k)
            self.reduce_b_column(k)


def carry_to_first_basis(u: CurveClass) -> np.ndarray:
    """返回辛矩阵 P 使 P·u = a₁"""
    u.require_essential()
    eliminator = _Eliminator(np.array([[x] for x in u.vector], dtype=object))
    eliminator.reduce_to_a(0, 0)
    result = identity_matrix(u.surface.dimension)
    for vector, power in eliminator.ops:
        result = _transvection(vector, power).dot(result)
    return result


def _norm(matrix: np.ndarray) -> int:
    return int(sum(abs(int(x)) for x in (matrix - identity_matrix(matrix.shape[0])).flat))


def _greedy_factor(matrix: np.ndarray, generators: Sequence[CurveClass]) -> List[Tuple[Vector, int]]:
    """生成元不含默认集合时的有界贪心搜索（允许少量回溯）"""
    cfg = settings.factorization
    moves = [(g.vector, s) for g in generators for s in (1, -1)]
    current = matrix.copy()
    ops: List[Tuple[Vector, int]] = []
    steps = 0
    while _norm(current) > 0:
        if steps >= cfg.max_steps:
            raise FactorizationError("超出搜索步数上限，生成元集合可能不足", {"max_steps": cfg.max_steps})
        best = None
        base = _norm(current)
        for depth in range(1, cfg.backtrack_depth + 2):
            for combo in product(moves, repeat=depth):
                candidate = current
                for vector, sign in combo:
                    candidate = _transvection(vector, sign).dot(candidate)
                score = _norm(candidate)
                if score < base and (best is None or score < best[0]):
                    best = (score, combo, candidate)
            if best is not None:
                break
        if best is None:
            raise FactorizationError("贪心搜索无法继续降低范数，生成元集合不足")
        _, combo, current = best
        ops.extend(combo)
        steps += 1
    return ops


def _positive_partner(vector: Vector, generators: Sequence[CurveClass]) -> Vector:
    for candidate in generators:
        if abs(pairing(vector, candidate.vector)) == 1:
            return candidate.vector
    raise FactorizationError("找不到与生成元交叉数为 ±1 的伙伴曲线", {"curve": list(vector)})


def _contains_default(generators: Sequence[CurveClass], surface: SurfaceModel) -> bool:
    vectors = {g.vector for g in generators}
    return all(g.vector in vectors for g in default_generators(surface))


def factor_symplectic(
    matrix: np.ndarray,
    generators: Optional[Sequence[CurveClass]] = None,
    positive_only: bool = False,
    surface: Optional[SurfaceModel] = None,
) -> TwistWord:
    """
    把辛矩阵分解为扭转字

    Args:
        matrix: 2g×2g 整数辛矩阵
        generators: 生成曲线，默认 a_i, b_i, a_i − a_{i+1}
        positive_only: 只使用正扭转（负字母 T_g⁻¹ 换成 T_d·(T_g·T_d)⁵）

    Returns:
        word_action 恰为 matrix 的字
    """
    matrix = as_matrix(matrix)
    if not is_symplectic(matrix):
        raise NotSymplecticError("输入矩阵不保持辛形式", {"matrix": [list(r) for r in matrix_key(matrix)]})
    surface = surface or SurfaceModel(matrix.shape[0] // 2)
    if surface.dimension != matrix.shape[0]:
        raise SurfaceMismatchError("矩阵尺寸与曲面亏格不符")
    generators = list(generators) if generators else default_generators(surface)
    names = {g.vector: g.name for g in generators}

    if _contains_default(generators, surface):
        eliminator = _Eliminator(matrix)
        eliminator.run()
        ops = eliminator.ops
    else:
        ops = _greedy_factor(matrix, generators)

    # 消元步骤的逆按原顺序排列，在幂形式下自由约化后才展开成字母
    runs: List[Tuple[Vector, int]] = []
    for vector, power in ops:
        _push_run(runs, vector, -power)
    letters: List[TwistLetter] = []
    for vector, power in runs:
        curve = CurveClass(surface, vector, names.get(vector, ""))
        if power > 0 or not positive_only:
            letters.extend([TwistLetter(curve, 1 if power > 0 else -1)] * abs(power))
            continue
        # T_g⁻¹ = T_d·(T_g·T_d)⁵
        d = _positive_partner(vector, generators)
        partner = TwistLetter(CurveClass(surface, d, names.get(d, "")), 1)
        block = [partner] + [TwistLetter(curve, 1), partner] * 5
        letters.extend(block * abs(power))
    word = TwistWord(surface, tuple(letters))

    if not matrices_equal(word_action(word), matrix):
        raise FactorizationError("分解结果校验失败")
    logger.debug(f"辛矩阵分解: 亏格 {surface.genus}, 字长 {len(word)}, positive_only={positive_only}")
    return word


def word_from_vectors(surface: SurfaceModel, letters: Iterable[Tuple[Sequence[int], int]]) -> TwistWord:
    names = {g.vector: g.name for g in default_generators(surface)}
    built = []
    for vector, sign in letters:
        vector = tuple(int(x) for x in vector)
        built.append(TwistLetter(CurveClass(surface, vector, names.get(vector, "")), int(sign)))
    return TwistWord(surface, tuple(built))
