# -*- coding: utf-8 -*-
"""
系数环说明模块
RingSpec 指定环的种类与单位子群 G，RingOps 为各种环提供统一的运算接口
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Optional

from .errors import SutureCalcError, UnitGroupError
from .expr import parse_element
from .novikov import NovikovElement, exact_divide, format_element, is_unit


class RingKind(str, Enum):
    INTEGERS = "Integers"
    INTEGERS_MOD2 = "IntegersMod2"
    RATIONAL_FIELD = "RationalField"
    NOVIKOV = "NovikovOverIntegers"


class UnitGroup(str, Enum):
    TRIVIAL = "Trivial"
    SIGNS = "Signs"
    FULL_UNITS = "FullUnits"

    def contains(self, other: "UnitGroup") -> bool:
        """G 的包含关系 Trivial ⊆ Signs ⊆ FullUnits"""
        order = [UnitGroup.TRIVIAL, UnitGroup.SIGNS, UnitGroup.FULL_UNITS]
        return order.index(self) >= order.index(other)


class RingOps:
    """
    环运算接口
    第二个 Novikov 型环实例只需实现同样的方法
    """
    kind: RingKind

    def zero(self) -> Any:
        raise NotImplementedError

    def one(self) -> Any:
        raise NotImplementedError

    def from_int(self, n: int) -> Any:
        raise NotImplementedError

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def is_zero(self, x) -> bool:
        return x == self.zero()

    def is_unit(self, x) -> bool:
        raise NotImplementedError

    def exact_divide(self, x, y) -> Optional[Any]:
        raise NotImplementedError

    def unit_inverse(self, u) -> Optional[Any]:
        """单位的精确逆；逆元不是有限表示时返回 None"""
        raise NotImplementedError

    def in_group(self, u, group: UnitGroup) -> bool:
        raise NotImplementedError

    def ratio_in_group(self, f, g, group: UnitGroup) -> bool:
        """在已知 f·h = g·f_ij 交叉相乘成立时，判断 f/g 是否属于 G"""
        q = self.exact_divide(f, g)
        return q is not None and self.in_group(q, group)

    def normalizer(self, pivot, group: UnitGroup) -> Any:
        """返回 u ∈ G，使 u·pivot 为规范形式"""
        raise NotImplementedError

    def check(self, x) -> Any:
        """校验并返回元素"""
        raise NotImplementedError

    def parse(self, value) -> Any:
        raise NotImplementedError

    def format(self, x) -> str:
        return str(x)


class IntegerOps(RingOps):
    kind = RingKind.INTEGERS

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return int(n)

    def is_unit(self, x):
        return x in (1, -1)

    def exact_divide(self, x, y):
        if y == 0:
            raise ZeroDivisionError("除数为 0")
        return x // y if x % y == 0 else None

    def unit_inverse(self, u):
        return u if u in (1, -1) else None

    def in_group(self, u, group):
        if group == UnitGroup.TRIVIAL:
            return u == 1
        return u in (1, -1)

    def normalizer(self, pivot, group):
        if group == UnitGroup.TRIVIAL:
            return 1
        return 1 if pivot > 0 else -1

    def check(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise SutureCalcError(f"整数环元素类型错误: {x!r}")
        return x

    def parse(self, value):
        if isinstance(value, int) and not isinstance(value, bool):
            return value
        try:
            return int(str(value).strip())
        except ValueError:
            raise SutureCalcError(f"无法解析整数: {value!r}")


class Mod2Ops(RingOps):
    kind = RingKind.INTEGERS_MOD2

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return int(n) % 2

    def add(self, x, y):
        return (x + y) % 2

    def sub(self, x, y):
        return (x - y) % 2

    def mul(self, x, y):
        return (x * y) % 2

    def neg(self, x):
        return x

    def is_unit(self, x):
        return x == 1

    def exact_divide(self, x, y):
        if y == 0:
            raise ZeroDivisionError("除数为 0")
        return x

    def unit_inverse(self, u):
        return 1 if u == 1 else None

    def in_group(self, u, group):
        return u == 1

    def normalizer(self, pivot, group):
        return 1

    def check(self, x):
        if x not in (0, 1) or isinstance(x, bool):
            raise SutureCalcError(f"Z/2 元素必须是 0 或 1: {x!r}")
        return x

    def parse(self, value):
        try:
            return int(str(value).strip()) % 2
        except ValueError:
            raise SutureCalcError(f"无法解析 Z/2 元素: {value!r}")


class RationalOps(RingOps):
    kind = RingKind.RATIONAL_FIELD

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(int(n))

    def is_unit(self, x):
        return x != 0

    def exact_divide(self, x, y):
        if y == 0:
            raise ZeroDivisionError("除数为 0")
        return Fraction(x) / Fraction(y)

    def unit_inverse(self, u):
        return 1 / Fraction(u) if u != 0 else None

    def in_group(self, u, group):
        if group == UnitGroup.TRIVIAL:
            return u == 1
        if group == UnitGroup.SIGNS:
            return u in (1, -1)
        return u != 0

    def ratio_in_group(self, f, g, group):
        return self.in_group(Fraction(f) / Fraction(g), group)

    def normalizer(self, pivot, group):
        if group == UnitGroup.TRIVIAL:
            return Fraction(1)
        if group == UnitGroup.SIGNS:
            return Fraction(1 if pivot > 0 else -1)
        return 1 / Fraction(pivot)

    def check(self, x):
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise SutureCalcError(f"有理数域元素类型错误: {x!r}")
        return Fraction(x)

    def parse(self, value):
        try:
            return Fraction(str(value).strip())
        except ValueError:
            raise SutureCalcError(f"无法解析有理数: {value!r}")

    def format(self, x):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class NovikovOps(RingOps):
    kind = RingKind.NOVIKOV

    def zero(self):
        return NovikovElement.zero()

    def one(self):
        return NovikovElement.one()

    def from_int(self, n):
        return NovikovElement.constant(int(n))

    def is_zero(self, x):
        return x.is_zero()

    def is_unit(self, x):
        return is_unit(x)

    def exact_divide(self, x, y):
        return exact_divide(x, y)

    def unit_inverse(self, u):
        if u.is_monomial() and abs(u.terms[0][1]) == 1:
            return u ** -1
        return None

    def in_group(self, u, group):
        if group == UnitGroup.TRIVIAL:
            return u == self.one()
        if group == UnitGroup.SIGNS:
            return u in (self.one(), -self.one())
        return is_unit(u)

    def ratio_in_group(self, f, g, group):
        if group != UnitGroup.FULL_UNITS:
            return f == g if group == UnitGroup.TRIVIAL else f in (g, -g)
        if is_unit(g):
            # 首项为单位时比值 f/g 在完备化环中，是单位当且仅当 f 是单位
            return is_unit(f)
        q = exact_divide(f, g)
        if q is not None:
            return is_unit(q)
        q = exact_divide(g, f)
        return q is not None and is_unit(q)

    def normalizer(self, pivot, group):
        exponent, coefficient = pivot.terms[0]
        sign = 1 if coefficient > 0 else -1
        if group == UnitGroup.TRIVIAL:
            return self.one()
        if group == UnitGroup.SIGNS:
            return NovikovElement.constant(sign)
        return NovikovElement.monomial(-exponent, sign)

    def check(self, x):
        if isinstance(x, int) and not isinstance(x, bool):
            return NovikovElement.constant(x)
        if not isinstance(x, NovikovElement):
            raise SutureCalcError(f"Novikov 环元素类型错误: {x!r}")
        return x

    def parse(self, value):
        if isinstance(value, int) and not isinstance(value, bool):
            return NovikovElement.constant(value)
        return parse_element(str(value))

    def format(self, x):
        return format_element(x)


_OPS = {
    RingKind.INTEGERS: IntegerOps(),
    RingKind.INTEGERS_MOD2: Mod2Ops(),
    RingKind.RATIONAL_FIELD: RationalOps(),
    RingKind.NOVIKOV: NovikovOps(),
}


def check_unit_group(kind: RingKind, unit_group: UnitGroup) -> None:
    """G 必须适合环：Z/2 中 -1 = 1，Signs 没有意义"""
    if RingKind(kind) == RingKind.INTEGERS_MOD2 and UnitGroup(unit_group) == UnitGroup.SIGNS:
        raise UnitGroupError("IntegersMod2 不能取 G=Signs，请用 Trivial 或 FullUnits", {"kind": RingKind(kind).value})


@dataclass(frozen=True)
class RingSpec:
    """系数环及单位子群 G ≤ R^×"""
    kind: RingKind = RingKind.INTEGERS
    unit_group: UnitGroup = UnitGroup.SIGNS

    def __post_init__(self):
        object.__setattr__(self, "kind", RingKind(self.kind))
        object.__setattr__(self, "unit_group", UnitGroup(self.unit_group))
        check_unit_group(self.kind, self.unit_group)

    @property
    def ops(self) -> RingOps:
        return _OPS[self.kind]

    def with_group(self, unit_group: UnitGroup) -> "RingSpec":
        return RingSpec(self.kind, unit_group)

    def same_ring(self, other: "RingSpec") -> bool:
        return self.kind == other.kind

    def __str__(self) -> str:
        return f"{self.kind.value}[{self.unit_group.value}]"


@lru_cache(maxsize=None)
def ring(kind: str, unit_group: str = "Signs") -> RingSpec:
    return RingSpec(RingKind(kind), UnitGroup(unit_group))
