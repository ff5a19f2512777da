# -*- coding: utf-8 -*-
"""
Novikov 环运算模块
有限支撑的形式和 Σ c_α t^α（有理指数、整数系数）及截断级数求逆
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

from loguru import logger

from .errors import NoLeadingTermError, NonUnitError, SutureCalcError


Rational = Union[int, Fraction]
Term = Tuple[Fraction, int]


def _as_fraction(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"指数必须是精确有理数: {value!r}")


@dataclass(frozen=True)
class NovikovElement:
    """
    有限支撑元素
    terms 按指数严格递增排列，系数非零；空元组表示 0
    """
    terms: Tuple[Term, ...] = ()

    def __post_init__(self):
        previous = None
        for exponent, coefficient in self.terms:
            if not isinstance(exponent, Fraction):
                raise TypeError(f"指数必须是 Fraction: {exponent!r}")
            if not isinstance(coefficient, int) or isinstance(coefficient, bool):
                raise TypeError(f"系数必须是整数: {coefficient!r}")
            if coefficient == 0:
                raise ValueError("系数不能为 0")
            if previous is not None and exponent <= previous:
                raise ValueError("指数必须严格递增")
            previous = exponent

    # ==================== 构造 ====================

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Rational, int]]) -> "NovikovElement":
        """合并同类项、排序并去掉零系数"""
        acc = defaultdict(int)
        for exponent, coefficient in terms:
            acc[_as_fraction(exponent)] += int(coefficient)
        return cls(tuple((e, c) for e, c in sorted(acc.items()) if c != 0))

    @classmethod
    def zero(cls) -> "NovikovElement":
        return cls(())

    @classmethod
    def one(cls) -> "NovikovElement":
        return cls(((Fraction(0), 1),))

    @classmethod
    def constant(cls, value: int) -> "NovikovElement":
        return cls.from_terms([(0, value)])

    @classmethod
    def monomial(cls, exponent: Rational, coefficient: int = 1) -> "NovikovElement":
        return cls.from_terms([(exponent, coefficient)])

    # ==================== 基本性质 ====================

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def valuation(self) -> Fraction:
        """最小指数"""
        return leading_term(self)[0]

    @property
    def max_exponent(self) -> Fraction:
        if not self.terms:
            raise NoLeadingTermError("零元素没有最高次项")
        return self.terms[-1][0]

    # ==================== 运算 ====================

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return NovikovElement.from_terms(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return NovikovElement(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        acc = defaultdict(int)
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                acc[e1 + e2] += c1 * c2
        return NovikovElement(tuple((e, c) for e, c in sorted(acc.items()) if c != 0))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial() or abs(self.terms[0][1]) != 1:
                raise NonUnitError(f"{self} 的负幂不是有限支撑元素")
            e, c = self.terms[0]
            return NovikovElement.monomial(-e * (-n), c ** (-n))
        result = NovikovElement.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self) -> str:
        return format_element(self)


def _coerce(value) -> Optional[NovikovElement]:
    if isinstance(value, NovikovElement):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return NovikovElement.constant(value)
    return None


# ==================== 基本操作 ====================

def exp_hom(alpha: Rational) -> NovikovElement:
    """exp 同态：α ↦ t^α"""
    return NovikovElement(((_as_fraction(alpha), 1),))


def arith(x: NovikovElement, y: NovikovElement, op: str) -> NovikovElement:
    """
    精确环运算

    Args:
        op: add / mul / neg（neg 时忽略 y）
    """
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    raise SutureCalcError(f"未知运算: {op}")


def leading_term(x: NovikovElement) -> Term:
    """最小指数项 (exponent, coefficient)"""
    if not x.terms:
        raise NoLeadingTermError("零元素没有首项")
    return x.terms[0]


def is_unit(x: NovikovElement) -> bool:
    """非零且首项系数为 ±1"""
    return bool(x.terms) and abs(x.terms[0][1]) == 1


def exact_divide(x: NovikovElement, y: NovikovElement) -> Optional[NovikovElement]:
    """
    有限支撑元素的精确除法

    Returns:
        q 使得 q·y = x；不存在有限支撑商时返回 None
    """
    if y.is_zero():
        raise ZeroDivisionError("除数为 0")
    if x.is_zero():
        return NovikovElement.zero()
    ey, cy = y.terms[0]
    bound = x.max_exponent - y.max_exponent
    quotient = []
    remainder = x
    while not remainder.is_zero():
        er, cr = remainder.terms[0]
        if cr % cy != 0:
            return None
        exponent = er - ey
        if exponent > bound:
            return None
        term = NovikovElement(((exponent, cr // cy),))
        quotient.append((exponent, cr // cy))
        remainder = remainder - term * y
    return NovikovElement.from_terms(quotient)


# ==================== 截断级数 ====================

@dataclass(frozen=True)
class TruncatedSeries:
    """
    截断级数：只知道指数 ≤ cutoff 的项
    """
    element: NovikovElement
    cutoff: Fraction

    def __post_init__(self):
        if not isinstance(self.cutoff, Fraction):
            object.__setattr__(self, "cutoff", _as_fraction(self.cutoff))
        if self.element.terms and self.element.max_exponent > self.cutoff:
            raise ValueError("截断级数含有超过 cutoff 的项")

    @property
    def terms(self) -> Tuple[Term, ...]:
        return self.element.terms

    @classmethod
    def of(cls, x: NovikovElement, cutoff: Rational) -> "TruncatedSeries":
        return truncate(x, cutoff)

    def __add__(self, other):
        if isinstance(other, NovikovElement):
            return truncate(self.element + other, self.cutoff)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        cutoff = min(self.cutoff, other.cutoff)
        return truncate(self.element + other.element, cutoff)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.element, self.cutoff)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, NovikovElement):
            if other.is_zero():
                return TruncatedSeries(NovikovElement.zero(), self.cutoff)
            cutoff = self.cutoff + other.valuation
            return truncate(self.element * other, cutoff)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        bounds = [self.cutoff, other.cutoff]
        if not other.element.is_zero():
            bounds.append(self.cutoff + other.element.valuation)
        if not self.element.is_zero():
            bounds.append(other.cutoff + self.element.valuation)
        cutoff = min(bounds)
        return truncate(self.element * other.element, cutoff)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"{format_element(self.element)} + O(t^({_format_rational(self.cutoff)}))"


def truncate(x: NovikovElement, cutoff: Rational) -> TruncatedSeries:
    cutoff = _as_fraction(cutoff)
    return TruncatedSeries(NovikovElement(tuple(t for t in x.terms if t[0] <= cutoff)), cutoff)


def invert(x: NovikovElement, cutoff: Rational) -> TruncatedSeries:
    """
    首项除法求逆（几何级数展开）

    Args:
        x: 单位元素
        cutoff: 精度，保证 x·result − 1 的所有指数 > cutoff

    Returns:
        TruncatedSeries，其 cutoff 为 cutoff − v(x)
    """
    if not is_unit(x):
        raise NonUnitError(f"{format_element(x)} 不是单位", {"element": format_element(x)})
    cutoff = _as_fraction(cutoff)
    e, c = x.terms[0]
    remainder = NovikovElement.one()
    result = []
    steps = 0
    while remainder.terms and remainder.terms[0][0] <= cutoff:
        er, cr = remainder.terms[0]
        term = NovikovElement(((er - e, cr * c),))
        result.append(term.terms[0])
        remainder = remainder - term * x
        steps += 1
    logger.debug(f"级数求逆完成: {steps} 项, cutoff={cutoff}")
    return TruncatedSeries(NovikovElement.from_terms(result), cutoff - e)


# ==================== 文本格式 ====================

def _format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_element(x: NovikovElement) -> str:
    """输出 c1*t^(p1/q1) + c2*t^(p2/q2) + ... 形式"""
    if not x.terms:
        return "0"
    parts = []
    for index, (exponent, coefficient) in enumerate(x.terms):
        magnitude = abs(coefficient)
        if exponent == 0:
            body = str(magnitude)
        elif magnitude == 1:
            body = f"t^({_format_rational(exponent)})"
        else:
            body = f"{magnitude}*t^({_format_rational(exponent)})"
        if index == 0:
            parts.append(body if coefficient > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coefficient > 0 else f"- {body}")
    return " ".join(parts)
