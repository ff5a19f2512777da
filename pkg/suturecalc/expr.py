# -*- coding: utf-8 -*-
"""
Novikov 表达式解析模块
词法用正则切分，语法为递归下降：

    expr  := term (('+' | '-') term)*
    term  := unary ('*' unary)*
    unary := ('+' | '-') unary | power
    power := atom ('^' exponent)?
    atom  := INT | 't' | '(' expr ')' | 'inv' '(' expr ')'
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

from .errors import ExpressionParseError
from .novikov import NovikovElement, TruncatedSeries, exp_hom, invert


Value = Union[NovikovElement, TruncatedSeries]

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(inv)\b|(t)\b|(\*\*|[-+*/^()]))")


@dataclass(frozen=True)
class Token:
    kind: str  # int / inv / t / op / end
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN_RE.match(text, position)
        if match is None or match.end() == position:
            start = position + (len(text[position:]) - len(text[position:].lstrip()))
            raise ExpressionParseError(f"无法识别的字符 {text[start]!r}", start, text)
        number, inv, var, op = match.groups()
        start = match.start(match.lastindex)
        if number is not None:
            tokens.append(Token("int", number, start))
        elif inv is not None:
            tokens.append(Token("inv", inv, start))
        elif var is not None:
            tokens.append(Token("t", var, start))
        else:
            tokens.append(Token("op", "^" if op == "**" else op, start))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class ExpressionParser:
    """
    递归下降求值器

    Args:
        text: 表达式文本
        cutoff: inv(...) 使用的截断指数；为 None 时不允许 inv
    """

    def __init__(self, text: str, cutoff: Optional[Fraction] = None):
        self.text = text
        self.cutoff = cutoff
        self.tokens = tokenize(text)
        self.index = 0

    # ==================== 工具 ====================

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _error(self, message: str, token: Optional[Token] = None) -> ExpressionParseError:
        token = token or self.current
        return ExpressionParseError(message, token.position, self.text)

    def _accept(self, text: str) -> bool:
        if self.current.kind == "op" and self.current.text == text:
            self.index += 1
            return True
        return False

    def _expect(self, text: str):
        if not self._accept(text):
            raise self._error(f"缺少 {text!r}")

    def _int(self) -> int:
        token = self.current
        if token.kind != "int":
            raise self._error("需要整数")
        self.index += 1
        return int(token.text)

    # ==================== 语法 ====================

    def parse(self) -> Value:
        value = self._expr()
        if self.current.kind != "end":
            raise self._error(f"多余的输入 {self.current.text!r}")
        return value

    def _expr(self) -> Value:
        value = self._term()
        while True:
            if self._accept("+"):
                value = value + self._term()
            elif self._accept("-"):
                value = value - self._term()
            else:
                return value

    def _term(self) -> Value:
        value = self._unary()
        while self._accept("*"):
            value = _multiply(value, self._unary())
        return value

    def _unary(self) -> Value:
        if self._accept("-"):
            return -self._unary()
        if self._accept("+"):
            return self._unary()
        return self._power()

    def _power(self) -> Value:
        token = self.current
        if token.kind == "t":
            self.index += 1
            if self._accept("^"):
                return exp_hom(self._rational_exponent())
            return exp_hom(1)
        base = self._atom()
        if self._accept("^"):
            exponent_token = self.current
            exponent = self._rational_exponent()
            if exponent.denominator != 1:
                raise self._error("只有 t 允许有理指数", exponent_token)
            return _power(base, exponent.numerator, exponent_token, self)
        return base

    def _rational_exponent(self) -> Fraction:
        if self._accept("("):
            sign = -1 if self._accept("-") else 1
            if sign == 1:
                self._accept("+")
            numerator = self._int()
            denominator = 1
            if self._accept("/"):
                token = self.current
                denominator = self._int()
                if denominator == 0:
                    raise self._error("分母不能为 0", token)
            self._expect(")")
            return Fraction(sign * numerator, denominator)
        if self._accept("-"):
            return Fraction(-self._int())
        return Fraction(self._int())

    def _atom(self) -> Value:
        token = self.current
        if token.kind == "int":
            self.index += 1
            return NovikovElement.constant(int(token.text))
        if token.kind == "inv":
            if self.cutoff is None:
                raise self._error("此处不允许 inv(...)")
            self.index += 1
            self._expect("(")
            inner = self._expr()
            self._expect(")")
            if isinstance(inner, TruncatedSeries):
                raise self._error("inv 的参数必须是有限支撑元素", token)
            return invert(inner, self.cutoff)
        if self._accept("("):
            value = self._expr()
            self._expect(")")
            return value
        raise self._error(f"意外的符号 {token.text or '结尾'!r}")


def _multiply(x: Value, y: Value) -> Value:
    if isinstance(x, NovikovElement) and isinstance(y, TruncatedSeries):
        return y * x
    return x * y


def _power(base: Value, n: int, token: Token, parser: ExpressionParser) -> Value:
    if isinstance(base, NovikovElement):
        try:
            return base ** n
        except Exception as exc:
            raise parser._error(str(exc), token)
    if n < 0:
        raise parser._error("截断级数不支持负幂", token)
    result: Value = NovikovElement.one()
    for _ in range(n):
        result = _multiply(result, base)
    return result


def evaluate(text: str, cutoff: Optional[Fraction] = None) -> Value:
    """求值表达式，inv 使用给定截断"""
    return ExpressionParser(text, cutoff).parse()


def parse_element(text: str) -> NovikovElement:
    """解析有限支撑元素（不允许 inv）"""
    value = ExpressionParser(text).parse()
    if not isinstance(value, NovikovElement):
        raise ExpressionParseError("表达式的值不是有限支撑元素", 0, text)
    return value
