# -*- coding: utf-8 -*-
"""
态射字的重写系统
规则按固定优先级在最左位置应用，得到唯一的规范形式；另提供局部合流与终止性检查
"""

from dataclasses import dataclass, replace
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from .closures import ComplementMap, CutData, cut_open, lift_matrix, to_array, unlift_matrix
from .morphisms import (
    ElementaryMorphism,
    HandlePayload,
    LetterKind,
    MorphismWord,
    handle_theta,
    is_identity_theta,
    plus_closure,
    splice_merge,
    theta,
    xi_merge,
)


Letters = Tuple[ElementaryMorphism, ...]
Matcher = Callable[[Letters], Optional[List[ElementaryMorphism]]]


@dataclass(frozen=True)
class RewriteRule:
    name: str
    width: int
    match: Matcher


def _invert_window(letters: Sequence[ElementaryMorphism]) -> Letters:
    return tuple(letter.inverse() for letter in reversed(letters))


def mirrored(rule: RewriteRule) -> RewriteRule:
    """在逆字上匹配 rule，再把结果取逆"""
    def match(window: Letters):
        result = rule.match(_invert_window(window))
        return None if result is None else list(_invert_window(result))

    return RewriteRule(f"{rule.name}⁻", rule.width, match)


def _is_standard_splice(letter: ElementaryMorphism, kind: LetterKind) -> bool:
    return letter.kind == kind and letter.payload.cut.is_standard()


# ==================== 规则 ====================

def _absorb_unit(window: Letters):
    if window[0].kind == LetterKind.UNIT_SCALAR:
        return []
    return None


def _plain_cut(cut: CutData) -> CutData:
    return replace(cut, parent=cut.parent.strip(), child_eta=None, eta_split=None)


def _strip_marking(window: Letters):
    """标记闭包上的字母写成 Ξ⁻¹ · 非标记字母 · Ξ"""
    letter = window[0]
    if letter.kind in (LetterKind.XI_MERGE, LetterKind.UNIT_SCALAR) or not letter.source.marked:
        return None
    source, target = letter.source.strip(), letter.target.strip()
    if letter.kind == LetterKind.THETA:
        plain = theta(source, target, letter.payload.complement_map, letter.payload.minus, letter.payload.plus)
    elif letter.kind in (LetterKind.SPLICE_MERGE, LetterKind.SPLICE_SPLIT):
        payload = replace(letter.payload, cut=_plain_cut(letter.payload.cut))
        plain = ElementaryMorphism(letter.kind, source, target, payload)
    else:
        payload = HandlePayload(letter.payload.presentation, letter.payload.base.strip())
        plain = ElementaryMorphism(letter.kind, source, target, payload, letter.inverted)
    return [
        xi_merge(source, letter.source.eta).inverse(),
        plain,
        xi_merge(target, letter.target.eta),
    ]


def _expand_splice(window: Letters):
    letter = window[0]
    if letter.kind != LetterKind.SPLICE_MERGE or letter.payload.cut.is_standard():
        return None
    cut = letter.payload.cut
    standard = CutData.standard(cut_open(cut))
    basis = cut.basis_matrix()
    return [
        splice_merge(standard),
        theta(standard.parent, cut.parent, ComplementMap.identity(cut.parent.complement_tag), basis, basis),
    ]


def _cancel_inverse(window: Letters):
    first, second = window
    if second == first.inverse():
        return []
    return None


def _drop_identity_theta(window: Letters):
    return [] if is_identity_theta(window[0]) else None


def _eliminate_minus(window: Letters):
    """HM(X₋) = HM(X₊) · Θ_P⁻¹，其中 Θ_P = HM(X₋)⁻¹ · HM(X₊)"""
    letter = window[0]
    if letter.kind != LetterKind.HANDLE_MINUS or letter.inverted:
        return None
    payload = letter.payload
    return [
        ElementaryMorphism(LetterKind.HANDLE_PLUS, letter.source, plus_closure(payload), payload),
        handle_theta(payload).inverse(),
    ]


def _merge_thetas(window: Letters):
    first, second = window
    if first.kind != LetterKind.THETA or second.kind != LetterKind.THETA:
        return None
    p, q = first.payload, second.payload
    return [
        theta(
            first.source,
            second.target,
            p.complement_map.then(q.complement_map),
            to_array(q.minus).dot(to_array(p.minus)),
            to_array(q.plus).dot(to_array(p.plus)),
        )
    ]


def _lower_theta(window: Letters):
    merge, th, split = window
    if not (
        _is_standard_splice(merge, LetterKind.SPLICE_MERGE)
        and th.kind == LetterKind.THETA
        and _is_standard_splice(split, LetterKind.SPLICE_SPLIT)
    ):
        return None
    minus = unlift_matrix(th.payload.minus)
    plus = unlift_matrix(th.payload.plus)
    if minus is None or plus is None:
        return None
    return [theta(merge.source, split.target, th.payload.complement_map, minus, plus)]


def _push_theta(window: Letters):
    th, merge = window
    if th.kind != LetterKind.THETA or not _is_standard_splice(merge, LetterKind.SPLICE_MERGE):
        return None
    standard = CutData.standard(th.source)
    p = th.payload
    return [
        splice_merge(standard),
        theta(standard.parent, merge.target, p.complement_map, lift_matrix(p.minus), lift_matrix(p.plus)),
    ]


_BASE_RULES = [
    RewriteRule("absorb-unit", 1, _absorb_unit),
    RewriteRule("strip-marking", 1, _strip_marking),
    RewriteRule("expand-splice", 1, _expand_splice),
    RewriteRule("cancel-inverse", 2, _cancel_inverse),
    RewriteRule("drop-identity-theta", 1, _drop_identity_theta),
    RewriteRule("eliminate-minus", 1, _eliminate_minus),
    RewriteRule("merge-theta", 2, _merge_thetas),
    RewriteRule("lower-theta", 3, _lower_theta),
    RewriteRule("push-theta", 2, _push_theta),
]

_SELF_MIRRORED = {
    "absorb-unit", "strip-marking", "cancel-inverse", "drop-identity-theta", "merge-theta", "lower-theta",
}

RULES: List[RewriteRule] = []
for _rule in _BASE_RULES:
    RULES.append(_rule)
    if _rule.name not in _SELF_MIRRORED:
        RULES.append(mirrored(_rule))


# ==================== 重写 ====================

def _rewrite_at(letters: Letters, position: int, rule: RewriteRule) -> Optional[Letters]:
    end = position + rule.width
    if end > len(letters):
        return None
    replacement = rule.match(letters[position:end])
    if replacement is None:
        return None
    return letters[:position] + tuple(replacement) + letters[end:]


def _first_step(letters: Letters) -> Optional[Tuple[str, Letters]]:
    for position in range(len(letters)):
        for rule in RULES:
            result = _rewrite_at(letters, position, rule)
            if result is not None:
                return rule.name, result
    return None


def one_step_successors(word: MorphismWord) -> List[Tuple[str, int, MorphismWord]]:
    """所有一步重写结果 (规则名, 位置, 新字)"""
    successors = []
    for position in range(len(word.letters)):
        for rule in RULES:
            result = _rewrite_at(word.letters, position, rule)
            if result is not None:
                successors.append((rule.name, position, MorphismWord(word.source, word.target, result)))
    return successors


def normal_form(word: MorphismWord, trace: Optional[List[str]] = None) -> MorphismWord:
    """
    反复在最左位置应用第一条可用规则直到不可再写

    Args:
        trace: 若给出，依次记录所用规则名
    """
    letters = word.letters
    steps = 0
    while True:
        step = _first_step(letters)
        if step is None:
            break
        name, letters = step
        steps += 1
        if trace is not None:
            trace.append(name)
    logger.debug(f"规范化: {len(word)} 个字母 → {len(letters)} 个字母, {steps} 步")
    return MorphismWord(word.source, word.target, letters)


def coherence_check(first: MorphismWord, second: MorphismWord) -> bool:
    """两个平行的字是否有相同的规范形式（单位标量不计）"""
    if first.source != second.source or first.target != second.target:
        return False
    return _strip_units(normal_form(first)) == _strip_units(normal_form(second))


def _strip_units(word: MorphismWord) -> Letters:
    return tuple(l for l in word.letters if l.kind != LetterKind.UNIT_SCALAR)


# ==================== 终止性与合流 ====================

_ORDER_KEY = {
    (LetterKind.SPLICE_MERGE, False): 1,
    (LetterKind.SPLICE_SPLIT, False): 3,
}


def termination_measure(word: MorphismWord) -> Tuple[int, ...]:
    """
    (HM(X₋) 字母数, 非标准拼接数, 标记字母数, 拼接数, 手术字母数, 长度, 逆序数)
    每条规则按字典序严格降低；Ξ 与单位标量不计入标记字母
    """
    letters = word.letters
    minus = sum(1 for l in letters if l.kind == LetterKind.HANDLE_MINUS)
    splices = [l for l in letters if l.kind in (LetterKind.SPLICE_MERGE, LetterKind.SPLICE_SPLIT)]
    nonstandard = sum(1 for l in splices if not l.payload.cut.is_standard())
    marked = sum(
        1 for l in letters
        if l.source.marked and l.kind not in (LetterKind.XI_MERGE, LetterKind.UNIT_SCALAR)
    )
    handles = sum(1 for l in letters if l.kind in (LetterKind.HANDLE_MINUS, LetterKind.HANDLE_PLUS))
    keys = [_ORDER_KEY.get((l.kind, l.inverted), 2) for l in letters]
    inversions = sum(1 for i in range(len(keys)) for j in range(i + 1, len(keys)) if keys[i] > keys[j])
    return minus, nonstandard, marked, len(splices), handles, len(letters), inversions


def check_termination(word: MorphismWord) -> List[Dict[str, object]]:
    """返回所有没有降低度量的一步重写"""
    measure = termination_measure(word)
    failures = []
    for name, position, successor in one_step_successors(word):
        if not termination_measure(successor) < measure:
            failures.append({"rule": name, "position": position, "before": measure,
                             "after": termination_measure(successor)})
    return failures


def local_confluence_counterexample(word: MorphismWord) -> Optional[Dict[str, object]]:
    """所有一步重写结果规范化后应一致；不一致时返回反例"""
    reference = normal_form(word)
    for name, position, successor in one_step_successors(word):
        reduced = normal_form(successor)
        if reduced.letters != reference.letters:
            return {
                "word": word.kinds(),
                "rule": name,
                "position": position,
                "expected": reference.kinds(),
                "got": reduced.kinds(),
            }
    return None


def enumerate_words(alphabet: Sequence[ElementaryMorphism], max_length: int) -> Iterable[MorphismWord]:
    """alphabet 中可连接的所有长度 1..max_length 的字"""
    by_source: Dict[object, List[ElementaryMorphism]] = {}
    for letter in alphabet:
        by_source.setdefault(letter.source, []).append(letter)

    def extend(prefix: List[ElementaryMorphism]):
        yield MorphismWord(prefix[0].source, prefix[-1].target, tuple(prefix))
        if len(prefix) == max_length:
            return
        for letter in by_source.get(prefix[-1].target, []):
            yield from extend(prefix + [letter])

    for letter in alphabet:
        yield from extend([letter])
