# -*- coding: utf-8 -*-
"""重写系统：规范形式、终止性与局部合流"""
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from suturecalc.closures import CutData, GluingData, complement_identification, identity_key, make_closure, std_parent
from suturecalc.generators import CaseGenerator, ClosurePool
from suturecalc.mcg import SurfaceModel, twist_matrix
from suturecalc.morphisms import (
    LetterKind,
    MorphismWord,
    handle_theta,
    psi_general,
    psi_same_genus,
    splice_merge,
    theta,
    unit_scalar,
    xi_merge,
)
from suturecalc.rewriting import (
    check_termination,
    coherence_check,
    enumerate_words,
    local_confluence_counterexample,
    normal_form,
    one_step_successors,
    termination_measure,
)
from suturecalc.rings import RingKind, RingSpec, UnitGroup

D = make_closure("D", 2)
E = make_closure("E", 2)
T_A1 = twist_matrix(SurfaceModel(2).curve("a1"), 1)
ETA = (1, 0, 0, 0)
SIGNS = RingSpec(RingKind.INTEGERS, UnitGroup.SIGNS)


def _alphabet():
    forward = theta(D, E, complement_identification(D, E), T_A1, identity_key(4))
    identity = theta(D, D, complement_identification(D, D), identity_key(4), identity_key(4))
    return [forward, forward.inverse(), identity]


def _transitivity_word(seed: int) -> MorphismWord:
    generator = CaseGenerator(seed)
    pool = ClosurePool(generator)
    a, b, c = (pool.add(generator.closure(genus=2)) for _ in range(3))
    return psi_general(a.descriptor, c.descriptor, pool.path([a.id, b.id, c.id]))


def test_theta_words_confluent_and_terminating():
    for word in enumerate_words(_alphabet(), 3):
        assert check_termination(word) == []
        assert local_confluence_counterexample(word) is None


def test_inverse_pair_cancels():
    forward = _alphabet()[0]
    word = MorphismWord.of([forward, forward.inverse()])
    assert len(normal_form(word)) == 0


def test_normal_form_is_idempotent():
    word = _transitivity_word(3)
    reduced = normal_form(word)
    assert normal_form(reduced).letters == reduced.letters
    assert one_step_successors(reduced) == []


@pytest.mark.parametrize("seed", range(2))
def test_psi_words_measure_decreases(seed):
    word = _transitivity_word(seed)
    assert check_termination(word) == []
    assert local_confluence_counterexample(word) is None
    assert termination_measure(normal_form(word)) <= termination_measure(word)


def test_unit_scalars_are_ignored_by_coherence():
    ring = RingSpec(RingKind.NOVIKOV, UnitGroup.FULL_UNITS)
    forward = _alphabet()[0]
    scaled = MorphismWord.of([unit_scalar(D, ring, ring.ops.parse("-t^(1/2)")), forward])
    assert coherence_check(scaled, MorphismWord.of([forward]))


def test_marked_theta_conjugated_by_xi():
    marked_theta = theta(D.mark(ETA), E.mark(ETA), complement_identification(D, E), identity_key(4), identity_key(4))
    word = MorphismWord.of([xi_merge(D, ETA), marked_theta])
    trace = []
    reduced = normal_form(word, trace)
    assert trace[:2] == ["strip-marking", "cancel-inverse"]
    assert reduced.kinds() == ["Theta", "XiMerge"]
    assert not reduced.letters[0].source.marked


# ==================== 手术字母 ====================

def _psi_letters():
    gluing = GluingData(E, D, complement_identification(E, D), T_A1, identity_key(4), identity_key(4))
    return psi_same_genus(E, D, gluing).letters


def test_bare_handle_pair_matches_padded_word():
    h_minus, h_plus, closing = _psi_letters()
    bare = MorphismWord.of([h_minus, h_plus])
    padded = MorphismWord.of([h_minus, h_plus, closing, closing.inverse()])
    assert coherence_check(bare, padded)
    assert normal_form(bare).letters == (handle_theta(h_plus.payload),)


@pytest.mark.parametrize("pick", [
    lambda m, p, t: [m, p, t, t.inverse()],
    lambda m, p, t: [t.inverse(), p.inverse(), m.inverse(), m],
    lambda m, p, t: [m.inverse(), m, p, t],
    lambda m, p, t: [t, t.inverse(), p.inverse(), m.inverse()],
])
def test_handle_overlaps_are_joinable(pick):
    word = MorphismWord.of(pick(*_psi_letters()))
    assert local_confluence_counterexample(word) is None
    assert check_termination(word) == []


def test_split_then_theta_into_surgery_closure():
    h_minus, h_plus, closing = _psi_letters()
    split = splice_merge(CutData.standard(D)).inverse()
    twist = theta(D, D, complement_identification(D, D), T_A1, T_A1)
    word = MorphismWord.of([split, twist, closing.inverse()])
    assert local_confluence_counterexample(word) is None
    assert normal_form(word).kinds() == ["Theta", "SpliceSplit"]


# ==================== 穷举局部合流 ====================

def _pool_alphabet():
    """
    四个闭包 E、D、D 的标准稳定化、D^η 之间的字母，连同手术中间闭包
    含手术、Θ、拼接、Ξ、标记 Θ 与单位标量
    """
    h_minus, h_plus, closing = _psi_letters()
    merge = splice_merge(CutData.standard(D))
    marked = D.mark(ETA)
    marked_twist = theta(marked, marked, complement_identification(D, D), T_A1, T_A1)
    letters = [h_minus, h_plus, closing, merge, xi_merge(D, ETA), marked_twist]
    return letters + [l.inverse() for l in letters] + [unit_scalar(D, SIGNS, -1)]


def test_pool_alphabet_spans_four_closures():
    alphabet = _pool_alphabet()
    closures = {l.source for l in alphabet if l.source.stage is None}
    assert closures == {D, E, std_parent(D), D.mark(ETA)}
    assert {l.kind for l in alphabet} == set(LetterKind)


def test_pool_words_confluent_and_terminating():
    count = 0
    for word in enumerate_words(_pool_alphabet(), 6):
        assert check_termination(word) == [], word.kinds()
        assert local_confluence_counterexample(word) is None
        count += 1
    assert count > 500
