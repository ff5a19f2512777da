# -*- coding: utf-8 -*-
"""闭包描述、补空间群胚、粘合与切割数据"""
import sys
from dataclasses import replace
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from suturecalc.closures import (
    ClosureDescriptor,
    ComplementMap,
    CutData,
    Diffeomorphism,
    GluingData,
    complement_identification,
    cut_open,
    make_closure,
    std_parent,
    twist_by,
)
from suturecalc.errors import ClosureDataError, CutDataError, EtaConditionError
from suturecalc.generators import CaseGenerator
from suturecalc.mcg import SurfaceModel, identity_matrix, is_symplectic

I4 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
# a1 ↦ a1 + b1
T_B1 = [[1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]


def test_closure_validation():
    with pytest.raises(ClosureDataError):
        make_closure("D", 1)
    with pytest.raises(ClosureDataError):
        make_closure("D", 2, eta=[2, 0, 0, 0])
    with pytest.raises(ClosureDataError):
        ClosureDescriptor(id="D", genus=2, complement_tag="T", surface=SurfaceModel(2), odd=True)
    odd = make_closure("D", 2, odd=True)
    assert odd.surface.marked_point == "p"


def test_mark_and_strip():
    plain = make_closure("D", 2)
    marked = plain.mark((0, 1, 0, 0))
    assert marked.marked and not plain.marked
    assert marked.strip() == plain


def test_complement_map_reduces_freely():
    d, e = make_closure("D", 2), make_closure("E", 2)
    there = complement_identification(d, e)
    back = complement_identification(e, d)
    assert not there.is_identity()
    assert there.then(back).is_identity()
    assert there.inverse() == back
    with pytest.raises(ClosureDataError):
        complement_identification(d, make_closure("F", 2, manifold="N"))


def test_groupoid_path_must_chain():
    d = make_closure("D", 2)
    with pytest.raises(ClosureDataError):
        ComplementMap("X", "Y", d.embedding.letters)


def test_diffeomorphism_twist():
    target = make_closure("E", 2, manifold="N")
    f = Diffeomorphism.atomic("f", "M", "N")
    twisted = twist_by(target, f)
    assert twisted.manifold == "M"
    assert twisted.complement_tag == target.complement_tag
    assert twist_by(target, Diffeomorphism.identity("N")) == target
    assert f.then(Diffeomorphism.identity("N")) == f
    with pytest.raises(ClosureDataError):
        twist_by(target, Diffeomorphism.atomic("g", "N", "M"))


def test_gluing_eta_condition():
    d = make_closure("D", 2, eta=[1, 0, 0, 0])
    e = make_closure("E", 2, eta=[1, 1, 0, 0])
    gluing = GluingData(d, e, complement_identification(d, e), T_B1, I4, I4)
    assert is_symplectic(gluing.phi)
    bad = make_closure("E", 2, eta=[1, 2, 0, 0])
    with pytest.raises(EtaConditionError):
        GluingData(d, bad, complement_identification(d, bad), T_B1, I4, I4)


def test_gluing_rejects_bad_data():
    d, e = make_closure("D", 2), make_closure("E", 2)
    cmap = complement_identification(d, e)
    with pytest.raises(ClosureDataError):
        GluingData(d, e, cmap, [[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], I4, I4)
    with pytest.raises(ClosureDataError):
        GluingData(d, make_closure("F", 3), cmap, I4, I4, I4)
    with pytest.raises(ClosureDataError):
        GluingData(d, e.mark((1, 0, 0, 0)), cmap, I4, I4, I4)


def test_generated_gluing_satisfies_eta():
    generator = CaseGenerator(4)
    s, t = generator.closure(genus=2), generator.closure(genus=2)
    gluing = generator.gluing(s, t)
    assert gluing.source == s.descriptor and gluing.target == t.descriptor


@pytest.mark.parametrize("marked", [True, False])
def test_cut_auxiliary(marked):
    cut, child, parent = CaseGenerator(6).cut_auxiliary(2, marked)
    assert cut.child_genus == 2
    assert cut_open(cut) == child.descriptor
    assert parent.descriptor == cut.parent
    assert child.descriptor.marked == marked
    assert not cut.is_standard()


def test_standard_cut():
    child = make_closure("D", 2, eta=[0, 1, 0, 0])
    cut = CutData.standard(child)
    assert cut.is_standard()
    assert cut.parent == std_parent(child)
    assert cut.parent.eta.vector == (0, 1, 0, 0, 0, 1)
    assert cut_open(cut) == child


def test_cut_rejects_eta_missing_cut_curve():
    parent = make_closure("P", 3, eta=[1, 0, 0, 0, 0, 0])
    surface = parent.surface
    with pytest.raises(CutDataError):
        CutData(
            parent=parent,
            c1=surface.curve("a3"),
            c2=-surface.curve("a3"),
            dual=surface.curve("b3"),
            child_basis=tuple(identity_matrix(6)[:, j] for j in range(4)),
            child_eta=(1, 0, 0, 0),
            eta_split=(0, 0),
        )


@pytest.mark.parametrize("which", ["same", "dual"])
def test_cut_rejects_non_opposite_curves(which):
    cut = CutData.standard(make_closure("D", 2, eta=[0, 1, 0, 0]))
    c2 = cut.c1 if which == "same" else -cut.dual
    with pytest.raises(CutDataError) as info:
        replace(cut, c2=c2)
    assert "相反" in info.value.message
