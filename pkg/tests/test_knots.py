# -*- coding: utf-8 -*-
"""纽结嵌入的嵌套偏序、连接态射与展平"""
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from suturecalc.errors import ClosureDataError
from suturecalc.generators import CaseGenerator, random_inner_system, random_knot_model, random_system
from suturecalc.knots import (
    EmbeddingKind,
    EmbeddingTag,
    KnotHomologyModel,
    NestingPoset,
    build_khm_tower,
    flatten_khm,
    khm_psi,
    nested_generator,
    refinement_independent,
)
from suturecalc.modules import FreeModule, identity_hom
from suturecalc.rings import RingKind, RingSpec, UnitGroup
from suturecalc.transys import (
    compose_system_morphisms,
    identity_morphism,
    morphisms_equal,
    validate_system,
    validate_system_of_systems,
)

NOVIKOV = RingSpec(RingKind.NOVIKOV, UnitGroup.FULL_UNITS)


def _chain() -> NestingPoset:
    # C ⊂ B ⊂ A，D 与其他标签无关
    poset = NestingPoset([
        EmbeddingTag("A"),
        EmbeddingTag("B", shift=Fraction(1, 2)),
        EmbeddingTag("C", EmbeddingKind.POINT, -2),
        EmbeddingTag("D"),
    ])
    poset.nest("B", "A")
    poset.nest("C", "B")
    return poset


def _model() -> KnotHomologyModel:
    generator = CaseGenerator(3)
    model = KnotHomologyModel(_chain())
    frame = identity_hom(FreeModule(NOVIKOV, 2))
    for name in ("A", "B", "C"):
        model.register(name, random_inner_system(generator, 2, 2), frame)
    return model


def test_nesting_is_transitive():
    poset = _chain()
    assert poset.is_nested("C", "A")
    assert not poset.is_nested("A", "C")
    assert not poset.is_nested("D", "A")
    assert poset.tags["C"].kind == EmbeddingKind.POINT


def test_nesting_rejects_cycles_and_unknown_tags():
    poset = _chain()
    with pytest.raises(ClosureDataError):
        poset.nest("A", "C")
    with pytest.raises(ClosureDataError):
        poset.nest("A", "A")
    with pytest.raises(ClosureDataError):
        poset.nest("A", "Z")
    with pytest.raises(ClosureDataError):
        poset.add(EmbeddingTag("A"))


def test_refinement():
    poset = _chain()
    assert poset.refinement("A", "B") == "B"
    common = poset.refinement("B", "D")
    assert common == "(B∧D)"
    assert poset.is_nested(common, "B") and poset.is_nested(common, "D")
    first = poset.refinement("A", "B", fresh=True)
    second = poset.refinement("A", "B", fresh=True)
    assert (first, second) == ("(A∧B)", "(A∧B)#2")


def test_register_requires_projective_novikov_system():
    model = KnotHomologyModel(_chain())
    integer = random_system(CaseGenerator(1), size=2, rank=2)
    with pytest.raises(ClosureDataError):
        model.register("A", integer, identity_hom(FreeModule(integer.ring, 2)))


def test_refinement_inherits_outer_system():
    model = _model()
    with pytest.raises(ClosureDataError):
        model.ensure("D")
    common = model.poset.refinement("A", "B", fresh=True)
    model.ensure(common)
    assert model.systems[common] is model.systems["A"]


def test_nested_generators_compose():
    model = _model()
    direct = nested_generator(model, "A", "C")
    via = compose_system_morphisms(nested_generator(model, "B", "C"), nested_generator(model, "A", "B"))
    assert morphisms_equal(direct, via)
    with pytest.raises(ClosureDataError):
        nested_generator(model, "C", "A")


def test_khm_psi_identity_and_inverse():
    model = _model()
    assert morphisms_equal(khm_psi(model, "B", "B"), identity_morphism(model.systems["B"]))
    there = khm_psi(model, "A", "C")
    back = khm_psi(model, "C", "A")
    assert morphisms_equal(compose_system_morphisms(back, there), identity_morphism(model.systems["A"]))
    with pytest.raises(ClosureDataError):
        khm_psi(model, "A", "B", refinement="A")


def test_hand_built_tower_flattens():
    model = _model()
    tags = ["A", "B", "C"]
    assert validate_system_of_systems(build_khm_tower(model, tags)) == []
    flat = flatten_khm(model, tags)
    assert validate_system(flat) == []
    assert len(flat.indices) == 6
    assert flat.indices[0] == "A/α0"


@pytest.mark.parametrize("seed", range(4))
def test_random_model(seed):
    model, names = random_knot_model(CaseGenerator(seed), size=4)
    assert refinement_independent(model, names[0], names[1])
    tags = sorted(model.systems)
    assert validate_system_of_systems(build_khm_tower(model, tags)) == []
    flat = flatten_khm(model, tags)
    assert validate_system(flat) == []
    assert len(flat.indices) == sum(len(model.systems[t].indices) for t in tags)
