# -*- coding: utf-8 -*-
"""传递系统：公理校验、补全、商模、张量与外层展平"""
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from suturecalc.errors import MorphismMismatchError, QuotientError, RingMismatchError, SystemAxiomError
from suturecalc.generators import CaseGenerator, inject_defect, random_system
from suturecalc.modules import FreeModule, GClassHom, make_hom, scale
from suturecalc.rings import RingKind, RingSpec, UnitGroup
from suturecalc.transys import (
    SystemOfSystems,
    TransitiveSystem,
    build_system,
    compose_system_morphisms,
    flatten_system_of_systems,
    identity_morphism,
    inverse_morphism,
    morphisms_equal,
    quotient_module,
    rebase_quotient,
    restrict_system,
    tensor_morphism,
    tensor_system,
    transport_morphism,
    validate_morphism,
    validate_system,
    validate_system_of_systems,
)

Z_SIGNS = RingSpec(RingKind.INTEGERS, UnitGroup.SIGNS)
Z_TRIVIAL = RingSpec(RingKind.INTEGERS, UnitGroup.TRIVIAL)


def constant_system(ring=Z_SIGNS, sign=1) -> TransitiveSystem:
    modules = {a: FreeModule(ring, 1) for a in ("a", "b")}
    maps = {
        (x, y): GClassHom(make_hom(ring, [[sign if (x, y) == ("a", "b") else 1]]), ring.unit_group)
        for x in ("a", "b") for y in ("a", "b")
    }
    return TransitiveSystem(("a", "b"), modules, maps, ring.unit_group)


# ==================== 公理 ====================

def test_constant_system_is_valid():
    assert validate_system(constant_system()) == []


def test_sign_twisted_system_depends_on_group():
    # g^a_b = −1：在 Signs 下合法，G 平凡时上循环 a→b→a 不成立
    assert validate_system(constant_system(Z_SIGNS, -1)) == []
    kinds = {v.kind for v in validate_system(constant_system(Z_TRIVIAL, -1))}
    assert kinds == {"cocycle"}


def test_missing_map_is_reported():
    system = constant_system()
    maps = dict(system.maps)
    del maps[("a", "b")]
    broken = TransitiveSystem(system.indices, system.modules, maps, system.unit_group)
    violations = validate_system(broken)
    assert [(v.kind, v.indices) for v in violations] == [("missing", ("a", "b"))]


def test_non_isomorphism_is_reported():
    system = constant_system()
    maps = dict(system.maps)
    maps[("a", "b")] = GClassHom(make_hom(Z_SIGNS, [[2]]), UnitGroup.SIGNS)
    broken = TransitiveSystem(system.indices, system.modules, maps, system.unit_group)
    assert any(v.kind == "isomorphism" for v in validate_system(broken))


def test_duplicate_indices_rejected():
    module = FreeModule(Z_SIGNS, 1)
    with pytest.raises(SystemAxiomError):
        TransitiveSystem(("a", "a"), {"a": module}, {}, UnitGroup.SIGNS)


@pytest.mark.parametrize("seed", range(6))
def test_generated_systems_and_defects(seed):
    generator = CaseGenerator(seed)
    system = random_system(generator, size=4, rank=2)
    assert validate_system(system) == []
    assert validate_system(inject_defect(generator, system)) != []


def test_rank_one_defect_breaks_isomorphism():
    generator = CaseGenerator(3)
    system = random_system(generator, size=3, rank=1)
    violations = validate_system(inject_defect(generator, system))
    assert {v.kind for v in violations} == {"isomorphism"}


def test_spanning_tree_completion_and_disconnection():
    ring = Z_SIGNS
    modules = {a: FreeModule(ring, 2) for a in ("x", "y", "z")}
    given = {
        ("x", "y"): make_hom(ring, [[1, 1], [0, 1]]),
        ("z", "y"): make_hom(ring, [[0, -1], [1, 0]]),
    }
    system = build_system(("x", "y", "z"), modules, given, UnitGroup.SIGNS)
    assert validate_system(system) == []
    assert system.map("x", "y").rep.matrix == ((1, 1), (0, 1))
    with pytest.raises(SystemAxiomError):
        build_system(("x", "y", "z"), modules, {("x", "y"): given[("x", "y")]}, UnitGroup.SIGNS)


def test_restrict_keeps_validity():
    system = random_system(CaseGenerator(11), size=5, rank=2)
    assert validate_system(restrict_system(system, ["α1", "α3"])) == []


# ==================== 态射 ====================

def test_transport_morphism_compatibility():
    generator = CaseGenerator(5)
    source = random_system(generator, size=3, rank=2)
    target = random_system(generator, size=2, rank=2)
    phi = make_hom(Z_SIGNS, [[2, 1], [1, 1]])
    morphism = transport_morphism(source, target, phi, "α1", "α0")
    assert validate_morphism(morphism) == []
    identity = identity_morphism(source)
    assert morphisms_equal(compose_system_morphisms(morphism, identity), morphism)
    round_trip = compose_system_morphisms(inverse_morphism(morphism), morphism)
    assert morphisms_equal(round_trip, identity)


def _morphism_chain(seed: int):
    """A → B → C → D，各系统大小不同"""
    generator = CaseGenerator(seed)
    a, b, c, d = (random_system(generator, size=n, rank=2) for n in (3, 2, 3, 2))
    m1 = transport_morphism(a, b, make_hom(Z_SIGNS, [[2, 1], [1, 1]]), "α0", "α1")
    m2 = transport_morphism(b, c, make_hom(Z_SIGNS, [[1, 1], [0, 1]]), "α1", "α2")
    m3 = transport_morphism(c, d, make_hom(Z_SIGNS, [[1, 0], [-1, 1]]), "α0", "α0")
    return m1, m2, m3


@pytest.mark.parametrize("seed", [3, 8])
def test_composition_is_associative(seed):
    m1, m2, m3 = _morphism_chain(seed)
    left = compose_system_morphisms(compose_system_morphisms(m3, m2), m1)
    right = compose_system_morphisms(m3, compose_system_morphisms(m2, m1))
    assert morphisms_equal(left, right)
    assert validate_morphism(left) == []


def test_composition_rejects_shape_mismatch():
    m1, _, _ = _morphism_chain(3)
    # B 有两个指标，A 有三个
    with pytest.raises(MorphismMismatchError):
        compose_system_morphisms(m1, m1)


def test_composition_detects_intermediate_dependence():
    m1, m2, _ = _morphism_chain(3)
    components = dict(m1.components)
    key = ("α0", "α1")
    components[key] = GClassHom(scale(2, components[key].rep), UnitGroup.SIGNS)
    broken = type(m1)(m1.source, m1.target, components)
    with pytest.raises(MorphismMismatchError) as info:
        compose_system_morphisms(m2, broken)
    assert info.value.detail["alpha"] == "α0"


@pytest.mark.parametrize("kind", [RingKind.RATIONAL_FIELD, RingKind.NOVIKOV, RingKind.INTEGERS_MOD2])
def test_tensor_commutes_with_composition(kind):
    m1, m2, _ = _morphism_chain(8)
    target = RingSpec(kind, UnitGroup.FULL_UNITS)
    tensored = tensor_morphism(m1, target)
    assert tensored.unit_group == UnitGroup.FULL_UNITS
    assert validate_morphism(tensored) == []
    composed_first = tensor_morphism(compose_system_morphisms(m2, m1), target)
    tensored_first = compose_system_morphisms(tensor_morphism(m2, target), tensored)
    assert morphisms_equal(composed_first, tensored_first)


# ==================== 商模 ====================

def test_quotient_is_base_independent():
    system = random_system(CaseGenerator(2), size=4, rank=2, ring=Z_TRIVIAL)
    quotient = quotient_module(system, "α0")
    for base in system.indices:
        rebased = rebase_quotient(quotient, system, base)
        direct = quotient_module(system, base)
        for alpha in system.indices:
            assert rebased.identifications[alpha].matrix == direct.identifications[alpha].matrix


def test_quotient_requires_trivial_group():
    with pytest.raises(QuotientError):
        quotient_module(constant_system(Z_SIGNS))


# ==================== 张量与展平 ====================

@pytest.mark.parametrize("kind", [RingKind.RATIONAL_FIELD, RingKind.NOVIKOV, RingKind.INTEGERS_MOD2])
def test_tensor_preserves_validity(kind):
    system = random_system(CaseGenerator(4), size=3, rank=2)
    tensored = tensor_system(system, RingSpec(kind, UnitGroup.FULL_UNITS))
    assert tensored.unit_group == UnitGroup.FULL_UNITS
    assert tensored.ring.kind == kind
    assert validate_system(tensored) == []


def test_tensor_requires_integer_source():
    rational = tensor_system(constant_system(), RingSpec(RingKind.RATIONAL_FIELD))
    with pytest.raises(RingMismatchError):
        tensor_system(rational, RingSpec(RingKind.NOVIKOV))


def _tower(seed: int) -> SystemOfSystems:
    generator = CaseGenerator(seed)
    inner = {"P": random_system(generator, size=2, rank=2), "Q": random_system(generator, size=3, rank=2)}
    forward = transport_morphism(inner["P"], inner["Q"], make_hom(Z_SIGNS, [[1, 2], [0, 1]]), "α0", "α2")
    connectors = {
        ("P", "P"): identity_morphism(inner["P"]),
        ("Q", "Q"): identity_morphism(inner["Q"]),
        ("P", "Q"): forward,
        ("Q", "P"): inverse_morphism(forward),
    }
    return SystemOfSystems(("P", "Q"), inner, connectors)


def test_flatten_tower():
    tower = _tower(9)
    assert validate_system_of_systems(tower) == []
    flat = flatten_system_of_systems(tower)
    assert flat.indices == ("P/α0", "P/α1", "Q/α0", "Q/α1", "Q/α2")
    assert validate_system(flat) == []


def test_flatten_rejects_broken_outer_identity():
    tower = _tower(9)
    connectors = dict(tower.connectors)
    connectors[("P", "P")] = transport_morphism(
        tower.inner["P"], tower.inner["P"], make_hom(Z_SIGNS, [[1, 1], [0, 1]]), "α0", "α0"
    )
    broken = SystemOfSystems(tower.outer_indices, tower.inner, connectors)
    assert any(v.kind == "identity" for v in validate_system_of_systems(broken))
    with pytest.raises(SystemAxiomError):
        flatten_system_of_systems(broken)
