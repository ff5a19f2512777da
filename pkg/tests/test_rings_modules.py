# -*- coding: utf-8 -*-
"""系数环、自由模同态与 G-等价"""
import itertools
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

sys.path.insert(0, str(Path(__file__).parent.parent))

from suturecalc.errors import DimensionMismatchError, NonUnitError, RingMismatchError, UnitGroupError
from suturecalc.modules import (
    GClassHom,
    compose_hom,
    determinant,
    g_equivalent,
    identity_hom,
    inverse_class,
    is_isomorphism,
    make_hom,
    normalize_class,
    scale,
)
from suturecalc.novikov import NovikovElement
from suturecalc.rings import RingKind, RingSpec, UnitGroup, ring

Z_SIGNS = RingSpec(RingKind.INTEGERS, UnitGroup.SIGNS)
Q_UNITS = RingSpec(RingKind.RATIONAL_FIELD, UnitGroup.FULL_UNITS)
NOVIKOV = RingSpec(RingKind.NOVIKOV, UnitGroup.FULL_UNITS)

small_matrices = st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3)


def test_ring_spec_parsing():
    spec = ring("NovikovOverIntegers", "FullUnits")
    assert spec == NOVIKOV
    assert str(spec) == "NovikovOverIntegers[FullUnits]"
    assert spec.with_group(UnitGroup.SIGNS).same_ring(spec)


def test_mod2_rejects_signs():
    with pytest.raises(UnitGroupError):
        RingSpec(RingKind.INTEGERS_MOD2, UnitGroup.SIGNS)
    with pytest.raises(UnitGroupError):
        ring("IntegersMod2")
    assert RingSpec(RingKind.INTEGERS_MOD2, UnitGroup.TRIVIAL).ops.one() == 1
    assert RingSpec(RingKind.INTEGERS_MOD2, UnitGroup.FULL_UNITS).unit_group == UnitGroup.FULL_UNITS


def test_unit_group_order():
    assert UnitGroup.FULL_UNITS.contains(UnitGroup.SIGNS)
    assert UnitGroup.SIGNS.contains(UnitGroup.TRIVIAL)
    assert not UnitGroup.TRIVIAL.contains(UnitGroup.SIGNS)


def test_determinant_and_isomorphism():
    f = make_hom(Z_SIGNS, [[2, 1], [1, 1]])
    assert determinant(f) == 1
    assert is_isomorphism(f)
    g = make_hom(Z_SIGNS, [[2, 0], [0, 1]])
    assert determinant(g) == 2
    assert not is_isomorphism(g)
    assert is_isomorphism(make_hom(Q_UNITS, [[2, 0], [0, 1]]))


def test_mod2_isomorphism():
    f = make_hom(RingSpec(RingKind.INTEGERS_MOD2, UnitGroup.TRIVIAL), [[1, 1], [0, 1]])
    assert is_isomorphism(f)


def _matmul(a, b, modulus=None):
    n = len(a)
    rows = [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [[x % modulus for x in row] for row in rows] if modulus else rows


def _has_inverse_in(matrix, entries, modulus=None):
    identity = [[1, 0], [0, 1]]
    for flat in itertools.product(entries, repeat=4):
        candidate = [list(flat[:2]), list(flat[2:])]
        if _matmul(matrix, candidate, modulus) == identity:
            return True
    return False


def _has_kernel_vector(matrix):
    # 2×2 奇异矩阵的核由 (b, -a) 或 (d, -c) 张成，分量都在 {-1,0,1} 中
    for v in itertools.product((-1, 0, 1), repeat=2):
        if v != (0, 0) and all(row[0] * v[0] + row[1] * v[1] == 0 for row in matrix):
            return True
    return False


@pytest.mark.parametrize("flat", list(itertools.product((-1, 0, 1), repeat=4)))
def test_isomorphism_matches_brute_force(flat):
    matrix = [list(flat[:2]), list(flat[2:])]
    # 整数上逆矩阵 = adj/det，分量仍在 {-1,0,1} 中
    assert is_isomorphism(make_hom(Z_SIGNS, matrix)) == _has_inverse_in(matrix, (-1, 0, 1))
    assert is_isomorphism(make_hom(Q_UNITS, matrix)) == (not _has_kernel_vector(matrix))


@pytest.mark.parametrize("flat", list(itertools.product((0, 1), repeat=4)))
def test_mod2_isomorphism_matches_brute_force(flat):
    matrix = [list(flat[:2]), list(flat[2:])]
    f = make_hom(RingSpec(RingKind.INTEGERS_MOD2, UnitGroup.TRIVIAL), matrix)
    assert is_isomorphism(f) == _has_inverse_in(matrix, (0, 1), modulus=2)


def test_novikov_determinant_unit():
    rows = [["t - t^(-1)", "0"], ["1", "t^(1/2)"]]
    f = make_hom(NOVIKOV, rows)
    assert determinant(f) == NovikovElement.from_terms([(Fraction(3, 2), 1), (Fraction(-1, 2), -1)])
    assert is_isomorphism(f)


def test_inverse_class_integer():
    f = make_hom(Z_SIGNS, [[2, 1], [1, 1]])
    inverse = inverse_class(f, UnitGroup.SIGNS)
    assert compose_hom(inverse, f).matrix == identity_hom(f.source).matrix


def test_inverse_class_needs_full_units_for_series():
    f = make_hom(NOVIKOV, [["t - t^(-1)"]])
    # 行列式的逆不是有限支撑，只能给出伴随代表
    assert GClassHom(compose_hom(inverse_class(f, UnitGroup.FULL_UNITS), f), UnitGroup.FULL_UNITS).contains_identity()
    with pytest.raises(UnitGroupError):
        inverse_class(make_hom(NOVIKOV.with_group(UnitGroup.SIGNS), [["t - t^(-1)"]]), UnitGroup.SIGNS)


def test_inverse_class_rejects_singular():
    with pytest.raises(NonUnitError):
        inverse_class(make_hom(Z_SIGNS, [[2, 0], [0, 1]]), UnitGroup.SIGNS)


@given(small_matrices, small_matrices, st.sampled_from([1, -1]), st.booleans())
def test_g_equivalent_matches_sign_oracle(rows, other, sign, related):
    f = make_hom(Z_SIGNS, rows)
    g = scale(sign, f) if related else make_hom(Z_SIGNS, other)
    expected = f.matrix == g.matrix or scale(-1, f).matrix == g.matrix
    assert g_equivalent(f, g, UnitGroup.SIGNS) == expected
    assert g_equivalent(f, g, UnitGroup.TRIVIAL) == (f.matrix == g.matrix)


@given(small_matrices, st.integers(1, 5), st.integers(-5, 5))
def test_g_equivalent_over_rationals(rows, denominator, numerator):
    f = make_hom(Q_UNITS, rows)
    u = Fraction(numerator, denominator)
    g = scale(u, f)
    if u == 0:
        assert g_equivalent(f, g, UnitGroup.FULL_UNITS) == f.is_zero()
    else:
        assert g_equivalent(f, g, UnitGroup.FULL_UNITS)
        assert g_equivalent(f, g, UnitGroup.SIGNS) == (f.is_zero() or u in (1, -1))


def test_g_equivalent_novikov_units():
    f = make_hom(NOVIKOV, [["1", "t"], ["0", "1"]])
    g = scale(NovikovElement.monomial(Fraction(2, 3), -1), f)
    assert g_equivalent(f, g, UnitGroup.FULL_UNITS)
    assert not g_equivalent(f, g, UnitGroup.SIGNS)
    assert not g_equivalent(f, scale(NovikovElement.constant(2), f), UnitGroup.FULL_UNITS)


def test_g_equivalent_checks_shape_and_ring():
    with pytest.raises(DimensionMismatchError):
        g_equivalent(make_hom(Z_SIGNS, [[1]]), make_hom(Z_SIGNS, [[1, 0], [0, 1]]), UnitGroup.SIGNS)
    with pytest.raises(RingMismatchError):
        g_equivalent(make_hom(Z_SIGNS, [[1]]), make_hom(Q_UNITS, [[1]]), UnitGroup.SIGNS)


def test_normalized_class_is_canonical():
    f = make_hom(Q_UNITS, [[0, 3], [6, 9]])
    assert normalize_class(f, UnitGroup.FULL_UNITS).matrix == normalize_class(scale(Fraction(-2, 7), f), UnitGroup.FULL_UNITS).matrix
    a, b = GClassHom(f, UnitGroup.FULL_UNITS), GClassHom(scale(5, f), UnitGroup.FULL_UNITS)
    assert a == b and hash(a) == hash(b)
