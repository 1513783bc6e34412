from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from reidemeister.abelian import (
    INFINITE,
    FgAbelian,
    abelian_endo,
    determinant_count,
    endo_to_map,
    fixed_count_abelian,
    random_endomorphism,
    random_invariant_factors,
    reidemeister_abelian,
    to_group_table,
)
from reidemeister.errors import GroupTooLarge, InvalidEndomorphism, NotFinite
from reidemeister.groups import fixed_subgroup, is_homomorphism, reidemeister_number, twisted_classes
from reidemeister.intmatrix import IntMatrix


def test_reidemeister_examples():
    Z2 = FgAbelian(2)
    assert reidemeister_abelian(Z2, abelian_endo(Z2, [[0, 1], [-1, 0]])) == 2
    Z = FgAbelian(1)
    assert reidemeister_abelian(Z, abelian_endo(Z, [[1]])) is INFINITE
    Z5 = FgAbelian(0, (5,))
    assert reidemeister_abelian(Z5, abelian_endo(Z5, [[2]])) == 1


def test_fixed_count_examples():
    Z6 = FgAbelian(0, (6,))
    assert fixed_count_abelian(Z6, abelian_endo(Z6, [[1]])) == 6
    Z5 = FgAbelian(0, (5,))
    assert fixed_count_abelian(Z5, abelian_endo(Z5, [[2]])) == 1
    Z2 = FgAbelian(2)
    assert fixed_count_abelian(Z2, abelian_endo(Z2, [[2, 1], [1, 1]])) == 1
    assert fixed_count_abelian(FgAbelian(1), abelian_endo(FgAbelian(1), [[1]])) is INFINITE


def test_mixed_free_and_torsion():
    A = FgAbelian(1, (2,))
    # x -> -x on Z, identity on Z/2: coker = Z/2 (from Z) + Z/2
    psi = abelian_endo(A, [[-1, 0], [0, 1]])
    assert reidemeister_abelian(A, psi) == 4
    assert fixed_count_abelian(A, psi) == 2


def test_invalid_endomorphisms_rejected():
    with pytest.raises(InvalidEndomorphism):
        abelian_endo(FgAbelian(0, (2, 4)), [[0, 0], [1, 0]])
    with pytest.raises(InvalidEndomorphism):
        abelian_endo(FgAbelian(1, (2,)), [[1, 1], [0, 1]])
    with pytest.raises(InvalidEndomorphism):
        abelian_endo(FgAbelian(2), [[1]])
    with pytest.raises(ValueError):
        FgAbelian(0, (4, 2))


def test_group_table_bridge():
    assert to_group_table(FgAbelian(0, (2, 4))).order == 8
    Z5 = FgAbelian(0, (5,))
    phi = endo_to_map(Z5, abelian_endo(Z5, [[2]]))
    assert phi.images.tolist() == [0, 2, 4, 1, 3]
    assert phi.is_bijective
    with pytest.raises(NotFinite):
        to_group_table(FgAbelian(1))
    with pytest.raises(GroupTooLarge):
        to_group_table(FgAbelian(0, (101, 101)))


def test_infinite_is_not_an_integer():
    assert INFINITE != 0 and not isinstance(INFINITE, int)
    assert str(INFINITE) == "INFINITE"


@st.composite
def finite_instances(draw, max_order=200):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    A = FgAbelian(0, random_invariant_factors(rng, max_order))
    return A, random_endomorphism(A, rng)


@st.composite
def mixed_instances(draw):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    A = FgAbelian(int(rng.integers(0, 4)), random_invariant_factors(rng, 60))
    return A, random_endomorphism(A, rng)


@given(finite_instances())
def test_snf_count_matches_brute_force(inst):
    A, psi = inst
    G = to_group_table(A)
    phi = endo_to_map(A, psi)
    assert is_homomorphism(G, phi.images)
    assert reidemeister_abelian(A, psi) == reidemeister_number(G, phi)
    assert fixed_count_abelian(A, psi) == len(fixed_subgroup(G, phi))


@given(finite_instances())
def test_twisted_classes_have_equal_size(inst):
    A, psi = inst
    G = to_group_table(A)
    part = twisted_classes(G, endo_to_map(A, psi))
    sizes = {len(C) for C in part.classes()}
    assert len(sizes) == 1


@given(mixed_instances())
def test_reidemeister_at_least_fixed_points(inst):
    A, psi = inst
    R = reidemeister_abelian(A, psi)
    if R is not INFINITE:
        fix = fixed_count_abelian(A, psi)
        assert fix is not INFINITE and R >= fix


@given(st.integers(1, 3).flatmap(lambda r: st.lists(st.lists(st.integers(-4, 4), min_size=r, max_size=r), min_size=r, max_size=r)))
def test_free_abelian_matches_determinant(rows):
    A = FgAbelian(len(rows))
    psi = abelian_endo(A, rows)
    assert reidemeister_abelian(A, psi) == determinant_count(rows)
    d = (IntMatrix(rows) - IntMatrix.identity(len(rows))).det()
    assert (reidemeister_abelian(A, psi) is INFINITE) == (d == 0)
    if d:
        assert reidemeister_abelian(A, psi) == abs(d)


def test_random_endomorphisms_cover_automorphisms():
    rng = np.random.default_rng(3)
    A = FgAbelian(0, (2, 4))
    seen = {tuple(map(tuple, random_endomorphism(A, rng).matrix.tolist())) for _ in range(400)}
    # Hom(Z2+Z4, Z2+Z4) has 2*2*2*4 = 32 matrices in reduced form
    assert len(seen) == 32
    assert math.prod(A.torsion) == 8
