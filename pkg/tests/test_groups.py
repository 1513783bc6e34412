from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import catalog_automorphisms, small_catalog_names
from reidemeister.catalog import burnside_catalog, catalog_group
from reidemeister.errors import (
    GroupTooLarge,
    MalformedTable,
    MissingInverse,
    NoIdentity,
    NotAHomomorphism,
    NotAPermutation,
    NotAssociative,
    NotGenerating,
)
from reidemeister.groups import (
    abelian_group,
    cyclic_group,
    endo_from_element_images,
    endo_from_images,
    fixed_subgroup,
    group_from_cayley,
    group_from_permutations,
    identity_endo,
    inner_automorphism,
    is_homomorphism,
    is_normal,
    normal_subgroups,
    precompose_inner,
    reidemeister_number,
    twisted_classes,
)


def _compose(p, q):
    """Apply q first, then p."""
    return tuple(p[i] for i in q)


def _s3_oracle():
    perms = sorted(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[_compose(p, q)] for q in perms] for p in perms]
    return perms, table


def _brute_twisted_classes(G, phi):
    """Union of orbits by scanning every pair (g, x)."""
    n = G.order
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in range(n):
        phig_inv = phi(int(G.inv[g]))
        for x in range(n):
            y = int(G.mult[G.mult[g, x], phig_inv])
            parent[find(x)] = find(y)
    classes = {}
    for x in range(n):
        classes.setdefault(find(x), set()).add(x)
    return sorted(map(frozenset, classes.values()), key=min)


def test_cyclic_cayley_table():
    G = group_from_cayley([[(a + b) % 3 for b in range(3)] for a in range(3)])
    assert G.order == 3 and G.identity == 0


def test_s3_cayley_table_matches_permutation_closure():
    _, table = _s3_oracle()
    G = group_from_cayley(table)
    assert G.order == 6
    assert not G.is_abelian()
    assert sorted(G.element_orders().tolist()) == [1, 2, 2, 2, 3, 3]


def test_rejects_element_without_inverse():
    with pytest.raises((MissingInverse, NotAssociative)):
        group_from_cayley([[0, 1], [1, 1]])


def test_rejects_non_associative_loop():
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAssociative):
        group_from_cayley(loop)


def test_rejects_bad_shapes_and_missing_identity():
    with pytest.raises(MalformedTable):
        group_from_cayley([[0, 1], [1]])
    with pytest.raises(MalformedTable):
        group_from_cayley([[0, 2], [2, 0]])
    with pytest.raises(NoIdentity):
        group_from_cayley([[1, 1], [0, 0]])


def test_permutation_closure_matches_exhaustive_oracle():
    gens = [(1, 0, 2, 3), (1, 2, 3, 0)]
    seen = {(0, 1, 2, 3)}
    while True:
        new = {_compose(p, g) for p in seen for g in gens} | seen
        if new == seen:
            break
        seen = new
    G = group_from_permutations(4, [list(g) for g in gens])
    assert G.order == len(seen) == 24
    assert group_from_permutations(3, [[1, 0, 2], [1, 2, 0]]).order == 6


def test_permutation_groups_small_cases():
    assert group_from_permutations(5, []).order == 1
    assert group_from_permutations(4, [[1, 2, 3, 0]]).order == 4
    with pytest.raises(NotAPermutation):
        group_from_permutations(3, [[0, 0, 1]])
    with pytest.raises(GroupTooLarge):
        group_from_permutations(5, [[1, 0, 2, 3, 4], [1, 2, 3, 4, 0]], cap=50)


def test_identity_images_give_identity_endo():
    G = catalog_group("S3")
    gens = [1, 2]
    phi = endo_from_images(G, gens, gens)
    assert phi == identity_endo(G)
    assert phi.is_bijective


def test_generator_images_reproduce_inner_automorphism():
    G = catalog_group("S3")
    c = next(x for x in range(6) if G.name(x) == "(0 1 2)")
    tau = inner_automorphism(G, c)
    gens = [1, 2]
    images = [int(G.mult[G.mult[c, g], G.inv[c]]) for g in gens]
    assert endo_from_images(G, gens, images) == tau
    direct = [int(G.mult[G.mult[c, x], G.inv[c]]) for x in range(6)]
    assert tau.images.tolist() == direct


def test_doubling_on_z4_is_endo_not_auto():
    G = cyclic_group(4)
    phi = endo_from_images(G, [1], [2])
    assert phi.images.tolist() == [0, 2, 0, 2]
    assert not phi.is_bijective


def test_endo_errors():
    G = cyclic_group(4)
    with pytest.raises(NotGenerating):
        endo_from_images(G, [2], [2])
    with pytest.raises(NotAHomomorphism):
        endo_from_element_images(G, [0, 1, 1, 1])
    S3 = catalog_group("S3")
    with pytest.raises(NotAHomomorphism):
        endo_from_images(S3, [1, 2], [2, 2])


def test_twisted_classes_examples():
    S3 = catalog_group("S3")
    assert twisted_classes(S3, identity_endo(S3)).class_count == 3
    Z6 = cyclic_group(6)
    assert twisted_classes(Z6, identity_endo(Z6)).class_count == 6
    V = abelian_group([2, 2])
    swap = endo_from_element_images(V, [0, 2, 1, 3])
    assert sorted(map(sorted, twisted_classes(V, swap).classes())) == [[0, 3], [1, 2]]


def test_reidemeister_number_examples():
    assert reidemeister_number(catalog_group("S3"), identity_endo(catalog_group("S3"))) == 3
    Z5 = cyclic_group(5)
    assert reidemeister_number(Z5, endo_from_images(Z5, [1], [2])) == 1
    Z1 = cyclic_group(1)
    assert reidemeister_number(Z1, identity_endo(Z1)) == 1


def test_fixed_subgroup_examples():
    S3 = catalog_group("S3")
    assert fixed_subgroup(S3, identity_endo(S3)) == frozenset(range(6))
    Z5 = cyclic_group(5)
    assert fixed_subgroup(Z5, endo_from_images(Z5, [1], [2])) == {0}
    V = abelian_group([2, 2])
    assert fixed_subgroup(V, endo_from_element_images(V, [0, 2, 1, 3])) == {0, 3}


def test_precompose_inner_examples():
    S3 = catalog_group("S3")
    phi = identity_endo(S3)
    assert precompose_inner(S3, phi, S3.identity) == phi
    c = next(x for x in range(6) if S3.name(x) == "(0 1 2)")
    assert precompose_inner(S3, phi, c) == inner_automorphism(S3, c)


def test_normal_subgroup_counts():
    assert len(normal_subgroups(catalog_group("S4"))) == 4
    assert len(normal_subgroups(catalog_group("Q8"))) == 6
    assert len(normal_subgroups(catalog_group("Z2xZ2xZ2xZ2"))) == 67
    for name in ("S3", "A4", "D5"):
        G = catalog_group(name)
        assert all(is_normal(G, H) for H in normal_subgroups(G))


def test_automorphism_counts_match_known_values():
    expected = {"S3": 6, "Q8": 24, "D4": 8, "A4": 24, "S4": 24, "Z2xZ2": 6, "Z2xZ2xZ2": 168, "Z8": 4, "Dic3": 12}
    for name, count in expected.items():
        assert len(catalog_automorphisms(name)) == count, name


# properties over catalog (group, automorphism, element) triples

_NAMES = small_catalog_names()


@st.composite
def group_auto_elem(draw):
    name = draw(st.sampled_from(_NAMES))
    G = burnside_catalog()[name]
    auts = catalog_automorphisms(name)
    phi = auts[draw(st.integers(0, len(auts) - 1))]
    k = draw(st.integers(0, G.order - 1))
    return G, phi, k


@given(group_auto_elem())
def test_orbit_sweep_matches_pairwise_oracle(data):
    G, phi, _ = data
    assert sorted(twisted_classes(G, phi).classes(), key=min) == _brute_twisted_classes(G, phi)


@given(group_auto_elem())
def test_right_shift_maps_classes_onto_classes(data):
    G, phi, k = data
    shifted = precompose_inner(G, phi, int(G.inv[k]))
    target = set(twisted_classes(G, shifted).classes())
    for C in twisted_classes(G, phi).classes():
        image = frozenset(int(G.mult[c, k]) for c in C)
        assert image in target


@given(group_auto_elem())
def test_inner_twist_preserves_reidemeister_number(data):
    G, phi, g = data
    assert reidemeister_number(G, precompose_inner(G, phi, g)) == reidemeister_number(G, phi)


@given(group_auto_elem())
def test_abelian_classes_are_cosets_of_identity_class(data):
    G, phi, _ = data
    if not G.is_abelian():
        return
    part = twisted_classes(G, phi)
    H = frozenset(part.members(part.class_of[G.identity]))
    assert all(int(G.mult[a, b]) in H for a in H for b in H)
    for C in part.classes():
        x = min(C)
        assert C == frozenset(int(G.mult[x, h]) for h in H)


@given(group_auto_elem())
def test_abelian_automorphism_class_count_equals_fixed_points(data):
    G, phi, _ = data
    if G.is_abelian():
        assert reidemeister_number(G, phi) == len(fixed_subgroup(G, phi))


@given(group_auto_elem())
def test_automorphisms_are_homomorphic_bijections(data):
    G, phi, _ = data
    assert phi.is_bijective
    assert is_homomorphism(G, phi.images)
    mult = G.mult
    img = phi.images
    assert np.array_equal(img[mult], mult[img[:, None], img[None, :]])
