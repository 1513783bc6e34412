from __future__ import annotations

import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import catalog_automorphisms, small_catalog_names
from reidemeister.catalog import burnside_catalog, catalog_group, extended_catalog
from reidemeister.characters import (
    character_table,
    class_constants,
    column_orthogonality_ok,
    conjugacy_classes,
    degree_sum_ok,
    dixon_prime,
    fixed_irreducibles,
    group_exponent,
    modular_consistency_ok,
    row_orthogonality_ok,
    table_to_json,
)
from reidemeister.cyclotomic import CyclotomicInt
from reidemeister.errors import GroupTooLarge
from reidemeister.groups import (
    abelian_group,
    cyclic_group,
    endo_from_element_images,
    endo_from_images,
    endomorphisms,
    identity_endo,
    reidemeister_number,
)


def float_degrees(G) -> list[int]:
    """Degrees from the regular representation: a generic central element acts by a
    scalar on each isotypic block of dimension ``d^2``."""
    n = G.order
    classes = conjugacy_classes(G)
    rng = np.random.default_rng(7)
    Z = np.zeros((n, n))
    for k, rep in enumerate(classes.reps):
        members = np.flatnonzero(classes.class_of == k)
        L = np.zeros((n, n))
        for c in members:
            L[G.mult[c], np.arange(n)] += 1.0
        Z += rng.normal() * L
    eig = np.linalg.eigvals(Z)
    clusters: list[list[complex]] = []
    for v in eig:
        for cl in clusters:
            if abs(cl[0] - v) < 1e-6:
                cl.append(v)
                break
        else:
            clusters.append([v])
    degrees = sorted(round(len(cl) ** 0.5) for cl in clusters)
    assert all(d * d == len(cl) for d, cl in zip(degrees, sorted(clusters, key=len)))
    return degrees


def test_conjugacy_class_examples():
    assert sorted(conjugacy_classes(catalog_group("S3")).sizes) == [1, 2, 3]
    assert len(conjugacy_classes(cyclic_group(7))) == 7
    assert sorted(conjugacy_classes(catalog_group("Q8")).sizes) == [1, 1, 2, 2, 2]


def test_class_representatives_are_minimal():
    G = catalog_group("S4")
    cc = conjugacy_classes(G)
    for k, rep in enumerate(cc.reps):
        assert rep == int(np.flatnonzero(cc.class_of == k).min())
    assert sum(cc.sizes) == G.order


def test_group_exponent_examples():
    assert group_exponent(cyclic_group(1)) == 1
    assert group_exponent(cyclic_group(4)) == 4
    assert group_exponent(catalog_group("S3")) == 6


def test_dixon_prime_examples():
    assert dixon_prime(6, 6) == 7
    assert dixon_prime(1, 1) == 3
    assert dixon_prime(4, 8) == 13


def test_class_constants_examples():
    assert class_constants(cyclic_group(1), conjugacy_classes(cyclic_group(1)))[0, 0, 0] == 1
    G = catalog_group("S3")
    cc = conjugacy_classes(G)
    a = class_constants(G, cc)
    e = int(cc.class_of[G.identity])
    r = len(cc)
    assert np.array_equal(a[e], np.eye(r, dtype=a.dtype))
    t = int(np.argmax(np.array(cc.sizes) == 3))
    assert a[t, t, e] == 3


def test_class_constants_brute_force():
    G = catalog_group("D5")
    cc = conjugacy_classes(G)
    a = class_constants(G, cc)
    for i in range(len(cc)):
        for j in range(len(cc)):
            for k, z in enumerate(cc.reps):
                count = sum(
                    1
                    for x in range(G.order)
                    for y in range(G.order)
                    if cc.class_of[x] == i and cc.class_of[y] == j and G.mult[x, y] == z
                )
                assert a[i, j, k] == count


@pytest.mark.parametrize(
    "name, degrees",
    [("S3", (1, 1, 2)), ("Q8", (1, 1, 1, 1, 2)), ("S4", (1, 1, 2, 3, 3)), ("A5", (1, 3, 3, 4, 5)), ("Z1", (1,))],
)
def test_known_degrees(name, degrees):
    G = extended_catalog()[name]
    ct = character_table(G)
    assert tuple(sorted(ct.degrees)) == degrees


@pytest.mark.parametrize("name", ["S3", "Q8", "D4", "D6", "A4", "Dic3", "SL(2,3)", "Heis3", "Dic5", "Z2xZ4"])
def test_degrees_match_float_oracle(name):
    G = extended_catalog()[name]
    assert sorted(character_table(G).degrees) == float_degrees(G)


def test_cyclic_table_is_fourier_matrix():
    ct = character_table(cyclic_group(3))
    assert ct.conductor == 3
    values = {tuple(v.canonical() for v in row) for row in ct.values}
    expected = {
        tuple(CyclotomicInt.zeta(3, a * x).canonical() for x in range(3))
        for a in range(3)
    }
    assert values == expected
    assert all(v == 1 for v in ct.values[0])


def _key(z: complex) -> tuple[float, float]:
    return round(z.real, 6) + 0.0, round(z.imag, 6) + 0.0


def test_values_agree_with_float_characters_on_abelian_group():
    G = abelian_group([2, 6])
    ct = character_table(G)
    got = sorted(tuple(_key(v.to_complex()) for v in row) for row in ct.values)
    reps = ct.classes.reps
    want = []
    for a in range(2):
        for b in range(6):
            row = []
            for r in reps:
                x, y = divmod(r, 6)
                z = cmath.exp(2j * cmath.pi * (a * x / 2 + b * y / 6))
                row.append(_key(z))
            want.append(tuple(row))
    assert got == sorted(want)


def test_fixed_irreducible_examples():
    S3 = catalog_group("S3")
    ct = character_table(S3)
    assert fixed_irreducibles(ct, identity_endo(S3))[0] == len(ct.classes) == 3
    Z3 = cyclic_group(3)
    assert fixed_irreducibles(character_table(Z3), endo_from_images(Z3, [1], [2]))[0] == 1
    V = abelian_group([2, 2])
    assert fixed_irreducibles(character_table(V), endo_from_element_images(V, [0, 2, 1, 3]))[0] == 2


def test_order_cap():
    with pytest.raises(GroupTooLarge):
        character_table(cyclic_group(20), max_order=10)


@pytest.mark.parametrize("name", ["S4", "A5", "Q16", "Z8xZ8"])
def test_table_postconditions(name):
    ct = character_table(extended_catalog()[name])
    assert row_orthogonality_ok(ct)
    assert column_orthogonality_ok(ct)
    assert degree_sum_ok(ct)
    assert modular_consistency_ok(ct)
    assert ct.degrees[0] == 1 and all(v == 1 for v in ct.values[0])


def test_json_has_integer_coordinates():
    G = catalog_group("Q8")
    data = table_to_json(character_table(G), G)
    assert data["degrees"][0] == 1
    assert len(data["values"]) == len(data["classes"]["sizes"]) == 5
    assert all(isinstance(c, int) for row in data["values"] for v in row for c in v)


_ABELIAN_16 = [n for n, G in burnside_catalog().items() if G.is_abelian() and G.order <= 16]


@pytest.mark.parametrize("name", _ABELIAN_16)
def test_endomorphisms_satisfy_twisted_burnside(name):
    G = burnside_catalog()[name]
    ct = character_table(G)
    endos = endomorphisms(G)
    if len(endos) > 3000:
        rng = np.random.default_rng(0)
        endos = [endos[i] for i in rng.choice(len(endos), 3000, replace=False)]
    for phi in endos:
        assert reidemeister_number(G, phi) == fixed_irreducibles(ct, phi)[0]


@settings(max_examples=80)
@given(st.sampled_from(small_catalog_names()), st.data())
def test_automorphisms_satisfy_twisted_burnside(name, data):
    G = burnside_catalog()[name]
    auts = catalog_automorphisms(name)
    phi = auts[data.draw(st.integers(0, len(auts) - 1))]
    assert reidemeister_number(G, phi) == fixed_irreducibles(character_table(G), phi)[0]
