"""Built-in finite groups used by the sweeps and the CLI."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .groups import GroupTable, abelian_group, closure, group_from_elements, group_from_permutations


def invariant_factor_chains(n: int) -> list[tuple[int, ...]]:
    """All ``(d1, ..., dt)`` with ``d1 | d2 | ... | dt``, ``d1 >= 2`` and product ``n``."""
    if n == 1:
        return [()]
    out = []

    def extend(prefix: tuple[int, ...], remaining: int):
        if remaining == 1:
            out.append(prefix)
            return
        for d in range(2, remaining + 1):
            if remaining % d:
                continue
            if prefix and d % prefix[-1]:
                continue
            # every later factor is a multiple of d, so d^k must divide what is left
            rest = remaining // d
            if rest != 1 and rest % d:
                continue
            extend(prefix + (d,), rest)

    extend((), n)
    return sorted(out)


def abelian_name(factors: tuple[int, ...]) -> str:
    return "x".join(f"Z{d}" for d in factors) if factors else "Z1"


def symmetric_group(n: int) -> GroupTable:
    if n < 2:
        return group_from_permutations(max(n, 1), [])
    return group_from_permutations(n, [_cycle_perm(n, [0, 1]), _cycle_perm(n, list(range(n)))])


def alternating_group(n: int) -> GroupTable:
    gens = [_cycle_perm(n, [0, 1, i]) for i in range(2, n)]
    return group_from_permutations(n, gens)


def dihedral_group(n: int) -> GroupTable:
    """Symmetries of a regular ``n``-gon, order ``2n``."""
    rotation = [(i + 1) % n for i in range(n)]
    reflection = [(-i) % n for i in range(n)]
    return group_from_permutations(n, [rotation, reflection])


def dicyclic_group(n: int) -> GroupTable:
    """``<a, x | a^(2n) = 1, x^2 = a^n, x a x^-1 = a^-1>`` of order ``4n``; ``n = 2`` is Q8."""
    m = 2 * n

    def mul(p, q):
        (i, j), (k, l) = p, q
        shift = n if (j and l) else 0
        return ((i + (-k if j else k) + shift) % m, (j + l) % 2)

    elements = closure([(1, 0), (0, 1)], mul, (0, 0))
    return group_from_elements(elements, mul, [f"a^{i}x^{j}" for i, j in elements])


def special_linear_group_2(p: int) -> GroupTable:
    def mul(a, b):
        return (
            (a[0] * b[0] + a[1] * b[2]) % p,
            (a[0] * b[1] + a[1] * b[3]) % p,
            (a[2] * b[0] + a[3] * b[2]) % p,
            (a[2] * b[1] + a[3] * b[3]) % p,
        )

    elements = closure([(1, 1, 0, 1), (1, 0, 1, 1)], mul, (1, 0, 0, 1))
    return group_from_elements(elements, mul)


def heisenberg_group(p: int) -> GroupTable:
    """Upper unitriangular 3x3 matrices over Z/p, as triples ``(a, b, c)``."""

    def mul(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    elements = list(itertools.product(range(p), repeat=3))
    return group_from_elements(elements, mul)


def _cycle_perm(n: int, cycle: list[int]) -> list[int]:
    p = list(range(n))
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        p[a] = b
    return p


@lru_cache(maxsize=None)
def burnside_catalog() -> dict[str, GroupTable]:
    """Every abelian group of order <= 24 plus S3, S4, A4, D4..D8, Q8 and Dic3 (all of order <= 24)."""
    groups: dict[str, GroupTable] = {}
    for n in range(1, 25):
        for factors in invariant_factor_chains(n):
            groups[abelian_name(factors)] = abelian_group(factors)
    groups["S3"] = symmetric_group(3)
    groups["S4"] = symmetric_group(4)
    groups["A4"] = alternating_group(4)
    for n in range(4, 9):
        groups[f"D{n}"] = dihedral_group(n)
    groups["Q8"] = dicyclic_group(2)
    groups["Dic3"] = dicyclic_group(3)
    return groups


@lru_cache(maxsize=None)
def extended_catalog() -> dict[str, GroupTable]:
    """The Burnside catalog plus larger groups of order <= 64 for character-table checks."""
    groups = dict(burnside_catalog())
    groups["A5"] = alternating_group(5)
    groups["SL(2,3)"] = special_linear_group_2(3)
    groups["S4xZ2"] = group_from_permutations(6, [[1, 0, 2, 3, 4, 5], [1, 2, 3, 0, 4, 5], [0, 1, 2, 3, 5, 4]])
    groups["D16"] = dihedral_group(16)
    groups["Q16"] = dicyclic_group(4)
    groups["Dic5"] = dicyclic_group(5)
    groups["Heis3"] = heisenberg_group(3)
    groups["Z64"] = abelian_group([64])
    groups["Z8xZ8"] = abelian_group([8, 8])
    groups["Z2xZ2xZ2xZ2xZ2xZ2"] = abelian_group([2] * 6)
    return groups


def catalog_group(name: str) -> GroupTable:
    groups = extended_catalog()
    if name not in groups:
        raise KeyError(f"unknown catalog group {name!r}; known: {', '.join(groups)}")
    return groups[name]
