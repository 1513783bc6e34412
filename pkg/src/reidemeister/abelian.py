"""Finitely generated abelian groups ``Z^r + Z/d_1 + ... + Z/d_t`` and their
endomorphisms as integer matrices on the generators (free part first).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import GroupTooLarge, InvalidEndomorphism, NotFinite
from .groups import DEFAULT_CLOSURE_CAP, EndoMap, GroupTable, _frozen, abelian_group
from .intmatrix import IntMatrix, lattice_rank_and_covolume, smith_normal_form, solve_integer


class Infinite:
    """The count of an infinite set; a distinct result, never an integer sentinel."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"

    __str__ = __repr__

    def __reduce__(self):
        return (Infinite, ())


INFINITE = Infinite()
Count = int | Infinite


@dataclass(frozen=True)
class FgAbelian:
    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        if any(d < 2 for d in self.torsion):
            raise ValueError("invariant factors must be at least 2")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain, got {self.torsion}")

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def relation_orders(self) -> tuple[int, ...]:
        """Order of each generator, ``0`` for free generators."""
        return (0,) * self.rank + self.torsion

    @property
    def presentation(self) -> IntMatrix:
        return IntMatrix.diagonal(list(self.relation_orders))

    @property
    def order(self) -> Count:
        return INFINITE if self.rank else math.prod(self.torsion)

    def __str__(self) -> str:
        parts = ["Z"] * self.rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class AbelianEndo:
    matrix: IntMatrix


def abelian_endo(A: FgAbelian, matrix) -> AbelianEndo:
    """Validate that ``matrix`` maps the relation lattice into itself."""
    try:
        Q = matrix if isinstance(matrix, IntMatrix) else IntMatrix(matrix)
    except (TypeError, ValueError) as exc:
        raise InvalidEndomorphism(f"not an integer matrix: {exc}") from exc
    if Q.shape != (A.ngens, A.ngens):
        raise InvalidEndomorphism(f"expected a {A.ngens}x{A.ngens} matrix, got {Q.shape}")
    P = A.presentation
    QP = Q @ P
    for j in range(A.ngens):
        if solve_integer(P, QP.column(j)) is None:
            raise InvalidEndomorphism(f"image of generator {j} does not respect its order {A.relation_orders[j]}")
    return AbelianEndo(Q)


def _identity_shift(A: FgAbelian, psi: AbelianEndo) -> IntMatrix:
    return psi.matrix - IntMatrix.identity(A.ngens)


def reidemeister_abelian(A: FgAbelian, psi: AbelianEndo) -> Count:
    """Order of ``Coker(psi - Id)``: the quotient of ``Z^m`` by the columns of ``[Q - I | P]``."""
    block = _identity_shift(A, psi).hstack(A.presentation)
    snf = smith_normal_form(block)
    if snf.rank < A.ngens:
        return INFINITE
    return math.prod(d for d in snf.diagonal if d)


def fixed_count_abelian(A: FgAbelian, psi: AbelianEndo) -> Count:
    """Order of ``Ker(psi - Id)``.

    Lift to ``K = {x in Z^m : (Q - I) x in L}`` with ``L`` the relation
    lattice; the fixed subgroup is ``K / L`` and its order is the ratio of
    covolumes when the ranks agree.
    """
    m = A.ngens
    block = _identity_shift(A, psi).hstack(-A.presentation)
    snf = smith_normal_form(block)
    kernel = [snf.V.column(j)[:m] for j in range(snf.rank, block.cols)]
    kernel = [v for v in kernel if any(v)]
    rank_k, covol_k = lattice_rank_and_covolume(kernel, m)
    relations = [[d if i == j else 0 for i in range(m)] for j, d in enumerate(A.relation_orders) if d]
    rank_l, covol_l = lattice_rank_and_covolume(relations, m)
    if rank_k > rank_l:
        return INFINITE
    assert covol_l % covol_k == 0
    return covol_l // covol_k


def to_group_table(A: FgAbelian, cap: int = DEFAULT_CLOSURE_CAP) -> GroupTable:
    """Explicit table; element ``x`` has coordinates in mixed radix over ``torsion``, first most significant."""
    if A.rank:
        raise NotFinite("group has a free part")
    if A.order > cap:
        raise GroupTooLarge(f"order {A.order} exceeds {cap}")
    return abelian_group(A.torsion)


def endo_to_map(A: FgAbelian, psi: AbelianEndo) -> EndoMap:
    if A.rank:
        raise NotFinite("group has a free part")
    d = np.array(A.torsion, dtype=object)
    n = int(A.order)
    strides = [math.prod(A.torsion[i + 1 :]) for i in range(len(A.torsion))]
    Q = np.array(psi.matrix.tolist(), dtype=object).reshape(len(A.torsion), len(A.torsion))
    idx = np.arange(n)
    coords = np.array([(idx // s) % di for s, di in zip(strides, A.torsion)], dtype=object).reshape(len(A.torsion), n)
    images = (Q @ coords) % d[:, None] if len(A.torsion) else np.zeros((0, n), dtype=object)
    flat = np.zeros(n, dtype=np.int64)
    for s, row in zip(strides, images):
        flat += np.array(row, dtype=np.int64) * s
    return EndoMap(_frozen(flat))


def random_endomorphism(A: FgAbelian, rng: np.random.Generator, bound: int = 3) -> AbelianEndo:
    """A uniformly drawn valid matrix: torsion never maps to the free part, and
    each torsion-to-torsion entry is a multiple of ``d_i / gcd(d_i, d_j)``."""
    orders = A.relation_orders
    m = A.ngens
    rows = [[0] * m for _ in range(m)]
    for i, di in enumerate(orders):
        for j, dj in enumerate(orders):
            if di == 0:
                rows[i][j] = int(rng.integers(-bound, bound + 1)) if dj == 0 else 0
            elif dj == 0:
                rows[i][j] = int(rng.integers(0, di))
            else:
                step = di // math.gcd(di, dj)
                rows[i][j] = step * int(rng.integers(0, di // step))
    return abelian_endo(A, rows)


def parse_abelian(spec: dict) -> FgAbelian:
    return FgAbelian(int(spec.get("rank", 0)), tuple(spec.get("torsion", ())))


def random_invariant_factors(rng: np.random.Generator, max_order: int) -> tuple[int, ...]:
    """Draw a divisibility chain with product at most ``max_order``."""
    from .catalog import invariant_factor_chains

    order = int(rng.integers(1, max_order + 1))
    chains = invariant_factor_chains(order)
    return chains[int(rng.integers(0, len(chains)))]


def determinant_count(M: Sequence[Sequence[int]]) -> Count:
    """``|det(M - I)|`` or ``INFINITE`` when it vanishes, for a free abelian group."""
    n = len(M)
    d = (IntMatrix(M, n) - IntMatrix.identity(n)).det()
    return INFINITE if d == 0 else abs(d)
