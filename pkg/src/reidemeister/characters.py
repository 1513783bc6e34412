"""Exact character tables by the Dixon-Schneider method, and counts of
irreducible characters fixed by an endomorphism.

The class-algebra structure constants are reduced modulo a prime ``p`` with
``p = 1 (mod exponent)``.  Common eigenvectors of the class matrices give the
central characters mod ``p``; each character value is then recovered exactly
from its eigenvalue multiplicities, which are small non-negative integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sympy import isprime, primitive_root

from . import _modp
from .cyclotomic import CyclotomicInt, reduction_matrix
from .errors import GroupTooLarge, LiftingFailure, PrimeSearchExhausted
from .groups import EndoMap, GroupTable

CHARACTER_TABLE_ORDER_CAP = 512
PRIME_SEARCH_LIMIT = 2**31


@dataclass(frozen=True, eq=False)
class ConjClasses:
    reps: tuple[int, ...]
    sizes: tuple[int, ...]
    class_of: np.ndarray

    def __len__(self) -> int:
        return len(self.reps)


@dataclass(frozen=True, eq=False)
class CharacterTable:
    classes: ConjClasses
    degrees: tuple[int, ...]
    values: tuple[tuple[CyclotomicInt, ...], ...]
    conductor: int
    prime: int
    root: int
    """Primitive ``conductor``-th root of unity mod ``prime`` standing for zeta."""
    modular_values: np.ndarray
    coords: np.ndarray
    """``coords[i, k, j]``: coefficient of ``zeta^j`` in ``values[i][k]``."""
    group_order: int

    def __len__(self) -> int:
        return len(self.degrees)

    def canonical_array(self) -> np.ndarray:
        return self.coords @ reduction_matrix(self.conductor)


def conjugacy_classes(G: GroupTable) -> ConjClasses:
    conj = G.mult[G.mult, G.inv[:, None]]  # conj[g, x] = g x g^-1
    class_of = np.full(G.order, -1, dtype=np.int64)
    reps, sizes = [], []
    for x in range(G.order):
        if class_of[x] < 0:
            orbit = np.unique(conj[:, x])
            class_of[orbit] = len(reps)
            reps.append(x)
            sizes.append(len(orbit))
    class_of.setflags(write=False)
    return ConjClasses(tuple(reps), tuple(sizes), class_of)


def group_exponent(G: GroupTable) -> int:
    return math.lcm(*G.element_orders().tolist())


def _ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def dixon_prime(e: int, group_order: int, limit: int = PRIME_SEARCH_LIMIT) -> int:
    """Smallest prime ``p = 1 (mod e)`` with ``p > 2*ceil(sqrt(group_order))``."""
    bound = 2 * _ceil_sqrt(group_order)
    p = bound + 1 + ((1 - (bound + 1)) % e)
    while p < limit:
        if isprime(p):
            return p
        p += e
    raise PrimeSearchExhausted(f"no prime = 1 mod {e} below {limit}")


def class_constants(G: GroupTable, classes: ConjClasses) -> np.ndarray:
    """``a[i, j, k] = #{(x, y) in C_i x C_j : x y = rep_k}``."""
    r = len(classes)
    a = np.zeros((r, r, r), dtype=np.int64)
    xs = np.arange(G.order)
    for k, z in enumerate(classes.reps):
        ys = G.mult[G.inv[xs], z]
        np.add.at(a, (classes.class_of[xs], classes.class_of[ys], k), 1)
    return a


def _class_matrix(G: GroupTable, classes: ConjClasses, j: int) -> np.ndarray:
    """``N[k, i] = a[i, j, k]``, so central characters are left eigenvectors of ``N``."""
    r = len(classes)
    ys = np.flatnonzero(classes.class_of == j)
    reps = np.array(classes.reps)
    xs = G.mult[reps[:, None], G.inv[ys][None, :]]  # rep_k * y^-1
    N = np.zeros((r, r), dtype=np.int64)
    np.add.at(N, (np.repeat(np.arange(r), len(ys)), classes.class_of[xs].ravel()), 1)
    return N


def _common_eigenvectors(G: GroupTable, classes: ConjClasses, p: int) -> list[np.ndarray]:
    r = len(classes)
    spaces = [_modp.rref(np.eye(r, dtype=np.int64), p)]
    for j in range(r):
        if all(len(B) == 1 for B, _ in spaces):
            break
        N = None
        refined = []
        for B, pivots in spaces:
            if len(B) == 1:
                refined.append((B, pivots))
                continue
            if N is None:
                N = _class_matrix(G, classes, j) % p
            R = _modp.matmul_mod(B, N, p)[:, pivots]
            diag = R[0, 0]
            if np.array_equal(R, diag * np.eye(len(B), dtype=np.int64)):
                refined.append((B, pivots))
                continue
            eigvals = _modp.roots(_modp.charpoly(R, p), p)
            found = 0
            for lam in eigvals:
                shifted = (R - lam * np.eye(len(B), dtype=np.int64)) % p
                E = _modp.nullspace(shifted.T, p)
                found += len(E)
                refined.append(_modp.rref(_modp.matmul_mod(E, B, p), p))
            if found != len(B):
                raise LiftingFailure("class matrix is not diagonalisable over F_p; prime choice is wrong")
        spaces = refined
    if any(len(B) != 1 for B, _ in spaces):
        raise LiftingFailure("common eigenspaces did not split into lines")
    return [B[0] for B, _ in spaces]


def _power_classes(G: GroupTable, classes: ConjClasses, e: int) -> np.ndarray:
    """``pw[k, i]`` is the class of ``rep_i^k`` for ``k = 0..e-1``."""
    reps = np.array(classes.reps)
    pw = np.empty((e, len(reps)), dtype=np.int64)
    cur = np.full(len(reps), G.identity)
    for k in range(e):
        pw[k] = classes.class_of[cur]
        cur = G.mult[cur, reps]
    return pw


def character_table(G: GroupTable, max_order: int = CHARACTER_TABLE_ORDER_CAP) -> CharacterTable:
    if G.order > max_order:
        raise GroupTooLarge(f"character tables are capped at order {max_order}")
    n = G.order
    classes = conjugacy_classes(G)
    r = len(classes)
    e = group_exponent(G)
    p = dixon_prime(e, n)
    inv_sizes = np.array([pow(int(s), -1, p) for s in classes.sizes], dtype=np.int64)
    id_class = int(classes.class_of[G.identity])
    inv_class = classes.class_of[G.inv[np.array(classes.reps)]]
    root_bound = math.isqrt(n)

    rows = []
    for w in _common_eigenvectors(G, classes, p):
        w = (w * pow(int(w[id_class]), -1, p)) % p
        # sum_k |C_k| chi(C_k) chi(C_k^-1) = |G| with chi(C_k) = d w_k / |C_k|
        t = int(np.sum(w * w[inv_class] % p * inv_sizes % p) % p)
        target = n * pow(t, -1, p) % p
        degree = next((d for d in range(1, root_bound + 1) if d * d % p == target), None)
        if degree is None:
            raise LiftingFailure(f"no degree d <= sqrt(|G|) with d^2 = {target} mod {p}")
        rows.append((degree, (degree * w % p) * inv_sizes % p))

    modular = np.array([v for _, v in rows], dtype=np.int64)
    degrees = [d for d, _ in rows]

    z = pow(int(primitive_root(p)), (p - 1) // e, p)
    pw = _power_classes(G, classes, e)
    dft = np.array([[pow(z, (-j * k) % e, p) for j in range(e)] for k in range(e)], dtype=np.int64)
    stacked = modular[:, pw.T].reshape(len(rows) * r, e)  # [chi, class] x power
    mult = _modp.matmul_mod(stacked, dft, p) * pow(e, -1, p) % p
    mult = np.where(mult > p // 2, mult - p, mult).reshape(len(rows), r, e)
    if (mult * mult > n).any():
        raise LiftingFailure("eigenvalue multiplicity outside [-sqrt|G|, sqrt|G|]")

    trivial = np.all(modular == 1, axis=1)
    order = sorted(range(len(rows)), key=lambda i: (not trivial[i], degrees[i], modular[i].tolist()))
    coords = mult[order]
    coords.setflags(write=False)
    modular = modular[order]
    modular.setflags(write=False)
    values = tuple(tuple(CyclotomicInt(e, tuple(coords[i, k].tolist())) for k in range(r)) for i in range(len(order)))
    return CharacterTable(
        classes=classes,
        degrees=tuple(degrees[i] for i in order),
        values=values,
        conductor=e,
        prime=p,
        root=z,
        modular_values=modular,
        coords=coords,
        group_order=n,
    )


# ---------------------------------------------------------------------------
# exact verification


def _ntt_prime(e: int, bound: int) -> int:
    return dixon_prime(e, (bound + 1) ** 2)


def cyclic_gram(A: np.ndarray, B: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Exact ``G[i, j] = sum_k weights[k] * A[i, k] * B[j, k]`` in ``Z[x]/(x^e - 1)``.

    ``A`` and ``B`` hold coefficient vectors along their last axis.  The
    products are computed through the discrete Fourier transform over F_q
    for a prime ``q = 1 (mod e)`` exceeding twice a bound on every output
    coefficient, so the symmetric lift of the result is exact.
    """
    e = A.shape[-1]
    la = np.abs(A).sum(axis=-1).max(axis=0)
    lb = np.abs(B).sum(axis=-1).max(axis=0)
    bound = int(np.sum(np.abs(weights) * la * lb))
    q = _ntt_prime(e, bound)
    w = pow(int(primitive_root(q)), (q - 1) // e, q)
    fwd = np.array([[pow(w, j * t % e, q) for t in range(e)] for j in range(e)], dtype=np.int64)
    back = np.array([[pow(w, (-j * t) % e, q) for j in range(e)] for t in range(e)], dtype=np.int64)
    Ah = _modp.matmul_mod(A % q, fwd, q)
    Bh = _modp.matmul_mod(B % q, fwd, q)
    Ah = Ah * (weights[None, :, None] % q) % q
    # pointwise products summed over the middle axis, one frequency at a time
    Gh = np.empty((A.shape[0], B.shape[0], e), dtype=np.int64)
    for t in range(e):
        Gh[:, :, t] = _modp.matmul_mod(Ah[:, :, t], Bh[:, :, t].T, q)
    G = _modp.matmul_mod(Gh, back, q) * pow(e, -1, q) % q
    return np.where(G > q // 2, G - q, G)


def _conjugate_coords(coords: np.ndarray) -> np.ndarray:
    e = coords.shape[-1]
    return coords[..., (-np.arange(e)) % e]


def row_orthogonality_ok(ct: CharacterTable) -> bool:
    sizes = np.array(ct.classes.sizes, dtype=np.int64)
    gram = cyclic_gram(ct.coords, _conjugate_coords(ct.coords), sizes)
    canon = gram @ reduction_matrix(ct.conductor)
    expected = np.zeros_like(canon)
    expected[np.arange(len(ct)), np.arange(len(ct)), 0] = ct.group_order
    return bool(np.array_equal(canon, expected))


def column_orthogonality_ok(ct: CharacterTable) -> bool:
    cols = np.swapaxes(ct.coords, 0, 1)
    gram = cyclic_gram(cols, _conjugate_coords(cols), np.ones(len(ct), dtype=np.int64))
    canon = gram @ reduction_matrix(ct.conductor)
    expected = np.zeros_like(canon)
    r = len(ct.classes)
    for k in range(r):
        q, rem = divmod(ct.group_order, ct.classes.sizes[k])
        assert rem == 0
        expected[k, k, 0] = q
    return bool(np.array_equal(canon, expected))


def degree_sum_ok(ct: CharacterTable) -> bool:
    return sum(d * d for d in ct.degrees) == ct.group_order


def modular_consistency_ok(ct: CharacterTable) -> bool:
    """Reducing each exact value at ``zeta -> root`` reproduces the modular table."""
    e, p = ct.conductor, ct.prime
    powers = np.array([pow(ct.root, j, p) for j in range(e)], dtype=np.int64)
    reduced = _modp.matmul_mod(ct.coords % p, powers, p)
    return bool(np.array_equal(reduced, ct.modular_values))


# ---------------------------------------------------------------------------
# fixed characters


def class_image_map(classes: ConjClasses, phi: EndoMap) -> np.ndarray:
    """Class of ``phi(rep)`` for each class; well defined since ``phi`` maps conjugates to conjugates."""
    return classes.class_of[phi.images[np.array(classes.reps)]]


def fixed_irreducibles(ct: CharacterTable, phi: EndoMap) -> tuple[int, list[int]]:
    """Count irreducible characters with ``chi ∘ phi = chi``, i.e. ``rho ∘ phi ≅ rho``."""
    kappa = class_image_map(ct.classes, phi)
    canon = ct.canonical_array()
    fixed = np.all(canon[:, kappa, :] == canon, axis=(1, 2))
    indices = np.flatnonzero(fixed).tolist()
    return len(indices), indices


def table_to_json(ct: CharacterTable, G: GroupTable | None = None) -> dict:
    return {
        "order": ct.group_order,
        "conductor": ct.conductor,
        "prime": ct.prime,
        "classes": {
            "representatives": list(ct.classes.reps),
            "sizes": list(ct.classes.sizes),
            "names": [G.name(r) for r in ct.classes.reps] if G is not None else None,
        },
        "degrees": list(ct.degrees),
        "values": [[list(v.coords) for v in row] for row in ct.values],
    }
