"""Finite groups as multiplication tables, their endomorphisms, and twisted
conjugacy classes computed by brute force.

Elements are integer indices ``0..order-1``.  All tables are numpy arrays
marked read-only so a constructed group can be shared freely.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import (
    GroupTooLarge,
    MalformedTable,
    MissingInverse,
    NoIdentity,
    NotAHomomorphism,
    NotAPermutation,
    NotAssociative,
    NotGenerating,
)

EXHAUSTIVE_ASSOCIATIVITY_LIMIT = 256
DEFAULT_CLOSURE_CAP = 10000
AUTOMORPHISM_ORDER_CAP = 24
ENDOMORPHISM_ORDER_CAP = 16


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A validated finite group; build with :func:`group_from_cayley` and friends."""

    mult: np.ndarray
    inv: np.ndarray
    identity: int
    element_names: tuple[str, ...] | None = None

    @property
    def order(self) -> int:
        return int(self.mult.shape[0])

    def __len__(self) -> int:
        return self.order

    def name(self, x: int) -> str:
        if self.element_names is None:
            return str(x)
        return self.element_names[x]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.T))

    def element_orders(self) -> np.ndarray:
        n = self.order
        idx = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        power = idx.copy()
        for k in range(1, n + 1):
            hit = (power == self.identity) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            power = self.mult[power, idx]
        return orders

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        result, base = self.identity, x
        while k:
            if k & 1:
                result = int(self.mult[result, base])
            base = int(self.mult[base, base])
            k >>= 1
        return result


@dataclass(frozen=True, eq=False)
class EndoMap:
    """Element-wise endomorphism; ``images[x]`` is the image of element ``x``."""

    images: np.ndarray

    @property
    def is_bijective(self) -> bool:
        n = len(self.images)
        return bool(np.array_equal(np.sort(self.images), np.arange(n)))

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def compose(self, other: "EndoMap") -> "EndoMap":
        """``self ∘ other``."""
        return EndoMap(_frozen(self.images[other.images]))

    def key(self) -> bytes:
        return self.images.tobytes()

    def __eq__(self, other) -> bool:
        return isinstance(other, EndoMap) and np.array_equal(self.images, other.images)

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"EndoMap({self.images.tolist()})"


@dataclass(frozen=True)
class TwistedPartition:
    class_of: tuple[int, ...]
    class_count: int
    representatives: tuple[int, ...]

    def members(self, c: int) -> list[int]:
        return [x for x, cx in enumerate(self.class_of) if cx == c]

    def classes(self) -> list[frozenset[int]]:
        out: list[set[int]] = [set() for _ in range(self.class_count)]
        for x, c in enumerate(self.class_of):
            out[c].add(x)
        return [frozenset(s) for s in out]


# ---------------------------------------------------------------------------
# construction


def group_from_cayley(table, element_names: Sequence[str] | None = None, *, seed: int = 0) -> GroupTable:
    """Validate a Cayley table and discover its identity and inverses."""
    try:
        mult = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise MalformedTable(f"table is not a rectangular integer grid: {exc}") from None
    if mult.ndim != 2 or mult.shape[0] != mult.shape[1] or mult.shape[0] == 0:
        raise MalformedTable(f"table must be a non-empty square grid, got shape {mult.shape}")
    n = mult.shape[0]
    if mult.min() < 0 or mult.max() >= n:
        raise MalformedTable("table entries out of range")
    if element_names is not None and len(element_names) != n:
        raise MalformedTable("element_names length does not match the table")

    idx = np.arange(n)
    candidates = [e for e in range(n) if np.array_equal(mult[e], idx) and np.array_equal(mult[:, e], idx)]
    if not candidates:
        raise NoIdentity("no two-sided identity element")
    e = candidates[0]

    inv = np.full(n, -1, dtype=np.int64)
    for x in range(n):
        ys = np.flatnonzero((mult[x] == e) & (mult[:, x] == e))
        if len(ys) == 0:
            raise MissingInverse(f"element {x} has no two-sided inverse")
        inv[x] = ys[0]

    if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT:
        for x in range(n):
            # (x*y)*z versus x*(y*z) over all y, z
            if not np.array_equal(mult[mult[x]], mult[x][mult]):
                raise NotAssociative(f"associativity fails with first factor {x}")
    else:
        rng = np.random.default_rng(seed)
        x, y, z = rng.integers(0, n, size=(3, 10 * n * n))
        if not np.array_equal(mult[mult[x, y], z], mult[x, mult[y, z]]):
            raise NotAssociative("associativity fails on a sampled triple")

    names = tuple(element_names) if element_names is not None else None
    return GroupTable(_frozen(mult), _frozen(inv), int(e), names)


def group_from_elements(elements: Sequence[Hashable], mul: Callable, names: Sequence[str] | None = None) -> GroupTable:
    """Tabulate a group given an explicit element list and a product function."""
    index = {el: i for i, el in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            try:
                table[i, j] = index[mul(a, b)]
            except KeyError:
                raise MalformedTable("element list is not closed under the product") from None
    if names is None:
        names = [str(el) for el in elements]
    return group_from_cayley(table, names)


def closure(generators: Iterable[Hashable], mul: Callable, identity: Hashable, cap: int = DEFAULT_CLOSURE_CAP) -> list:
    """Breadth-first closure from the identity under right multiplication."""
    gens = list(generators)
    seen = {identity: 0}
    elements = [identity]
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                if len(elements) >= cap:
                    raise GroupTooLarge(f"closure exceeds {cap} elements")
                seen[y] = len(elements)
                elements.append(y)
                queue.append(y)
    return elements


def _cycle_string(p: tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, i = [], start
        while i not in seen:
            seen.add(i)
            cyc.append(i)
            i = p[i]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def group_from_permutations(degree: int, generators: Sequence[Sequence[int]], cap: int = DEFAULT_CLOSURE_CAP) -> GroupTable:
    """Permutation group generated by ``generators`` acting on ``0..degree-1``.

    The product ``p*q`` applies ``q`` first.  Elements are indexed in order of
    breadth-first discovery from the identity, so distinct non-identity
    generators get indices 1, 2, ... in the order given.
    """
    if degree < 1:
        raise NotAPermutation("degree must be positive")
    gens = []
    for g in generators:
        g = tuple(int(v) for v in g)
        if sorted(g) != list(range(degree)):
            raise NotAPermutation(f"{list(g)} is not a permutation of 0..{degree - 1}")
        gens.append(g)

    def compose(p, q):
        return tuple(p[i] for i in q)

    elements = closure(gens, compose, tuple(range(degree)), cap)
    return group_from_elements(elements, compose, [_cycle_string(p) for p in elements])


def cyclic_group(n: int) -> GroupTable:
    idx = np.arange(n)
    return group_from_cayley((idx[:, None] + idx[None, :]) % n)


def abelian_group(orders: Sequence[int]) -> GroupTable:
    """Direct product of cyclic groups; elements are tuples in mixed radix, first factor most significant."""
    orders = [int(d) for d in orders]
    if any(d < 1 for d in orders):
        raise MalformedTable("cyclic factor orders must be positive")
    elements = list(itertools.product(*[range(d) for d in orders])) if orders else [()]

    def add(a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, orders))

    return group_from_elements(elements, add)


# ---------------------------------------------------------------------------
# subgroups


def generated_subgroup(G: GroupTable, generators: Iterable[int]) -> frozenset[int]:
    gens = [int(g) for g in generators]
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = int(G.mult[x, g])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def is_subgroup(G: GroupTable, H: Iterable[int]) -> bool:
    h = np.array(sorted(H), dtype=np.int64)
    if len(h) == 0 or G.identity not in set(h.tolist()):
        return False
    mask = np.zeros(G.order, dtype=bool)
    mask[h] = True
    return bool(mask[G.mult[np.ix_(h, h)]].all() and mask[G.inv[h]].all())


def is_normal(G: GroupTable, H: Iterable[int]) -> bool:
    h = np.array(sorted(H), dtype=np.int64)
    mask = np.zeros(G.order, dtype=bool)
    mask[h] = True
    conj = G.mult[G.mult[:, h], G.inv[:, None]]  # g h g^-1
    return bool(mask[conj].all())


def small_generating_set(G: GroupTable) -> list[int]:
    """Greedy generating set, preferring elements of large order."""
    orders = G.element_orders()
    by_order = sorted(range(G.order), key=lambda x: (-int(orders[x]), x))
    gens: list[int] = []
    H = frozenset([G.identity])
    for x in by_order:
        if len(H) == G.order:
            break
        if x not in H:
            gens.append(x)
            H = generated_subgroup(G, gens)
    return gens


def normal_subgroups(G: GroupTable) -> list[frozenset[int]]:
    """All normal subgroups, sorted by size then by sorted elements."""
    found: set[frozenset[int]] = {frozenset([G.identity])}
    for x in range(G.order):
        conj_class = set(G.mult[G.mult[:, x], G.inv].tolist())
        found.add(generated_subgroup(G, conj_class))
    frontier = list(found)
    while frontier:
        new = []
        current = list(found)
        for A in frontier:
            a = np.fromiter(A, dtype=np.int64)
            for B in current:
                b = np.fromiter(B, dtype=np.int64)
                AB = frozenset(G.mult[np.ix_(a, b)].ravel().tolist())
                if AB not in found:
                    found.add(AB)
                    new.append(AB)
        frontier = new
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def subgroup_table(G: GroupTable, H: Iterable[int]) -> tuple[GroupTable, tuple[int, ...]]:
    """``H`` as a standalone group; local index ``i`` is the ``i``-th smallest element of ``H``."""
    elems = np.array(sorted(H), dtype=np.int64)
    local = np.full(G.order, -1, dtype=np.int64)
    local[elems] = np.arange(len(elems))
    table = local[G.mult[np.ix_(elems, elems)]]
    if (table < 0).any():
        raise MalformedTable("subset is not closed under multiplication")
    names = [G.name(int(x)) for x in elems] if G.element_names is not None else None
    return group_from_cayley(table, names), tuple(int(x) for x in elems)


def quotient_group(G: GroupTable, N: Iterable[int]) -> tuple[GroupTable, np.ndarray, tuple[int, ...]]:
    """Quotient by a normal subgroup.

    Returns the quotient table, the projection array and the section that
    picks the minimal element of every coset.  Cosets are numbered by their
    minimal element.
    """
    n_elems = np.array(sorted(N), dtype=np.int64)
    proj = np.full(G.order, -1, dtype=np.int64)
    section = []
    for x in range(G.order):
        if proj[x] < 0:
            proj[G.mult[x, n_elems]] = len(section)
            section.append(x)
    s = np.array(section, dtype=np.int64)
    table = proj[G.mult[np.ix_(s, s)]]
    return group_from_cayley(table), _frozen(proj), tuple(section)


# ---------------------------------------------------------------------------
# endomorphisms


def _bfs_tree(G: GroupTable, gens: Sequence[int]) -> list[tuple[int, int, int]]:
    """Spanning tree (element, parent, generator slot) of the right Cayley graph."""
    seen = {G.identity}
    tree = []
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for j, g in enumerate(gens):
            y = int(G.mult[x, g])
            if y not in seen:
                seen.add(y)
                tree.append((y, x, j))
                queue.append(y)
    return tree


def _homomorphism_mask(G: GroupTable, images: np.ndarray) -> np.ndarray:
    """Row-wise test that each row of ``images`` is multiplicative."""
    lhs = images[:, G.mult]
    rhs = G.mult[images[:, :, None], images[:, None, :]]
    return (lhs == rhs).all(axis=(1, 2))


def is_homomorphism(G: GroupTable, images) -> bool:
    return bool(_homomorphism_mask(G, np.asarray(images, dtype=np.int64)[None, :])[0])


def endo_from_element_images(G: GroupTable, images: Sequence[int]) -> EndoMap:
    imgs = np.array(images, dtype=np.int64)
    if imgs.shape != (G.order,) or imgs.min() < 0 or imgs.max() >= G.order:
        raise MalformedTable("element_images must list one valid element per group element")
    if not is_homomorphism(G, imgs):
        raise NotAHomomorphism("element images do not respect multiplication")
    return EndoMap(_frozen(imgs))


def endo_from_images(G: GroupTable, generator_indices: Sequence[int], generator_images: Sequence[int]) -> EndoMap:
    """Extend generator images to the unique endomorphism, verifying it exists."""
    gens = [int(g) for g in generator_indices]
    imgs = [int(h) for h in generator_images]
    if len(gens) != len(imgs):
        raise MalformedTable("generator_indices and generator_images differ in length")
    if any(not 0 <= v < G.order for v in gens + imgs):
        raise MalformedTable("generator index or image out of range")
    images = np.full(G.order, -1, dtype=np.int64)
    images[G.identity] = G.identity
    for y, parent, j in _bfs_tree(G, gens):
        images[y] = G.mult[images[parent], imgs[j]]
    if (images < 0).any():
        raise NotGenerating("the given elements do not generate the group")
    if any(images[g] != h for g, h in zip(gens, imgs)):
        raise NotAHomomorphism("generator images are inconsistent with the group relations")
    if not is_homomorphism(G, images):
        raise NotAHomomorphism("generator images do not extend to a homomorphism")
    return EndoMap(_frozen(images))


def identity_endo(G: GroupTable) -> EndoMap:
    return EndoMap(_frozen(np.arange(G.order)))


def inner_automorphism(G: GroupTable, g: int) -> EndoMap:
    """``x -> g x g^-1``."""
    return EndoMap(_frozen(G.mult[G.mult[g], G.inv[g]]))


def precompose_inner(G: GroupTable, phi: EndoMap, g: int) -> EndoMap:
    """``tau_g ∘ phi``, i.e. ``x -> g phi(x) g^-1``."""
    return EndoMap(_frozen(G.mult[G.mult[g, phi.images], G.inv[g]]))


def _enumerate_homs(G: GroupTable, *, bijective: bool, chunk: int = 4096) -> list[EndoMap]:
    gens = small_generating_set(G)
    if not gens:
        return [identity_endo(G)]
    orders = G.element_orders()
    choices = []
    for g in gens:
        if bijective:
            choices.append(np.flatnonzero(orders == orders[g]))
        else:
            choices.append(np.flatnonzero(orders[g] % orders == 0))
    tree = _bfs_tree(G, gens)
    gens_arr = np.array(gens)
    found = []
    product = itertools.product(*[c.tolist() for c in choices])
    while True:
        block = np.array(list(itertools.islice(product, chunk)), dtype=np.int64)
        if block.size == 0:
            break
        images = np.empty((len(block), G.order), dtype=np.int64)
        images[:, G.identity] = G.identity
        for y, parent, j in tree:
            images[:, y] = G.mult[images[:, parent], block[:, j]]
        ok = (images[:, gens_arr] == block).all(axis=1)
        if bijective:
            ok &= (np.sort(images, axis=1) == np.arange(G.order)).all(axis=1)
        ok[ok] = _homomorphism_mask(G, images[ok])
        found.extend(EndoMap(_frozen(row)) for row in images[ok])
    found.sort(key=lambda f: f.images.tolist())
    return found


def automorphisms(G: GroupTable, max_order: int = AUTOMORPHISM_ORDER_CAP) -> list[EndoMap]:
    """All automorphisms, by brute force over order-preserving generator images."""
    if G.order > max_order:
        raise GroupTooLarge(f"automorphism enumeration is capped at order {max_order}")
    return _enumerate_homs(G, bijective=True)


def endomorphisms(G: GroupTable, max_order: int = ENDOMORPHISM_ORDER_CAP) -> list[EndoMap]:
    if G.order > max_order:
        raise GroupTooLarge(f"endomorphism enumeration is capped at order {max_order}")
    return _enumerate_homs(G, bijective=False)


# ---------------------------------------------------------------------------
# twisted conjugacy


def twisted_action_table(G: GroupTable, phi: EndoMap) -> np.ndarray:
    """``T[g, x] = g x phi(g^-1)``."""
    return G.mult[G.mult, phi.images[G.inv][:, None]]


def twisted_classes(G: GroupTable, phi: EndoMap) -> TwistedPartition:
    """Orbits of ``x -> g x phi(g^-1)``, labelled by minimal element index.

    The map is a left action of ``G``, so the orbit of ``x`` is the column
    ``T[:, x]`` of the action table.
    """
    T = twisted_action_table(G, phi)
    class_of = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for x in range(G.order):
        if class_of[x] < 0:
            class_of[T[:, x]] = len(reps)
            reps.append(x)
    return TwistedPartition(tuple(class_of.tolist()), len(reps), tuple(reps))


def reidemeister_number(G: GroupTable, phi: EndoMap) -> int:
    T = twisted_action_table(G, phi)
    seen = np.zeros(G.order, dtype=bool)
    count = 0
    for x in range(G.order):
        if not seen[x]:
            seen[T[:, x]] = True
            count += 1
    return count


def fixed_subgroup(G: GroupTable, phi: EndoMap) -> frozenset[int]:
    fixed = frozenset(np.flatnonzero(phi.images == np.arange(G.order)).tolist())
    assert is_subgroup(G, fixed), "fixed points of an endomorphism must form a subgroup"
    return fixed
