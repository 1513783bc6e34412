"""Twisted classes along a group extension ``H -> G -> G/H`` respecting an endomorphism."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NotInvariant, NotNormal
from .groups import (
    EndoMap,
    GroupTable,
    _frozen,
    is_normal,
    is_subgroup,
    quotient_group,
    reidemeister_number,
    subgroup_table,
    twisted_classes,
)


@dataclass(frozen=True, eq=False)
class ExtensionContext:
    """Endomorphism-independent part of an extension, reusable across many ``phi``."""

    group: GroupTable
    subgroup: tuple[int, ...]
    subgroup_group: GroupTable
    local_index: np.ndarray
    quotient: GroupTable
    projection: np.ndarray
    section: tuple[int, ...]
    _memo: dict = field(default_factory=dict, repr=False)

    def reidemeister_sub(self, images: np.ndarray) -> int:
        return self._cached("sub", self.subgroup_group, images)

    def reidemeister_quot(self, images: np.ndarray) -> int:
        return self._cached("quot", self.quotient, images)

    def _cached(self, tag: str, group: GroupTable, images: np.ndarray) -> int:
        key = (tag, images.tobytes())
        r = self._memo.get(key)
        if r is None:
            r = reidemeister_number(group, EndoMap(images))
            self._memo[key] = r
        return r


def prepare_extension(G: GroupTable, subgroup) -> ExtensionContext:
    H = frozenset(int(h) for h in subgroup)
    if not is_subgroup(G, H):
        raise NotNormal("the given subset is not a subgroup")
    if not is_normal(G, H):
        raise NotNormal("the subgroup is not normal")
    sub, elems = subgroup_table(G, H)
    local = np.full(G.order, -1, dtype=np.int64)
    local[list(elems)] = np.arange(len(elems))
    quot, proj, section = quotient_group(G, H)
    return ExtensionContext(G, elems, sub, _frozen(local), quot, proj, section)


@dataclass(frozen=True, eq=False)
class ExtensionData:
    subgroup: tuple[int, ...]
    subgroup_group: GroupTable
    quotient: GroupTable
    projection: np.ndarray
    section: tuple[int, ...]
    restricted_endo: EndoMap
    quotient_endo: EndoMap


@dataclass(frozen=True)
class ExtensionReport:
    r_total: int
    r_quotient: int
    r_restricted: int
    r_restricted_twisted: tuple[int, ...]
    """``R(tau_g phi')`` for ``g`` running over the section, one entry per coset."""
    quotient_class_reps: tuple[int, ...]
    fix_total: int
    fix_quotient: int
    fix_restricted: int
    index: int
    subgroup_abelian: bool
    quotient_abelian: bool
    checks: dict[str, bool | None]

    @property
    def ok(self) -> bool:
        return all(v is not False for v in self.checks.values())


def _fix_count(images: np.ndarray) -> int:
    return int(np.count_nonzero(images == np.arange(len(images))))


def extension_analysis(
    G: GroupTable,
    subgroup,
    phi: EndoMap,
    context: ExtensionContext | None = None,
    r_total: int | None = None,
) -> tuple[ExtensionData, ExtensionReport]:
    """Brute-force the quantities in the extension inequalities for ``(G, H, phi)``.

    Checks reported (``None`` when the hypothesis does not apply):

    * ``restricted_bound``: ``R(phi') <= k (R(phi) - R(phi_bar) + 1)`` with ``k = #Fix(phi_bar)``
    * ``fixed_point_bound``: ``#Fix(phi) <= #Fix(phi') #Fix(phi_bar)`` for abelian ``H``
    * ``inner_twist_bound``: ``R(tau_g phi') <= [G:H] R(phi)`` for every ``g``
    * ``quotient_sum_bound``: ``sum_i R(tau_{g_i} phi') <= k R(phi)`` over lifts of the
      ``phi_bar``-class representatives, for abelian ``G/H``

    ``context`` and ``r_total`` may be passed in when sweeping many ``phi`` or ``H``.
    """
    ctx = context if context is not None else prepare_extension(G, subgroup)
    elems = np.array(ctx.subgroup, dtype=np.int64)
    img = phi.images
    if (ctx.local_index[img[elems]] < 0).any():
        raise NotInvariant("phi does not map the subgroup into itself")

    restricted = ctx.local_index[img[elems]]
    section = np.array(ctx.section, dtype=np.int64)
    quot_images = ctx.projection[img[section]]
    if not np.array_equal(ctx.projection[img], quot_images[ctx.projection]):
        raise NotInvariant("projection does not intertwine phi with the induced quotient map")

    if r_total is None:
        r_total = reidemeister_number(G, phi)
    r_quot = ctx.reidemeister_quot(quot_images)
    r_sub = ctx.reidemeister_sub(restricted)

    mult, inv = G.mult, G.inv
    twisted = []
    for s in ctx.section:
        tau = ctx.local_index[mult[mult[s, img[elems]], inv[s]]]
        twisted.append(ctx.reidemeister_sub(tau))

    quot_phi = EndoMap(_frozen(quot_images))
    quot_reps = twisted_classes(ctx.quotient, quot_phi).representatives

    k = _fix_count(quot_images)
    fix_total = _fix_count(img)
    fix_sub = _fix_count(restricted)
    N = ctx.quotient.order
    sub_abelian = ctx.subgroup_group.is_abelian()
    quot_abelian = ctx.quotient.is_abelian()

    checks: dict[str, bool | None] = {
        "restricted_bound": r_sub <= k * (r_total - r_quot + 1),
        "fixed_point_bound": (fix_total <= fix_sub * k) if sub_abelian else None,
        "inner_twist_bound": max(twisted) <= N * r_total,
        "quotient_sum_bound": (sum(twisted[c] for c in quot_reps) <= k * r_total) if quot_abelian else None,
    }
    data = ExtensionData(
        ctx.subgroup,
        ctx.subgroup_group,
        ctx.quotient,
        ctx.projection,
        ctx.section,
        EndoMap(_frozen(restricted)),
        quot_phi,
    )
    report = ExtensionReport(
        r_total=r_total,
        r_quotient=r_quot,
        r_restricted=r_sub,
        r_restricted_twisted=tuple(twisted),
        quotient_class_reps=tuple(quot_reps),
        fix_total=fix_total,
        fix_quotient=k,
        fix_restricted=fix_sub,
        index=N,
        subgroup_abelian=sub_abelian,
        quotient_abelian=quot_abelian,
        checks=checks,
    )
    return data, report
