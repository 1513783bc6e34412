"""Reidemeister numbers of iterates and the Moebius-weighted divisor congruences."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import singledispatch

from .abelian import INFINITE, AbelianEndo, Count, FgAbelian, reidemeister_abelian
from .errors import InfiniteEntry
from .groups import EndoMap, GroupTable, identity_endo, reidemeister_number
from .intmatrix import IntMatrix


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def moebius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _matrix_power(M: IntMatrix, n: int) -> IntMatrix:
    result = IntMatrix.identity(M.rows)
    base = M
    while n:
        if n & 1:
            result = result @ base
        base = base @ base
        n >>= 1
    return result


@singledispatch
def endo_power(phi, n: int):
    raise TypeError(f"cannot iterate {type(phi).__name__}")


@endo_power.register
def _(phi: EndoMap, n: int) -> EndoMap:
    if n < 1:
        raise ValueError("n must be at least 1")
    result = None
    base = phi
    while n:
        if n & 1:
            result = base if result is None else result.compose(base)
        base = base.compose(base)
        n >>= 1
    return result


@endo_power.register
def _(phi: AbelianEndo, n: int) -> AbelianEndo:
    if n < 1:
        raise ValueError("n must be at least 1")
    return AbelianEndo(_matrix_power(phi.matrix, n))


@endo_power.register
def _(phi: IntMatrix, n: int) -> IntMatrix:
    return _matrix_power(phi, n)


@dataclass(frozen=True)
class ReidemeisterSequence:
    values: tuple[Count, ...]
    source: str = ""

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> Count:
        """``R(phi^n)`` for ``n >= 1``."""
        return self.values[n - 1]


def reidemeister_sequence(group, phi, N: int) -> ReidemeisterSequence:
    """``R(phi^n)`` for ``n = 1..N``; ``group`` is a GroupTable or an FgAbelian."""
    if N < 1:
        raise ValueError("N must be at least 1")
    values: list[Count] = []
    if isinstance(group, GroupTable):
        current = identity_endo(group)
        for _ in range(N):
            current = current.compose(phi)
            values.append(reidemeister_number(group, current))
        source = f"finite group of order {group.order}"
    elif isinstance(group, FgAbelian):
        M = IntMatrix.identity(group.ngens)
        for _ in range(N):
            M = M @ phi.matrix
            values.append(reidemeister_abelian(group, AbelianEndo(M)))
        source = f"abelian group {group}"
    else:
        raise TypeError(f"unsupported group type {type(group).__name__}")
    return ReidemeisterSequence(tuple(values), source)


@dataclass
class CongruenceRow:
    n: int
    sum: int | None
    residue: int | None
    ok: bool | None
    error: InfiniteEntry | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "sum": None if self.sum is None else str(self.sum),
            "residue": self.residue,
            "ok": self.ok,
        }
        if self.error is not None:
            out["error"] = str(self.error)
        return out


def congruence_sum(values, n: int) -> int:
    """``sum_{d | n} mu(d) R(phi^{n/d})``; raises InfiniteEntry if a needed term is infinite."""
    total = 0
    for d in divisors(n):
        mu = moebius(d)
        if mu == 0:
            continue
        v = values[n // d - 1]
        if v is INFINITE:
            raise InfiniteEntry(f"R(phi^{n // d}) is infinite")
        total += mu * v
    return total


def congruence_check(seq: ReidemeisterSequence | tuple | list) -> list[CongruenceRow]:
    values = seq.values if isinstance(seq, ReidemeisterSequence) else tuple(seq)
    rows = []
    for n in range(1, len(values) + 1):
        try:
            s = congruence_sum(values, n)
        except InfiniteEntry as exc:
            rows.append(CongruenceRow(n, None, None, None, exc))
            continue
        rows.append(CongruenceRow(n, s, s % n, s % n == 0))
    return rows


def congruences_ok(rows: list[CongruenceRow]) -> bool:
    """True when every checkable row passes and at least one row was checkable."""
    checked = [r for r in rows if r.ok is not None]
    return bool(checked) and all(r.ok for r in checked)
