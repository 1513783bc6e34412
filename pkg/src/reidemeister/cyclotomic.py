"""Exact elements of Z[zeta_e] stored as integer coordinates over all ``e`` powers of zeta.

The coordinate vector is not unique (the powers of zeta are linearly
dependent), so equality and hashing go through a canonical form: reduce the
polynomial ``sum c_j x^j`` modulo the cyclotomic polynomial ``Phi_e`` and
compare the ``phi(e)`` remaining coefficients.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import Poly, Symbol, cyclotomic_poly


@lru_cache(maxsize=None)
def cyclotomic_coefficients(e: int) -> tuple[int, ...]:
    """Coefficients of ``Phi_e``, lowest degree first."""
    x = Symbol("x")
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(e, x), x).all_coeffs()))


@lru_cache(maxsize=None)
def reduction_matrix(e: int) -> np.ndarray:
    """Row ``j`` holds the canonical coordinates of ``zeta_e^j`` (shape ``e x phi(e)``)."""
    phi = cyclotomic_coefficients(e)
    deg = len(phi) - 1
    rows = np.zeros((e, deg), dtype=np.int64)
    current = np.zeros(deg, dtype=np.int64)
    current[0] = 1
    for j in range(e):
        rows[j] = current
        # multiply by x, then replace x^deg by -(lower terms of Phi_e)
        top = current[-1]
        current = np.concatenate(([0], current[:-1]))
        current -= top * np.array(phi[:-1], dtype=np.int64)
    rows.setflags(write=False)
    return rows


def canonical_coordinates(coords, e: int) -> tuple[int, ...]:
    red = reduction_matrix(e)
    out = [0] * red.shape[1]
    for j, c in enumerate(coords):
        if c:
            for t, r in enumerate(red[j]):
                if r:
                    out[t] += int(c) * int(r)
    return tuple(out)


@dataclass(frozen=True, eq=False)
class CyclotomicInt:
    conductor: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if self.conductor < 1:
            raise ValueError("conductor must be positive")
        if len(self.coords) != self.conductor:
            raise ValueError(f"expected {self.conductor} coordinates, got {len(self.coords)}")
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @classmethod
    def from_int(cls, e: int, n: int) -> "CyclotomicInt":
        return cls(e, (int(n),) + (0,) * (e - 1))

    @classmethod
    def zeta(cls, e: int, power: int = 1) -> "CyclotomicInt":
        coords = [0] * e
        coords[power % e] = 1
        return cls(e, tuple(coords))

    def canonical(self) -> tuple[int, ...]:
        return canonical_coordinates(self.coords, self.conductor)

    def _check(self, other: "CyclotomicInt") -> None:
        if other.conductor != self.conductor:
            raise ValueError(f"conductor mismatch: {self.conductor} vs {other.conductor}")

    def _coerce(self, other) -> "CyclotomicInt":
        if isinstance(other, int):
            return CyclotomicInt.from_int(self.conductor, other)
        if isinstance(other, CyclotomicInt):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(self.conductor, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.conductor, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        e = self.conductor
        out = [0] * e
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        out[(i + j) % e] += a * b
        return CyclotomicInt(e, tuple(out))

    __rmul__ = __mul__

    def conjugate(self) -> "CyclotomicInt":
        e = self.conductor
        return CyclotomicInt(e, tuple(self.coords[(-j) % e] for j in range(e)))

    def galois(self, k: int) -> "CyclotomicInt":
        """Image under ``zeta -> zeta^k`` (``k`` coprime to the conductor)."""
        e = self.conductor
        out = [0] * e
        for j, c in enumerate(self.coords):
            out[(j * k) % e] += c
        return CyclotomicInt(e, tuple(out))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CyclotomicInt.from_int(self.conductor, other)
        if not isinstance(other, CyclotomicInt) or other.conductor != self.conductor:
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash((self.conductor, self.canonical()))

    def as_int(self) -> int | None:
        """The rational integer value, or ``None`` if the element is not in Z."""
        c = self.canonical()
        return c[0] if not any(c[1:]) else None

    def reduce_mod(self, p: int, root: int) -> int:
        """Image in F_p under ``zeta -> root`` (``root`` a primitive ``e``-th root mod ``p``)."""
        return sum(c * pow(root, j, p) for j, c in enumerate(self.coords)) % p

    def to_complex(self) -> complex:
        e = self.conductor
        return sum(c * cmath.exp(2j * cmath.pi * k / e) for k, c in enumerate(self.coords))

    def __str__(self) -> str:
        value = self.as_int()
        if value is not None:
            return str(value)
        terms = []
        for j, c in enumerate(self.canonical()):
            if not c:
                continue
            mono = "" if j == 0 else (f"z{self.conductor}" if j == 1 else f"z{self.conductor}^{j}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"CyclotomicInt({self.conductor}, {self.coords})"
