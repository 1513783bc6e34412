"""The semidirect product ``Z^2 x_A Z`` with ``A = [[2,1],[1,1]]`` and the
automorphism ``phi((m,k),n) = ((k,-m),-n)``, which has four twisted classes.
"""

from __future__ import annotations

import random
from enum import Enum
from functools import lru_cache
from typing import NamedTuple

Mat2 = tuple[tuple[int, int], tuple[int, int]]

ALPHA: Mat2 = ((2, 1), (1, 1))
ALPHA_INV: Mat2 = ((1, -1), (-1, 2))
MU: Mat2 = ((0, 1), (-1, 0))
_I2: Mat2 = ((1, 0), (0, 1))


class FgwElement(NamedTuple):
    m: int
    k: int
    n: int

    def __str__(self) -> str:
        return f"(({self.m},{self.k}),{self.n})"


IDENTITY = FgwElement(0, 0, 0)


class ClassLabel(Enum):
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    B4 = "B4"


class FunctionalId(Enum):
    RHO1 = "rho1"
    PI = "pi"
    RHO2 = "rho2"
    RHO2_TENSOR_PI = "rho2_tensor_pi"


def _mat_mul(X: Mat2, Y: Mat2) -> Mat2:
    return (
        (X[0][0] * Y[0][0] + X[0][1] * Y[1][0], X[0][0] * Y[0][1] + X[0][1] * Y[1][1]),
        (X[1][0] * Y[0][0] + X[1][1] * Y[1][0], X[1][0] * Y[0][1] + X[1][1] * Y[1][1]),
    )


def _apply(X: Mat2, v: tuple[int, int]) -> tuple[int, int]:
    return X[0][0] * v[0] + X[0][1] * v[1], X[1][0] * v[0] + X[1][1] * v[1]


@lru_cache(maxsize=4096)
def alpha_power(n: int) -> Mat2:
    """``A^n`` by binary exponentiation, using the inverse matrix for negative ``n``."""
    base = ALPHA if n >= 0 else ALPHA_INV
    e = abs(n)
    result = _I2
    while e:
        if e & 1:
            result = _mat_mul(result, base)
        base = _mat_mul(base, base)
        e >>= 1
    return result


def fgw_mul(x: FgwElement, y: FgwElement) -> FgwElement:
    dm, dk = _apply(alpha_power(x.n), (y.m, y.k))
    return FgwElement(x.m + dm, x.k + dk, x.n + y.n)


def fgw_inv(x: FgwElement) -> FgwElement:
    m, k = _apply(alpha_power(-x.n), (x.m, x.k))
    return FgwElement(-m, -k, -x.n)


def fgw_phi(x: FgwElement) -> FgwElement:
    return FgwElement(x.k, -x.m, -x.n)


def fgw_phi_inv(x: FgwElement) -> FgwElement:
    return FgwElement(-x.k, x.m, -x.n)


def twisted_conjugate(x: FgwElement, g: FgwElement) -> FgwElement:
    """``g x phi(g^-1)``."""
    return fgw_mul(fgw_mul(g, x), fgw_phi(fgw_inv(g)))


random_twisted_conjugate = twisted_conjugate

# For each level residue mod 6: which coordinate parity decides, and the labels for even/odd.
_TABLE = {
    0: ("m+k", ClassLabel.B1, ClassLabel.B2),
    1: ("m", ClassLabel.B3, ClassLabel.B4),
    2: ("k", ClassLabel.B1, ClassLabel.B2),
    3: ("m+k", ClassLabel.B3, ClassLabel.B4),
    4: ("m", ClassLabel.B1, ClassLabel.B2),
    5: ("k", ClassLabel.B3, ClassLabel.B4),
}


def _parity(x: FgwElement, which: str) -> int:
    if which == "m":
        return x.m % 2
    if which == "k":
        return x.k % 2
    return (x.m + x.k) % 2


def classify(x: FgwElement) -> ClassLabel:
    which, even, odd = _TABLE[x.n % 6]
    return odd if _parity(x, which) else even


def functional_value(fid: FunctionalId, x: FgwElement) -> int:
    if fid is FunctionalId.RHO1:
        return 1
    if fid is FunctionalId.PI:
        return -1 if x.n % 2 else 1
    if fid is FunctionalId.RHO2:
        which = ("m+k", "m", "k")[x.n % 3]
        return -1 if _parity(x, which) else 1
    if fid is FunctionalId.RHO2_TENSOR_PI:
        return functional_value(FunctionalId.RHO2, x) * functional_value(FunctionalId.PI, x)
    raise ValueError(f"unknown functional {fid!r}")


FUNCTIONAL_ORDER = (FunctionalId.RHO1, FunctionalId.PI, FunctionalId.RHO2, FunctionalId.RHO2_TENSOR_PI)

REPRESENTATIVES = {
    ClassLabel.B1: FgwElement(0, 0, 0),
    ClassLabel.B2: FgwElement(1, 0, 0),
    ClassLabel.B3: FgwElement(0, 1, 1),
    ClassLabel.B4: FgwElement(1, 0, 1),
}


def _det4(M: list[list[int]]) -> int:
    from .intmatrix import IntMatrix

    return IntMatrix(M, 4).det()


def values_matrix() -> tuple[list[list[int]], int]:
    """Functional values (rows) on class representatives (columns), and the exact determinant."""
    M = [[functional_value(f, REPRESENTATIVES[c]) for c in ClassLabel] for f in FUNCTIONAL_ORDER]
    return M, _det4(M)


def lattice_functional(x: FgwElement) -> int:
    """1 when ``(mu - A^n)(s,t) = (m,k)`` has an integer solution, else 0."""
    An = alpha_power(x.n)
    B = tuple(tuple(MU[i][j] - An[i][j] for j in range(2)) for i in range(2))
    det = B[0][0] * B[1][1] - B[0][1] * B[1][0]
    if det == 0:
        raise ArithmeticError("singular system")
    num_s = x.m * B[1][1] - B[0][1] * x.k
    num_t = B[0][0] * x.k - x.m * B[1][0]
    return int(num_s % det == 0 and num_t % det == 0)


def parse_element(text: str) -> FgwElement:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"expected 'm,k,n', got {text!r}")
    return FgwElement(*(int(p) for p in parts))


def random_element(rng: random.Random, coord_bits: int = 64, level_bound: int = 64) -> FgwElement:
    """Coordinates uniform in ``[-2^bits, 2^bits]``; levels in ``[-level_bound, level_bound]``."""
    c = 1 << coord_bits
    return FgwElement(rng.randint(-c, c), rng.randint(-c, c), rng.randint(-level_bound, level_bound))


def element_report(x: FgwElement) -> dict:
    return {
        "element": [str(x.m), str(x.k), str(x.n)],
        "class": classify(x).value,
        "functionals": {f.value: functional_value(f, x) for f in FUNCTIONAL_ORDER},
        "lattice": lattice_functional(x),
    }
