"""Baumslag-Solitar groups ``B(1,n) = <a, b | a^-1 b a = b^n>`` realized inside
``Z[1/n] x Z`` with ``(x,r)(y,s) = (x + y/n^r, r+s)``, ``a -> (0,1)``, ``b -> (1,0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BaseMismatch, InvalidEndomorphism, KNotOne, NormalFormOverflow

ALPHABET = frozenset("aAbB")
DEFAULT_DIGIT_CAP = 10**6
_LOG10_2 = math.log10(2)


@dataclass(frozen=True)
class NAdic:
    """``num / n^exp`` kept with minimal ``exp``."""

    base: int
    num: int
    exp: int = 0

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be at least 2")
        if self.exp < 0:
            raise ValueError("exponent must be non-negative")
        num, exp = self.num, self.exp
        if num == 0:
            exp = 0
        while exp and num % self.base == 0:
            num //= self.base
            exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    def _check(self, other: "NAdic") -> None:
        if other.base != self.base:
            raise BaseMismatch(f"bases {self.base} and {other.base}")

    def __add__(self, other: "NAdic") -> "NAdic":
        self._check(other)
        e = max(self.exp, other.exp)
        n = self.base
        return NAdic(n, self.num * n ** (e - self.exp) + other.num * n ** (e - other.exp), e)

    def __neg__(self) -> "NAdic":
        return NAdic(self.base, -self.num, self.exp)

    def shift(self, r: int) -> "NAdic":
        """Multiply by ``n^-r``."""
        if r >= 0:
            return NAdic(self.base, self.num, self.exp + r)
        return NAdic(self.base, self.num * self.base ** (-r), self.exp)

    def __str__(self) -> str:
        return str(self.num) if self.exp == 0 else f"{self.num}/{self.base}^{self.exp}"


@dataclass(frozen=True)
class BSElement:
    q: NAdic
    t: int

    @property
    def base(self) -> int:
        return self.q.base

    def __str__(self) -> str:
        return f"({self.q}, {self.t})"


def bs_identity(n: int) -> BSElement:
    return BSElement(NAdic(n, 0), 0)


def bs_mul(x: BSElement, y: BSElement) -> BSElement:
    if x.base != y.base:
        raise BaseMismatch(f"bases {x.base} and {y.base}")
    return BSElement(x.q + y.q.shift(x.t), x.t + y.t)


def bs_inv(x: BSElement) -> BSElement:
    return BSElement((-x.q).shift(-x.t), -x.t)


def bs_pow(x: BSElement, k: int) -> BSElement:
    if k < 0:
        x, k = bs_inv(x), -k
    result = bs_identity(x.base)
    while k:
        if k & 1:
            result = bs_mul(result, x)
        x = bs_mul(x, x)
        k >>= 1
    return result


@dataclass(frozen=True)
class BSWord:
    letters: str
    n: int

    def __post_init__(self):
        check_word(self.letters)
        if self.n < 2:
            raise ValueError("n must be at least 2")


def check_word(w: str) -> str:
    bad = set(w) - ALPHABET
    if bad:
        raise ValueError(f"letters outside {{a,A,b,B}}: {''.join(sorted(bad))}")
    return w


def _letters(w) -> str:
    return w.letters if isinstance(w, BSWord) else check_word(w)


def word_inverse(w: str) -> str:
    return w[::-1].swapcase()


def iota(w, n: int | None = None) -> BSElement:
    """Evaluate a word left to right."""
    if isinstance(w, BSWord):
        n = w.n
    if n is None:
        raise ValueError("base n required")
    gens = {
        "a": BSElement(NAdic(n, 0), 1),
        "A": BSElement(NAdic(n, 0), -1),
        "b": BSElement(NAdic(n, 1), 0),
        "B": BSElement(NAdic(n, -1), 0),
    }
    x = bs_identity(n)
    for c in _letters(w):
        x = bs_mul(x, gens[c])
    return x


def a_exponent(w) -> int:
    s = _letters(w)
    return s.count("a") - s.count("A")


def _digits(s: int) -> float:
    return s.bit_length() * _LOG10_2


def normalize_word(w, n: int | None = None, digit_cap: int = DEFAULT_DIGIT_CAP) -> tuple[int, int, int]:
    """Reduced ``(r1, s, r2)`` with ``w = a^r1 b^s a^r2``, ``r1 >= 0 >= r2``.

    Letters are absorbed one at a time using ``a^-1 b = b^n a^-1`` and
    ``b a = a b^n``; afterwards ``a b^(n s') a^-1 = b^s'`` is undone while
    possible, so equal group elements give equal triples.
    """
    if isinstance(w, BSWord):
        n = w.n
    if n is None or n < 2:
        raise ValueError("base n >= 2 required")
    r1, s, r2 = 0, 0, 0
    for c in _letters(w):
        if c in "bB":
            s += (1 if c == "b" else -1) * n ** (-r2)
        elif c == "a":
            if r2 < 0:
                r2 += 1
            else:
                r1 += 1
                s *= n
        else:
            r2 -= 1
        if s == 0:
            total = r1 + r2
            r1, r2 = max(total, 0), min(total, 0)
        while r1 > 0 and r2 < 0 and s % n == 0:
            r1, s, r2 = r1 - 1, s // n, r2 + 1
        if _digits(s) > digit_cap:
            raise NormalFormOverflow(f"exponent of b exceeds {digit_cap} decimal digits")
    return r1, s, r2


def triple_word(r1: int, s: int, r2: int) -> str:
    return "a" * r1 + ("b" * s if s >= 0 else "B" * (-s)) + "A" * (-r2)


def triple_element(r1: int, s: int, r2: int, n: int) -> BSElement:
    """``iota(a^r1 b^s a^r2)`` without expanding the word."""
    return BSElement(NAdic(n, s, r1), r1 + r2)


@dataclass(frozen=True)
class BSEndoSpec:
    n: int
    image_a: str
    image_b: str

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        check_word(self.image_a)
        check_word(self.image_b)

    @classmethod
    def from_dict(cls, d: dict) -> "BSEndoSpec":
        return cls(int(d["n"]), str(d["image_a"]), str(d["image_b"]))

    def to_dict(self) -> dict:
        return {"n": self.n, "image_a": self.image_a, "image_b": self.image_b}


def identity_spec(n: int) -> BSEndoSpec:
    return BSEndoSpec(n, "a", "b")


def apply_endo(spec: BSEndoSpec, w) -> str:
    images = {
        "a": spec.image_a,
        "A": word_inverse(spec.image_a),
        "b": spec.image_b,
        "B": word_inverse(spec.image_b),
    }
    return "".join(images[c] for c in _letters(w))


@dataclass(frozen=True)
class EndoValidation:
    valid: bool
    k: int
    reason: str

    def to_dict(self) -> dict:
        return {"valid": self.valid, "k": self.k, "reason": self.reason}


def validate_endo(spec: BSEndoSpec) -> EndoValidation:
    n = spec.n
    k = a_exponent(spec.image_a)
    if a_exponent(spec.image_b) != 0:
        return EndoValidation(False, k, "image of b has nonzero a-exponent, so <b> is not mapped into its normal closure")
    ia = iota(spec.image_a, n)
    ib = iota(spec.image_b, n)
    lhs = bs_mul(bs_mul(bs_inv(ia), ib), ia)
    rhs = bs_pow(ib, n)
    if lhs != rhs:
        return EndoValidation(False, k, f"relation fails: n^{k} != n (n={n}); phi(a)^-1 phi(b) phi(a) = {lhs} but phi(b)^n = {rhs}")
    return EndoValidation(True, k, "relation a^-1 b a = b^n holds for the images")


def class_witnesses(spec: BSEndoSpec, N: int) -> list[str]:
    """Words ``a^m``, ``m < N``, in pairwise distinct twisted classes.

    With ``k = 1`` the a-exponent is constant on twisted classes, and the
    witnesses take the distinct values ``0..N-1``.
    """
    check = validate_endo(spec)
    if not check.valid:
        raise InvalidEndomorphism(check.reason)
    if check.k != 1:
        raise KNotOne(f"a-exponent of the image of a is {check.k}, not 1")
    return ["a" * m for m in range(N)]


def twisted_conjugate_word(spec: BSEndoSpec, x: str, g: str) -> str:
    """The word ``g x phi(g^-1)``."""
    return g + x + apply_endo(spec, word_inverse(g))
