"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class ReidemeisterError(ValueError):
    """Base class for input and contract errors raised by this package."""


# group construction
class MalformedTable(ReidemeisterError):
    pass


class NoIdentity(ReidemeisterError):
    pass


class MissingInverse(ReidemeisterError):
    pass


class NotAssociative(ReidemeisterError):
    pass


class NotAPermutation(ReidemeisterError):
    pass


class GroupTooLarge(ReidemeisterError):
    pass


# endomorphisms and extensions
class NotGenerating(ReidemeisterError):
    pass


class NotAHomomorphism(ReidemeisterError):
    pass


class NotNormal(ReidemeisterError):
    pass


class NotInvariant(ReidemeisterError):
    pass


# character tables
class PrimeSearchExhausted(ReidemeisterError):
    pass


class LiftingFailure(ReidemeisterError):
    """A modular character value did not lift inside the expected bound."""


# abelian groups and iterates
class NotFinite(ReidemeisterError):
    pass


class InvalidEndomorphism(ReidemeisterError):
    pass


class InfiniteEntry(ReidemeisterError):
    pass


# Baumslag-Solitar
class BaseMismatch(ReidemeisterError):
    pass


class NormalFormOverflow(ReidemeisterError):
    pass


class KNotOne(ReidemeisterError):
    pass
