"""Free algebras on one generator and their universal extensions.

The free unital quantale on one generator (the powerset of {0, 1, 2, ...}
under Minkowski addition) is never materialised.  Only finite subsets are
represented, and maps out of it are evaluated through the generator image.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .algebra import FiniteAlgebra, Hom, Variety, is_homomorphism
from .catalog import chain, diamond
from .errors import IntegralShortcutMismatch, VarietyMismatch


@dataclass(frozen=True, order=True)
class FinNatSet:
    """A finite set of naturals (0 allowed), kept sorted and duplicate-free."""

    items: tuple = ()

    def __post_init__(self):
        items = tuple(sorted(set(int(n) for n in self.items)))
        if items and items[0] < 0:
            raise ValueError("naturals only")
        object.__setattr__(self, "items", items)

    @classmethod
    def of(cls, *ns: int) -> "FinNatSet":
        return cls(tuple(ns))

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, n) -> bool:
        return n in self.items

    def __or__(self, other: "FinNatSet") -> "FinNatSet":
        return FinNatSet(self.items + other.items)

    def __mul__(self, other: "FinNatSet") -> "FinNatSet":
        return minkowski_mul(self, other)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.items)) + "}"


UNIT = FinNatSet((0,))
EMPTY = FinNatSet(())
GENERATOR = FinNatSet((1,))


def minkowski_mul(s: FinNatSet, t: FinNatSet) -> FinNatSet:
    return FinNatSet(tuple(n + m for n in s for m in t))


@dataclass(frozen=True, eq=False)
class FreeOnOne:
    variety: Variety
    algebra: FiniteAlgebra | None
    generator: int | FinNatSet

    @property
    def materialized(self) -> bool:
        return self.algebra is not None


@lru_cache(maxsize=None)
def free_on_one(variety: Variety | str) -> FreeOnOne:
    variety = Variety(variety)
    if variety is Variety.SET:
        return FreeOnOne(variety, FiniteAlgebra(variety, ["*"]), 0)
    if variety is Variety.SUPSL:
        return FreeOnOne(variety, chain(2, variety), 1)
    if variety is Variety.FRAME:
        return FreeOnOne(variety, chain(3, variety), 1)
    if variety is Variety.CBALG:
        return FreeOnOne(variety, diamond(variety), 1)
    return FreeOnOne(variety, None, GENERATOR)


def powers(L: FiniteAlgebra, a: int, upto: int) -> list[int]:
    """[a^0, a^1, ..., a^upto] with a^0 the unit."""
    out = [L.unit]
    for _ in range(upto):
        out.append(L.mul(out[-1], a))
    return out


def integral_shortcut(L: FiniteAlgebra, a: int, subset: FinNatSet) -> int:
    """bot for the empty set, top if 0 is present, else a^(min subset)."""
    if not subset.items:
        return L.bot
    if 0 in subset:
        return L.top
    return powers(L, a, subset.items[0])[-1]


def power_join(L: FiniteAlgebra, a: int, subset: FinNatSet) -> int:
    """join of a^n over n in ``subset`` (no shortcut)."""
    pw = powers(L, a, max(subset.items, default=0))
    return L.join_all(pw[n] for n in subset)


def eval_free_quantale_extension(L: FiniteAlgebra, a: int, subset: Iterable[int]) -> int:
    """join of a^n over n in ``subset``; cross-checked against the integral
    three-case shortcut whenever L is integral."""
    if L.variety is not Variety.UQUANT:
        raise VarietyMismatch(f"expected a unital quantale, got {L.variety}")
    subset = subset if isinstance(subset, FinNatSet) else FinNatSet(tuple(subset))
    value = power_join(L, a, subset)
    if L.is_integral:
        shortcut = integral_shortcut(L, a, subset)
        if shortcut != value:
            raise IntegralShortcutMismatch(
                f"a={L.names[a]}, subset={subset}: {L.names[value]} vs {L.names[shortcut]}"
            )
    return value


@dataclass(frozen=True, eq=False)
class QuantaleExtension:
    """The unique unital-quantale map from the free object sending {1} to a."""

    L: FiniteAlgebra
    a: int

    def __call__(self, subset) -> int:
        return eval_free_quantale_extension(self.L, self.a, subset)


def extend(S: FreeOnOne, A: FiniteAlgebra, a: int):
    """Unique homomorphism out of S sending the generator to ``a``."""
    if A.variety is not S.variety:
        raise VarietyMismatch(f"{S.variety} free object, {A.variety} target")
    v = S.variety
    if v is Variety.UQUANT:
        return QuantaleExtension(A, a)
    if v is Variety.SET:
        m = (a,)
    elif v is Variety.SUPSL:
        m = (A.bot, a)
    elif v is Variety.FRAME:
        m = (A.bot, a, A.top)
    else:
        m = (A.bot, a, A.compl[a].item(), A.top)
    h = Hom(S.algebra, A, tuple(int(x) for x in m))
    assert is_homomorphism(h), "free extension is not a homomorphism"
    return h
