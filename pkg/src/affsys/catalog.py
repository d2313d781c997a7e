"""Small named algebras used as lattices of truth values and as test fixtures."""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .algebra import FiniteAlgebra, Variety


def chain(n: int, variety: Variety | str = Variety.FRAME, names=None) -> FiniteAlgebra:
    """The n-element chain 0 < 1 < ... < n-1.

    For ``uquant`` the tensor is meet and the unit is the top.
    """
    variety = Variety(variety)
    if names is None:
        names = _chain_names(n)
    if variety is Variety.SET:
        return FiniteAlgebra(variety, names)
    le = np.triu(np.ones((n, n), dtype=bool))
    if variety is Variety.UQUANT:
        tensor = np.minimum.outer(np.arange(n), np.arange(n))
        return FiniteAlgebra(variety, names, le, tensor=tensor, unit=n - 1)
    return FiniteAlgebra(variety, names, le)


def _chain_names(n: int) -> list[str]:
    if n == 1:
        return ["0"]
    if n == 2:
        return ["bot", "top"]
    if n == 3:
        return ["bot", "c", "top"]
    return [f"c{i}" for i in range(n)]


def two(variety: Variety | str = Variety.FRAME) -> FiniteAlgebra:
    variety = Variety(variety)
    if variety is Variety.SET:
        return FiniteAlgebra(variety, ["0", "1"])
    return chain(2, variety, names=["0", "1"])


def boolean(k: int, variety: Variety | str = Variety.CBALG) -> FiniteAlgebra:
    """Powerset of a k-element set, ordered by inclusion."""
    masks = sorted(range(2**k), key=lambda m: (bin(m).count("1"), m))
    names = ["{" + ",".join(str(i) for i in range(k) if m >> i & 1) + "}" for m in masks]
    le = np.array([[(a & b) == a for b in masks] for a in masks], dtype=bool)
    if Variety(variety) is Variety.UQUANT:
        pos = {m: i for i, m in enumerate(masks)}
        tensor = [[pos[a & b] for b in masks] for a in masks]
        return FiniteAlgebra(variety, names, le, tensor=tensor, unit=pos[2**k - 1])
    return FiniteAlgebra(variety, names, le)


def diamond(variety: Variety | str = Variety.CBALG) -> FiniteAlgebra:
    """{bot, a, b, top} with a, b incomparable."""
    names = ["bot", "a", "b", "top"]
    le = np.eye(4, dtype=bool)
    le[0, :] = True
    le[:, 3] = True
    return FiniteAlgebra(variety, names, le)


def lukasiewicz(n: int = 3) -> FiniteAlgebra:
    """n-element Lukasiewicz chain {0, 1/(n-1), ..., 1}; a*b = max(0, a+b-1)."""
    k = n - 1
    names = ["0"] + [f"{i}/{k}" for i in range(1, k)] + ["1"]
    if n == 3:
        names = ["0", "1/2", "1"]
    le = np.triu(np.ones((n, n), dtype=bool))
    tensor = np.maximum(0, np.add.outer(np.arange(n), np.arange(n)) - k)
    return FiniteAlgebra(Variety.UQUANT, names, le, tensor=tensor, unit=k)


def drastic_chain(n: int) -> FiniteAlgebra:
    """n-element chain with the drastic product: a*b = min(a, b) if either is
    the top, else bottom.  Integral and, for n >= 3, not idempotent."""
    k = n - 1
    names = [f"d{i}" for i in range(n)]
    le = np.triu(np.ones((n, n), dtype=bool))
    tensor = np.zeros((n, n), dtype=np.int64)
    for a, b in itertools.product(range(n), repeat=2):
        tensor[a, b] = min(a, b) if max(a, b) == k else 0
    return FiniteAlgebra(Variety.UQUANT, names, le, tensor=tensor, unit=k)


def nonintegral_chain() -> FiniteAlgebra:
    """0 < e < t with unit e and t*t = t; unital, not integral."""
    names = ["0", "e", "t"]
    le = np.triu(np.ones((3, 3), dtype=bool))
    tensor = [[0, 0, 0], [0, 1, 2], [0, 2, 2]]
    return FiniteAlgebra(Variety.UQUANT, names, le, tensor=tensor, unit=1)


@lru_cache(maxsize=None)
def default_L(variety: Variety | str) -> FiniteAlgebra:
    """The lattice of truth values a suite uses when none is supplied."""
    variety = Variety(variety)
    if variety is Variety.UQUANT:
        return lukasiewicz(3)
    return two(variety)


BUILTINS = {
    "two": lambda v: two(v),
    "three-chain": lambda v: chain(3, v),
    "four-chain": lambda v: chain(4, v),
    "boolean4": lambda v: boolean(2, v),
    "lukasiewicz3": lambda v: lukasiewicz(3),
    "lukasiewicz4": lambda v: lukasiewicz(4),
    "drastic4": lambda v: drastic_chain(4),
}
