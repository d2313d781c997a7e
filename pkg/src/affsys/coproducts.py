"""Finite coproducts with injections and mediating maps.

set     disjoint union
supsl   the product, with a |-> (bot, ..., a, ..., bot)
frame   down-sets of the product of the join-irreducible posets
cbalg   powerset of the product of the atom sets
uquant  unsupported
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import (
    DEFAULT_SIZE_CAP,
    FiniteAlgebra,
    Hom,
    Variety,
    _tuple_algebra,
    _terminal,
    downset_frame,
    enumerate_homs,
    is_homomorphism,
    join_irreducible_ids,
    join_irreducibles,
    product_poset,
)
from .errors import BudgetExceeded, CoconeShapeMismatch, UnsupportedVariety, VarietyMismatch


@dataclass(frozen=True, eq=False)
class CoproductResult:
    variety: Variety
    factors: tuple
    algebra: FiniteAlgebra
    injections: tuple
    coding: str
    # per element of ``algebra``: what it stands for under ``coding``
    codes: tuple = field(repr=False)


def _check_factors(variety: Variety, factors) -> None:
    for F in factors:
        if F.variety is not variety:
            raise VarietyMismatch(f"{F.variety} factor in a {variety} coproduct")


def coproduct(
    variety: Variety | str, factors: Sequence[FiniteAlgebra], cap: int = DEFAULT_SIZE_CAP
) -> CoproductResult:
    variety = Variety(variety)
    factors = tuple(factors)
    _check_factors(variety, factors)
    if variety is Variety.UQUANT:
        raise UnsupportedVariety("coproducts of unital quantales are not implemented")
    if variety is Variety.SET:
        return _set_coproduct(factors, cap)
    if variety is Variety.SUPSL:
        return _supsl_coproduct(factors, cap)
    if variety is Variety.FRAME:
        return _frame_coproduct(factors, cap)
    return _cbalg_coproduct(factors, cap)


def _set_coproduct(factors, cap) -> CoproductResult:
    codes = [(i, a) for i, F in enumerate(factors) for a in range(F.n)]
    if not codes:
        raise UnsupportedVariety("the empty set-variety coproduct has an empty carrier")
    if len(codes) > cap:
        raise BudgetExceeded(f"coproduct of size {len(codes)} exceeds cap {cap}")
    alg = FiniteAlgebra(Variety.SET, [f"{i}:{factors[i].names[a]}" for i, a in codes])
    pos = {c: k for k, c in enumerate(codes)}
    inj = tuple(Hom(F, alg, tuple(pos[(i, a)] for a in range(F.n))) for i, F in enumerate(factors))
    return CoproductResult(Variety.SET, factors, alg, inj, "tagged-union", tuple(codes))


def _supsl_coproduct(factors, cap) -> CoproductResult:
    size = int(np.prod([F.n for F in factors])) if factors else 1
    if size > cap:
        raise BudgetExceeded(f"coproduct of size {size} exceeds cap {cap}")
    if not factors:
        alg = _terminal(Variety.SUPSL)
        return CoproductResult(Variety.SUPSL, factors, alg, (), "tuples", ((),))
    alg, elements = _tuple_algebra(Variety.SUPSL, factors)
    pos = {t: k for k, t in enumerate(elements)}
    inj = []
    for i, F in enumerate(factors):
        base = [G.bot for G in factors]
        img = []
        for a in range(F.n):
            base[i] = a
            img.append(pos[tuple(base)])
        inj.append(Hom(F, alg, tuple(img)))
    return CoproductResult(Variety.SUPSL, factors, alg, tuple(inj), "tuples", tuple(elements))


def _frame_coproduct(factors, cap) -> CoproductResult:
    posets = [join_irreducibles(F) for F in factors]
    P, tuples = product_poset(posets)
    D = downset_frame(P, cap)
    alg = D.algebra
    pos = {m: k for k, m in enumerate(D.masks)}
    # j-tuples in factor ids
    jt = [tuple(posets[i].elements[v] for i, v in enumerate(t)) for t in tuples]
    inj = []
    for i, F in enumerate(factors):
        img = []
        for a in range(F.n):
            mask = 0
            for k, t in enumerate(jt):
                if F.le[t[i], a]:
                    mask |= 1 << k
            img.append(pos[mask])
        inj.append(Hom(F, alg, tuple(img)))
    codes = tuple(tuple(jt[k] for k in range(len(jt)) if m >> k & 1) for m in D.masks)
    return CoproductResult(Variety.FRAME, factors, alg, tuple(inj), "downsets", codes)


def _cbalg_coproduct(factors, cap) -> CoproductResult:
    atoms = [join_irreducible_ids(F) for F in factors]
    atom_tuples = list(itertools.product(*atoms))
    k = len(atom_tuples)
    if 2**k > cap:
        raise BudgetExceeded(f"coproduct of size 2^{k} exceeds cap {cap}")
    masks = sorted(range(2**k), key=lambda m: (bin(m).count("1"), m))
    pos = {m: i for i, m in enumerate(masks)}

    def label(t):
        return "(" + ",".join(F.names[x] for F, x in zip(factors, t)) + ")"

    names = ["{" + ",".join(label(atom_tuples[i]) for i in range(k) if m >> i & 1) + "}" for m in masks]
    le = np.array([[(a & b) == a for b in masks] for a in masks], dtype=bool)
    join = np.array([[pos[a | b] for b in masks] for a in masks], dtype=np.int64)
    meet = np.array([[pos[a & b] for b in masks] for a in masks], dtype=np.int64)
    alg = FiniteAlgebra(Variety.CBALG, names, le, _join=join, _meet=meet, _trusted=len(masks) > 64)
    inj = []
    for i, F in enumerate(factors):
        img = []
        for a in range(F.n):
            mask = 0
            for j, t in enumerate(atom_tuples):
                if F.le[t[i], a]:
                    mask |= 1 << j
            img.append(pos[mask])
        inj.append(Hom(F, alg, tuple(img)))
    codes = tuple(tuple(atom_tuples[j] for j in range(k) if m >> j & 1) for m in masks)
    return CoproductResult(Variety.CBALG, factors, alg, tuple(inj), "atom-tuples", codes)


def mediate_values(C: CoproductResult, images: Sequence[Sequence], ops) -> list:
    """Values of the mediating map on every element of ``C.algebra``.

    ``images[i][a]`` is the image of factor element ``a`` under the i-th
    cocone leg; ``ops`` supplies join_all/meet_all on those values.  This is
    the representation-agnostic core of ``mediate``.
    """
    if len(images) != len(C.factors):
        raise CoconeShapeMismatch(f"{len(images)} legs for {len(C.factors)} factors")
    for F, img in zip(C.factors, images):
        if len(img) != F.n:
            raise CoconeShapeMismatch("cocone leg does not cover its factor")
    v = C.variety
    if v is Variety.SET:
        return [images[i][a] for i, a in C.codes]
    if v is Variety.SUPSL:
        return [ops.join_all(images[i][a] for i, a in enumerate(t)) for t in C.codes]
    # frame and cbalg share the join-of-meets form
    return [
        ops.join_all(ops.meet_all(images[i][x] for i, x in enumerate(t)) for t in code)
        for code in C.codes
    ]


def mediate(C: CoproductResult, cocone: Sequence[Hom], target: FiniteAlgebra | None = None) -> Hom:
    """The unique h with h o mu_i = cocone_i."""
    if len(cocone) != len(C.factors):
        raise CoconeShapeMismatch(f"{len(cocone)} legs for {len(C.factors)} factors")
    if target is None:
        if not cocone:
            raise CoconeShapeMismatch("an empty cocone needs an explicit target")
        target = cocone[0].target
    for F, leg in zip(C.factors, cocone):
        if leg.source is not F or leg.target is not target:
            raise CoconeShapeMismatch("cocone leg has the wrong source or target")
    values = mediate_values(C, [leg.map for leg in cocone], target)
    h = Hom(C.algebra, target, tuple(values))
    if not is_homomorphism(h):
        raise AssertionError("mediating map is not a homomorphism")
    return h


@dataclass
class CoproductAudit:
    ok: bool = True
    cocones: int = 0
    failures: list = field(default_factory=list)


def verify_coproduct_universal(C: CoproductResult, targets: Sequence[FiniteAlgebra]) -> CoproductAudit:
    """Exhaustive universal-property audit against every cocone into every target."""
    audit = CoproductAudit()
    for B in targets:
        legs = [enumerate_homs(F, B) for F in C.factors]
        all_out = enumerate_homs(C.algebra, B)
        for cocone in itertools.product(*legs):
            audit.cocones += 1
            h = mediate(C, list(cocone), B)
            commutes = all(mu.then(h) == leg for mu, leg in zip(C.injections, cocone))
            matching = [
                g for g in all_out if all(mu.then(g) == leg for mu, leg in zip(C.injections, cocone))
            ]
            if not commutes or len(matching) != 1 or matching[0] != h:
                audit.ok = False
                audit.failures.append(
                    {"target": list(B.names), "cocone": [leg.map for leg in cocone], "matching": len(matching)}
                )
    return audit
