"""Affine spaces (X, tau) with tau a subalgebra of L^X.

Opens are stored extensionally as tuples ``alpha`` with ``alpha[x]`` an
element id of L.  The algebra of opens is built on demand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .algebra import (
    FiniteAlgebra,
    PointwiseOps,
    Variety,
    closure,
    closure_witness,
    pointwise_subalgebra,
)
from .errors import BudgetExceeded, NotASubalgebra, ValidationError, Verdict

OPEN_CAP = 5000


@dataclass(frozen=True, eq=False)
class AffineSpace:
    L: FiniteAlgebra
    points: tuple
    opens: tuple  # sorted tuple of tuples

    @cached_property
    def algebra(self) -> FiniteAlgebra:
        return pointwise_subalgebra(self.L, self.opens)

    @cached_property
    def open_index(self) -> dict:
        return {a: i for i, a in enumerate(self.opens)}

    def __repr__(self) -> str:
        return f"AffineSpace(|X|={len(self.points)}, |tau|={len(self.opens)}, L={self.L.variety})"

    def same_as(self, other: "AffineSpace") -> bool:
        return self.L is other.L and self.points == other.points and self.opens == other.opens


def _make(L, points, opens) -> AffineSpace:
    return AffineSpace(L, tuple(points), tuple(sorted(set(opens))))


def _check_functions(L: FiniteAlgebra, n: int, opens) -> list[tuple]:
    out = []
    for alpha in opens:
        alpha = tuple(int(v) for v in alpha)
        if len(alpha) != n or any(not 0 <= v < L.n for v in alpha):
            raise ValidationError(f"{alpha} is not a function X -> L", (alpha,))
        out.append(alpha)
    return out


def validate_space(L: FiniteAlgebra, points: Sequence, opens, autoclose: bool = False) -> AffineSpace:
    points = tuple(points)
    opens = _check_functions(L, len(points), opens)
    ops = PointwiseOps(L, len(points))
    if L.variety is Variety.SET:
        if not opens:
            raise NotASubalgebra("set-variety spaces need at least one open", ())
        return _make(L, points, opens)
    if autoclose:
        return _make(L, points, closure(ops.signature(), opens, cap=OPEN_CAP))
    bad = closure_witness(ops.signature(), opens)
    if bad is not None:
        raise NotASubalgebra(f"opens not closed under {bad[0]}", bad)
    return _make(L, points, opens)


def generated_space(L: FiniteAlgebra, points: Sequence, seeds) -> AffineSpace:
    """Space whose opens are generated by ``seeds`` (autoclose)."""
    if L.variety is Variety.SET:
        seeds = list(seeds)
        return _make(L, points, seeds)
    return validate_space(L, points, seeds, autoclose=True)


def is_continuous(f: Sequence[int], s1: AffineSpace, s2: AffineSpace) -> Verdict:
    """f: s1.points -> s2.points (as an index tuple); every alpha o f must be open."""
    if s1.L is not s2.L:
        raise ValidationError("spaces over different L")
    for alpha in s2.opens:
        pre = tuple(alpha[f[x]] for x in range(len(s1.points)))
        if pre not in s1.open_index:
            return Verdict(False, alpha, "preimage of an open is not open")
    return Verdict(True)


def initial_structure(L: FiniteAlgebra, points: Sequence, cone) -> AffineSpace:
    """Initial structure w.r.t. ``cone`` = [(f_i, space_i)]: opens generated by
    every alpha o f_i."""
    n = len(points)
    seeds = []
    for f, s in cone:
        if s.L is not L:
            raise ValidationError("cone over a different L")
        for alpha in s.opens:
            seeds.append(tuple(alpha[f[x]] for x in range(n)))
    if L.variety is Variety.SET and not seeds:
        raise ValidationError("set-variety initial structure of an empty cone is empty")
    return generated_space(L, points, seeds)


def sierpinski_space(L: FiniteAlgebra) -> AffineSpace:
    """(|L|, <1_L>)."""
    ident = tuple(range(L.n))
    return generated_space(L, L.names, [ident])


def is_t0_space(s: AffineSpace) -> Verdict:
    seen = {}
    for x in range(len(s.points)):
        key = tuple(alpha[x] for alpha in s.opens)
        if key in seen:
            return Verdict(False, (s.points[seen[key]], s.points[x]), "points not separated")
        seen[key] = x
    return Verdict(True)


def all_maps(n_from: int, n_to: int):
    return itertools.product(range(n_to), repeat=n_from)


def continuous_maps(s1: AffineSpace, s2: AffineSpace, cap: int = 200_000) -> list[tuple]:
    if len(s2.points) ** len(s1.points) > cap:
        raise BudgetExceeded("too many candidate maps")
    return [f for f in all_maps(len(s1.points), len(s2.points)) if is_continuous(f, s1, s2)]


def audit_initial_source(s: AffineSpace, cone, probes: Sequence[AffineSpace], cap: int = 200_000) -> Verdict:
    """Bounded initiality audit: for every probe Y and map g: Y -> X, if every
    f_i o g is continuous then g must be."""
    violations = []
    for Y in probes:
        if Y.L is not s.L:
            continue
        if len(s.points) ** len(Y.points) > cap:
            raise BudgetExceeded("initiality audit too large")
        for g in all_maps(len(Y.points), len(s.points)):
            legs_ok = all(
                is_continuous(tuple(f[g[y]] for y in range(len(Y.points))), Y, t) for f, t in cone
            )
            if legs_ok and not is_continuous(g, Y, s):
                violations.append((Y, g))
    return Verdict(not violations, violations[:1], "" if not violations else "cone is not initial")


@dataclass
class SpaceEmbedding:
    """x |-> (alpha(x))_{alpha in tau} into the tau-indexed power of the
    Sierpinski space, kept lazily as the cone of its projections."""

    space: AffineSpace
    sierpinski: AffineSpace
    f: tuple
    injective: Verdict
    initial: Verdict
    audit: Verdict | None = None
    details: dict = field(default_factory=dict)

    @property
    def cone(self):
        return [(tuple(alpha), self.sierpinski) for alpha in self.space.opens]

    @property
    def is_embedding(self) -> bool:
        return bool(self.injective) and bool(self.initial) and (self.audit is None or bool(self.audit))


def canonical_space_embedding(
    s: AffineSpace, probes: Sequence[AffineSpace] = (), cap: int = 64
) -> SpaceEmbedding:
    if len(s.opens) > cap:
        raise BudgetExceeded(f"{len(s.opens)} opens exceed cap {cap}")
    S = sierpinski_space(s.L)
    n = len(s.points)
    f = tuple(tuple(alpha[x] for alpha in s.opens) for x in range(n))
    dup = {}
    inj = Verdict(True)
    for x, v in enumerate(f):
        if v in dup:
            inj = Verdict(False, (s.points[dup[v]], s.points[x]), "canonical map collides")
            break
        dup[v] = x
    # pi_alpha o f = alpha, so the structure induced by f is the one induced by
    # the opens viewed as maps into the Sierpinski space.
    cone = [(alpha, S) for alpha in s.opens]
    induced = initial_structure(s.L, s.points, cone)
    initial = Verdict(induced.opens == s.opens, None if induced.opens == s.opens else induced.opens)
    audit = audit_initial_source(s, cone, probes) if probes else None
    return SpaceEmbedding(s, S, f, inj, initial, audit)
