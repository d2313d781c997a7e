"""Finite algebras of five hard-coded varieties.

Elements are plain ints indexing the carrier; ``names`` gives their display
form.  Tables live twice: as numpy arrays for vectorised axiom checks and as
nested lists for the scalar lookups done inside search loops.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BudgetExceeded,
    ComplementFailure,
    DistributivityFailure,
    MissingJoin,
    NotAPartialOrder,
    TensorAxiomFailure,
    ValidationError,
    VarietyMismatch,
    Verdict,
)

DEFAULT_HOM_CAP = 200_000
DEFAULT_SIZE_CAP = 4096


class Variety(str, Enum):
    SET = "set"
    SUPSL = "supsl"
    FRAME = "frame"
    CBALG = "cbalg"
    UQUANT = "uquant"

    def __str__(self) -> str:
        return self.value


LATTICE_VARIETIES = (Variety.SUPSL, Variety.FRAME, Variety.CBALG, Variety.UQUANT)
FINITE_FREE_VARIETIES = (Variety.SET, Variety.SUPSL, Variety.FRAME, Variety.CBALG)


# --------------------------------------------------------------------------
# table helpers


def _check_partial_order(le: np.ndarray, names: Sequence[str]) -> None:
    n = len(names)
    diag = np.flatnonzero(~le.diagonal())
    if diag.size:
        a = names[diag[0]]
        raise NotAPartialOrder(f"not reflexive at {a}", (a, a, a))
    anti = le & le.T & ~np.eye(n, dtype=bool)
    if anti.any():
        a, b = np.argwhere(anti)[0]
        raise NotAPartialOrder(
            f"not antisymmetric: {names[a]} <= {names[b]} <= {names[a]}",
            (names[a], names[b], names[a]),
        )
    for b in range(n):
        # a <= b and b <= c but not a <= c
        bad = le[:, b][:, None] & le[b][None, :] & ~le
        if bad.any():
            a, c = np.argwhere(bad)[0]
            raise NotAPartialOrder(
                f"not transitive: {names[a]} <= {names[b]} <= {names[c]}",
                (names[a], names[b], names[c]),
            )


def _bound_table(le: np.ndarray, names: Sequence[str], kind: str) -> np.ndarray:
    """Least upper bounds (``kind='join'``) from the order matrix.

    lub(a, b) is the unique c whose up-set equals up(a) & up(b).  Pass le.T
    for greatest lower bounds.
    """
    n = le.shape[0]
    packed = np.packbits(le, axis=1)
    lookup = {packed[c].tobytes(): c for c in range(n)}
    table = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        rows = packed[a][None, :] & packed
        for b in range(a, n):
            c = lookup.get(rows[b].tobytes())
            if c is None:
                raise MissingJoin(
                    f"{names[a]} and {names[b]} have no {kind}",
                    (names[a], names[b], None),
                )
            table[a, b] = table[b, a] = c
    return table


def _least(le: np.ndarray) -> int | None:
    hits = np.flatnonzero(le.all(axis=1))
    return int(hits[0]) if hits.size else None


def _greatest(le: np.ndarray) -> int | None:
    hits = np.flatnonzero(le.all(axis=0))
    return int(hits[0]) if hits.size else None


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


# --------------------------------------------------------------------------


class FiniteAlgebra:
    """A validated finite algebra.

    ``le`` is the order matrix (``le[a, b]`` means a <= b); it is absent for
    the ``set`` variety.  ``tensor``/``unit`` are only for ``uquant``.
    Everything is checked on construction and is read-only afterwards.
    """

    def __init__(
        self,
        variety: Variety | str,
        names: Iterable,
        le=None,
        *,
        tensor=None,
        unit: int | None = None,
        _join=None,
        _meet=None,
        _trusted: bool = False,
    ):
        variety = Variety(variety)
        names = tuple(str(x) for x in names)
        if not names:
            raise ValidationError("carrier must be non-empty")
        if len(set(names)) != len(names):
            dup = next(x for x in names if names.count(x) > 1)
            raise ValidationError(f"duplicate element name {dup!r}", (dup,))
        n = len(names)
        self.variety = variety
        self.names = names
        self.n = n
        self.index = {x: i for i, x in enumerate(names)}
        self.le = self.join = self.meet = self.tensor = self.compl = None
        self.bot = self.top = self.unit = None

        if variety is Variety.SET:
            if le is not None or tensor is not None:
                raise ValidationError("set-variety algebras carry no structure")
            self._lists()
            return

        if le is None:
            raise ValidationError(f"{variety} algebras need an order")
        le = np.asarray(le, dtype=bool)
        if le.shape != (n, n):
            raise ValidationError(f"order matrix has shape {le.shape}, expected {(n, n)}")
        if not _trusted:
            _check_partial_order(le, names)
        bot = _least(le)
        if bot is None:
            raise MissingJoin("no least element (empty join)", ("", "", None))
        join = np.asarray(_join) if _join is not None else _bound_table(le, names, "join")
        meet = np.asarray(_meet) if _meet is not None else _bound_table(le.T, names, "meet")
        self.le = _frozen(le)
        self.join = _frozen(join)
        self.meet = _frozen(meet)
        self.bot = bot
        self.top = _greatest(le)

        if variety in (Variety.FRAME, Variety.CBALG) and not _trusted:
            self._check_distributive()
        if variety is Variety.CBALG:
            self.compl = _frozen(self._derive_complement())
        if variety is Variety.UQUANT:
            if tensor is None or unit is None:
                raise ValidationError("uquant algebras need a tensor table and a unit")
            tensor = np.asarray(tensor, dtype=np.int64)
            if tensor.shape != (n, n) or tensor.min() < 0 or tensor.max() >= n:
                raise ValidationError("tensor table is malformed")
            self.tensor = _frozen(tensor)
            self.unit = int(unit)
            if not _trusted:
                self._check_quantale()
        elif tensor is not None or unit is not None:
            raise ValidationError(f"{variety} algebras take no tensor/unit")
        self._lists()

    # ------------------------------------------------------------------ checks

    def _check_distributive(self) -> None:
        j, m, nm = self.join, self.meet, self.names
        for a in range(self.n):
            lhs = m[a][j]  # a ^ (b v c)
            rhs = j[m[a][:, None], m[a][None, :]]  # (a^b) v (a^c)
            bad = lhs != rhs
            if bad.any():
                b, c = np.argwhere(bad)[0]
                raise DistributivityFailure(
                    f"{nm[a]} ^ ({nm[b]} v {nm[c]}) fails to distribute", (nm[a], nm[b], nm[c])
                )

    def _derive_complement(self) -> np.ndarray:
        cand = (self.join == self.top) & (self.meet == self.bot)
        missing = np.flatnonzero(~cand.any(axis=1))
        if missing.size:
            a = self.names[missing[0]]
            raise ComplementFailure(f"{a} has no complement", (a, None, None))
        return cand.argmax(axis=1)

    def _check_quantale(self) -> None:
        t, j, nm, n = self.tensor, self.join, self.names, self.n
        for a in range(n):
            lhs = t[t[a]]  # (a*b)*c  indexed [b, c]
            rhs = t[a][t]  # a*(b*c)
            bad = lhs != rhs
            if bad.any():
                b, c = np.argwhere(bad)[0]
                raise TensorAxiomFailure("tensor not associative", (nm[a], nm[b], nm[c]))
            left = t[a][j] != j[t[a][:, None], t[a][None, :]]
            if left.any():
                b, c = np.argwhere(left)[0]
                raise TensorAxiomFailure("tensor fails left distributivity", (nm[a], nm[b], nm[c]))
            right = t[:, a][j] != j[t[:, a][:, None], t[:, a][None, :]]
            if right.any():
                b, c = np.argwhere(right)[0]
                raise TensorAxiomFailure("tensor fails right distributivity", (nm[b], nm[c], nm[a]))
            if t[a, self.bot] != self.bot or t[self.bot, a] != self.bot:
                raise TensorAxiomFailure("bottom is not absorbing", (nm[a], nm[self.bot], None))
            if t[a, self.unit] != a or t[self.unit, a] != a:
                raise TensorAxiomFailure("unit is not two-sided", (nm[a], nm[self.unit], None))

    def _lists(self) -> None:
        self._j = self.join.tolist() if self.join is not None else None
        self._m = self.meet.tolist() if self.meet is not None else None
        self._t = self.tensor.tolist() if self.tensor is not None else None
        self._c = self.compl.tolist() if self.compl is not None else None
        self._le = self.le.tolist() if self.le is not None else None

    # ------------------------------------------------------------- signature

    def constants(self) -> list[tuple[str, int]]:
        v = self.variety
        if v is Variety.SET:
            return []
        if v is Variety.SUPSL:
            return [("bot", self.bot)]
        if v is Variety.UQUANT:
            return [("bot", self.bot), ("unit", self.unit)]
        return [("bot", self.bot), ("top", self.top)]

    def unary_tables(self) -> list[tuple[str, list]]:
        return [("compl", self._c)] if self.variety is Variety.CBALG else []

    def binary_tables(self) -> list[tuple[str, list, bool]]:
        """(name, table, commutative) for each binary operation."""
        v = self.variety
        if v is Variety.SET:
            return []
        ops = [("join", self._j, True)]
        if v in (Variety.FRAME, Variety.CBALG):
            ops.append(("meet", self._m, True))
        if v is Variety.UQUANT:
            ops.append(("tensor", self._t, False))
        return ops

    def signature(self):
        """Operations as callables, the form ``closure`` and friends consume."""
        consts = self.constants()
        unary = [(nm, tab.__getitem__) for nm, tab in self.unary_tables()]
        binary = [
            (nm, (lambda tab: lambda x, y: tab[x][y])(tab), comm)
            for nm, tab, comm in self.binary_tables()
        ]
        return consts, unary, binary

    # ---------------------------------------------------------- conveniences

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"FiniteAlgebra({self.variety}, {list(self.names)})"

    def el(self, name: str) -> int:
        return self.index[name]

    def leq(self, a: int, b: int) -> bool:
        return self._le[a][b]

    def join_all(self, items: Iterable[int]) -> int:
        acc = self.bot
        for x in items:
            acc = self._j[acc][x]
        return acc

    def meet_all(self, items: Iterable[int]) -> int:
        acc = self.top
        for x in items:
            acc = self._m[acc][x]
        return acc

    def mul(self, a: int, b: int) -> int:
        return self._t[a][b]

    @property
    def is_integral(self) -> bool:
        return self.variety is Variety.UQUANT and self.unit == self.top

    @property
    def is_idempotent(self) -> bool:
        return self.variety is Variety.UQUANT and all(self._t[a][a] == a for a in range(self.n))

    def induced(self, members: Sequence[int]) -> "FiniteAlgebra":
        """The algebra carried by a closed subset, in the given member order."""
        members = list(members)
        names = [self.names[i] for i in members]
        if self.variety is Variety.SET:
            return FiniteAlgebra(Variety.SET, names)
        idx = np.asarray(members)
        le = self.le[np.ix_(idx, idx)]
        tensor = unit = None
        if self.variety is Variety.UQUANT:
            pos = {x: k for k, x in enumerate(members)}
            tensor = [[pos[self._t[x][y]] for y in members] for x in members]
            unit = pos[self.unit]
        return FiniteAlgebra(self.variety, names, le, tensor=tensor, unit=unit)

    def covers(self) -> list[tuple[int, int]]:
        """Hasse-diagram pairs (a, b) with a < b and nothing strictly between."""
        if self.le is None:
            return []
        lt = self.le & ~np.eye(self.n, dtype=bool)
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        cov = lt & ~between
        return [(int(a), int(b)) for a, b in np.argwhere(cov)]


def validate_algebra(
    variety: Variety | str,
    names: Sequence[str],
    le_pairs: Iterable[tuple[str, str]] = (),
    tensor: dict | None = None,
    unit: str | None = None,
) -> FiniteAlgebra:
    """Build an algebra from named data; the order is the reflexive-transitive
    closure of ``le_pairs``."""
    variety = Variety(variety)
    names = [str(x) for x in names]
    if not names:
        raise ValidationError("carrier must be non-empty")
    idx = {x: i for i, x in enumerate(names)}
    if variety is Variety.SET:
        if list(le_pairs) or tensor or unit:
            raise ValidationError("set-variety algebras carry no structure")
        return FiniteAlgebra(variety, names)
    n = len(names)
    le = np.eye(n, dtype=bool)
    for a, b in le_pairs:
        if a not in idx or b not in idx:
            raise ValidationError(f"unknown element in order pair ({a}, {b})", (a, b))
        le[idx[a], idx[b]] = True
    # Warshall closure
    for k in range(n):
        le |= le[:, k][:, None] & le[k][None, :]
    tab = None
    u = None
    if variety is Variety.UQUANT:
        if tensor is None or unit is None:
            raise ValidationError("uquant algebras need tensor and unit")
        tab = np.full((n, n), -1, dtype=np.int64)
        for a, row in tensor.items():
            for b, c in row.items():
                tab[idx[a], idx[b]] = idx[c]
        if (tab < 0).any():
            a, b = np.argwhere(tab < 0)[0]
            raise ValidationError("tensor table incomplete", (names[a], names[b]))
        u = idx[unit]
    return FiniteAlgebra(variety, names, le, tensor=tab, unit=u)


# --------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True, eq=False)
class Hom:
    """A map between carriers, stored as an array indexed by source ids."""

    source: FiniteAlgebra
    target: FiniteAlgebra
    map: tuple

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Hom)
            and self.source is other.source
            and self.target is other.target
            and self.map == other.map
        )

    def __hash__(self) -> int:
        return hash((id(self.source), id(self.target), self.map))

    def then(self, other: "Hom") -> "Hom":
        """``other`` after ``self``."""
        return Hom(self.source, other.target, tuple(other.map[x] for x in self.map))

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.n

    def image(self) -> list[int]:
        return sorted(set(self.map))

    def named(self) -> dict:
        return {self.source.names[i]: self.target.names[y] for i, y in enumerate(self.map)}


def identity(A: FiniteAlgebra) -> Hom:
    return Hom(A, A, tuple(range(A.n)))


def _same_variety(A: FiniteAlgebra, B: FiniteAlgebra) -> None:
    if A.variety is not B.variety:
        raise VarietyMismatch(f"{A.variety} vs {B.variety}")


def is_homomorphism(h: Hom) -> Verdict:
    A, B = h.source, h.target
    _same_variety(A, B)
    if len(h.map) != A.n or any(not 0 <= y < B.n for y in h.map):
        return Verdict(False, None, "map is not a total function between carriers")
    if A.variety is Variety.SET:
        return Verdict(True)
    m = np.asarray(h.map)
    for (name, ca), (_, cb) in zip(A.constants(), B.constants()):
        if m[ca] != cb:
            return Verdict(False, (name,), f"{name} not preserved")
    if A.variety is Variety.CBALG:
        bad = np.flatnonzero(m[A.compl] != B.compl[m])
        if bad.size:
            return Verdict(False, ("compl", A.names[bad[0]]), "complement not preserved")
    tabs = [("join", A.join, B.join), ("meet", A.meet, B.meet), ("tensor", A.tensor, B.tensor)]
    wanted = {nm for nm, _, _ in A.binary_tables()}
    for name, ta, tb in tabs:
        if name not in wanted:
            continue
        bad = m[ta] != tb[m[:, None], m[None, :]]
        if bad.any():
            a, b = np.argwhere(bad)[0]
            return Verdict(False, (name, A.names[a], A.names[b]), f"{name} not preserved")
    return Verdict(True)


def closure(signature, seed: Iterable, cap: int | None = None) -> list:
    """Least subset containing ``seed`` closed under ``signature``.

    Works for any hashable element representation; returns members in
    discovery order.
    """
    consts, unary, binary = signature
    members: list = []
    seen: set = set()

    def add(x):
        if x not in seen:
            seen.add(x)
            members.append(x)
            if cap is not None and len(members) > cap:
                raise BudgetExceeded(f"closure exceeded {cap} elements")

    for _, c in consts:
        add(c)
    for s in seed:
        add(s)
    i = 0
    while i < len(members):
        x = members[i]
        i += 1
        for _, f in unary:
            add(f(x))
        for _, f, comm in binary:
            for k in range(i):
                y = members[k]
                add(f(x, y))
                if not comm:
                    add(f(y, x))
    return members


def closure_witness(signature, members: Iterable):
    """First operation instance leading outside ``members``, or None."""
    consts, unary, binary = signature
    pool = list(members)
    inside = set(pool)
    for name, c in consts:
        if c not in inside:
            return (name,)
    for name, f in unary:
        for x in pool:
            if f(x) not in inside:
                return (name, x)
    for name, f, _ in binary:
        for x in pool:
            for y in pool:
                if f(x, y) not in inside:
                    return (name, x, y)
    return None


def join_irreducible_ids(A: FiniteAlgebra) -> list[int]:
    if A.variety is Variety.SET:
        raise VarietyMismatch("join-irreducibles need an order")
    j = A.join
    out = []
    for x in range(A.n):
        if x == A.bot:
            continue
        split = (j == x) & (np.arange(A.n)[:, None] != x) & (np.arange(A.n)[None, :] != x)
        if not split.any():
            out.append(x)
    return out


def generating_set(A: FiniteAlgebra) -> list[int]:
    """Greedy small generating set.

    Repeatedly adds the candidate whose addition closes up the most new
    elements (ties to the smallest id).  Join-irreducibles always generate,
    so only they are tried for ordered varieties.
    """
    if A.variety is Variety.SET:
        return list(range(A.n))
    sig = A.signature()
    candidates = join_irreducible_ids(A)
    gens: list[int] = []
    current = set(closure(sig, []))
    while len(current) < A.n:
        best, best_size = None, -1
        for c in candidates:
            if c in current:
                continue
            size = len(closure(sig, list(current) + [c]))
            if size > best_size:
                best, best_size = c, size
        gens.append(best)
        current = set(closure(sig, list(current) + [best]))
    return gens


def _propagate(A: FiniteAlgebra, B: FiniteAlgebra, m: list, order: list, pending) -> bool:
    """Extend the partial map ``m`` along all operations; False on conflict."""
    unary = [(fa, fb) for (_, fa), (_, fb) in zip(A.unary_tables(), B.unary_tables())]
    binary = [(ta, tb, c) for (_, ta, c), (_, tb, _) in zip(A.binary_tables(), B.binary_tables())]
    i = len(order)
    queue = list(pending)
    while True:
        for x, y in queue:
            mx = m[x]
            if mx == -1:
                m[x] = y
                order.append(x)
            elif mx != y:
                return False
        if i >= len(order):
            return True
        x = order[i]
        i += 1
        mx = m[x]
        queue = []
        for fa, fb in unary:
            queue.append((fa[x], fb[mx]))
        for ta, tb, comm in binary:
            ra, rb = ta[x], tb[mx]
            for k in range(i):
                z = order[k]
                queue.append((ra[z], rb[m[z]]))
                if not comm:
                    queue.append((ta[z][x], tb[m[z]][mx]))


def enumerate_homs(A: FiniteAlgebra, B: FiniteAlgebra, cap: int = DEFAULT_HOM_CAP) -> list[Hom]:
    """All homomorphisms A -> B, sorted lexicographically by their map arrays."""
    _same_variety(A, B)
    if A.variety is Variety.SET:
        if B.n ** A.n > cap:
            raise BudgetExceeded(f"{B.n}^{A.n} maps exceed cap {cap}")
        return [Hom(A, B, m) for m in itertools.product(range(B.n), repeat=A.n)]
    gens = generating_set(A)
    m0 = [-1] * A.n
    order0: list[int] = []
    pairs = [(ca, cb) for (_, ca), (_, cb) in zip(A.constants(), B.constants())]
    if not _propagate(A, B, m0, order0, pairs):
        return []
    found: list[tuple] = []
    tried = 0

    def rec(k: int, m: list, order: list) -> None:
        nonlocal tried
        while k < len(gens) and m[gens[k]] != -1:
            k += 1
        if k == len(gens):
            found.append(tuple(m))
            return
        g = gens[k]
        for y in range(B.n):
            tried += 1
            if tried > cap:
                raise BudgetExceeded(f"hom search exceeded {cap} branches")
            m2, order2 = m[:], order[:]
            if _propagate(A, B, m2, order2, [(g, y)]):
                rec(k + 1, m2, order2)

    rec(0, m0, order0)
    found.sort()
    homs = [Hom(A, B, m) for m in found]
    for h in homs:
        assert is_homomorphism(h), "propagation produced a non-homomorphism"
    return homs


def naive_homs(A: FiniteAlgebra, B: FiniteAlgebra) -> list[Hom]:
    """Filter all |B|^|A| maps through is_homomorphism (test oracle)."""
    _same_variety(A, B)
    out = []
    for m in itertools.product(range(B.n), repeat=A.n):
        h = Hom(A, B, m)
        if is_homomorphism(h):
            out.append(h)
    return out


# --------------------------------------------------------------------------
# subalgebras


@dataclass(frozen=True, eq=False)
class Subalgebra:
    parent: FiniteAlgebra
    members: tuple
    algebra: FiniteAlgebra

    def inclusion(self) -> Hom:
        return Hom(self.algebra, self.parent, self.members)


def generated_subalgebra(parent: FiniteAlgebra, seed: Iterable[int]) -> Subalgebra:
    seed = list(seed)
    if parent.variety is Variety.SET:
        members = sorted(set(seed))
        if not members:
            raise ValidationError("the empty set is not a set-variety algebra here")
    else:
        members = sorted(closure(parent.signature(), seed))
    return Subalgebra(parent, tuple(members), parent.induced(members))


# --------------------------------------------------------------------------
# products and powers


def _tuple_algebra(variety: Variety, factors: Sequence[FiniteAlgebra], names=None):
    """Componentwise algebra on the cartesian product of ``factors``.

    Elements are enumerated in itertools.product order, which is mixed-radix
    order with the first coordinate most significant.
    """
    sizes = [F.n for F in factors]
    total = int(np.prod(sizes)) if sizes else 1
    elements = list(itertools.product(*[range(s) for s in sizes]))
    if names is None:
        names = ["(" + ",".join(F.names[v] for F, v in zip(factors, t)) + ")" for t in elements]
    if variety is Variety.SET:
        return FiniteAlgebra(variety, names), elements
    E = np.asarray(elements, dtype=np.int64).reshape(total, len(factors))
    radix = np.ones(len(factors), dtype=np.int64)
    for k in range(len(factors) - 2, -1, -1):
        radix[k] = radix[k + 1] * sizes[k + 1]

    def table(pick):
        out = np.zeros((total, total), dtype=np.int64)
        for k, F in enumerate(factors):
            col = E[:, k]
            out += pick(F)[col[:, None], col[None, :]] * radix[k]
        return out

    le = np.ones((total, total), dtype=bool)
    for k, F in enumerate(factors):
        col = E[:, k]
        le &= F.le[col[:, None], col[None, :]]
    join = table(lambda F: F.join)
    meet = table(lambda F: F.meet)
    tensor = unit = None
    if variety is Variety.UQUANT:
        tensor = table(lambda F: F.tensor)
        unit = int(sum(F.unit * r for F, r in zip(factors, radix)))
    alg = FiniteAlgebra(
        variety, names, le, tensor=tensor, unit=unit, _join=join, _meet=meet, _trusted=True
    )
    return alg, elements


@dataclass(frozen=True, eq=False)
class ProductAlgebra:
    algebra: FiniteAlgebra
    factors: tuple
    elements: tuple

    @property
    def projections(self) -> list[Hom]:
        return [
            Hom(self.algebra, F, tuple(t[k] for t in self.elements))
            for k, F in enumerate(self.factors)
        ]

    def index(self, t: tuple) -> int:
        idx = 0
        for F, v in zip(self.factors, t):
            idx = idx * F.n + v
        return idx

    def mediate(self, homs: Sequence[Hom]) -> Hom:
        """The unique map into the product whose projections are ``homs``."""
        if len(homs) != len(self.factors):
            raise ValueError("one hom per factor required")
        src = homs[0].source if homs else None
        if src is None:
            raise ValueError("empty product mediation needs an explicit source")
        return Hom(src, self.algebra, tuple(self.index(tuple(h.map[x] for h in homs)) for x in range(src.n)))


def product_algebras(
    factors: Sequence[FiniteAlgebra], variety: Variety | str | None = None, cap: int = DEFAULT_SIZE_CAP
) -> ProductAlgebra:
    factors = tuple(factors)
    if not factors and variety is None:
        raise ValueError("an empty product needs its variety")
    v = Variety(variety) if variety is not None else factors[0].variety
    for F in factors:
        if F.variety is not v:
            raise VarietyMismatch(f"{F.variety} factor in a {v} product")
    size = int(np.prod([F.n for F in factors])) if factors else 1
    if size > cap:
        raise BudgetExceeded(f"product of size {size} exceeds cap {cap}")
    if not factors:
        alg = _terminal(v)
        return ProductAlgebra(alg, (), ((),))
    alg, elements = _tuple_algebra(v, factors)
    return ProductAlgebra(alg, factors, tuple(elements))


def _terminal(v: Variety) -> FiniteAlgebra:
    if v is Variety.SET:
        return FiniteAlgebra(v, ["()"])
    if v is Variety.UQUANT:
        return FiniteAlgebra(v, ["()"], [[True]], tensor=[[0]], unit=0)
    return FiniteAlgebra(v, ["()"], [[True]])


@dataclass(frozen=True, eq=False)
class PowerAlgebra:
    """L^X with pointwise structure; elements are tuples indexed by X."""

    L: FiniteAlgebra
    points: tuple
    algebra: FiniteAlgebra
    elements: tuple

    def index(self, alpha: Sequence[int]) -> int:
        idx = 0
        for v in alpha:
            idx = idx * self.L.n + v
        return idx

    def projection(self, x: int) -> Hom:
        return Hom(self.algebra, self.L, tuple(t[x] for t in self.elements))

    def precompose(self, f: Sequence[int], source: "PowerAlgebra") -> Hom:
        """(P_L f)^-: self -> source, alpha |-> alpha o f, for f: source.points -> self.points."""
        return Hom(
            self.algebra,
            source.algebra,
            tuple(source.index(tuple(t[f[x]] for x in range(len(source.points)))) for t in self.elements),
        )


def power_algebra(L: FiniteAlgebra, X, cap: int = DEFAULT_SIZE_CAP) -> PowerAlgebra:
    points = tuple(range(X)) if isinstance(X, int) else tuple(X)
    size = L.n ** len(points)
    if size > cap:
        raise BudgetExceeded(f"|L|^|X| = {size} exceeds cap {cap}")
    if not points:
        alg = _terminal(L.variety)
        return PowerAlgebra(L, points, alg, ((),))
    alg, elements = _tuple_algebra(L.variety, [L] * len(points))
    return PowerAlgebra(L, points, alg, tuple(elements))


# --------------------------------------------------------------------------
# pointwise operations on L^X without materialising it


class PointwiseOps:
    """Operations of L^n on tuples; used where L^X is too large to tabulate."""

    def __init__(self, L: FiniteAlgebra, n: int):
        self.L = L
        self.n = n
        self.variety = L.variety

    def const(self, c: int) -> tuple:
        return (c,) * self.n

    @property
    def bot(self) -> tuple:
        return self.const(self.L.bot)

    @property
    def top(self) -> tuple:
        return self.const(self.L.top)

    def join(self, x, y):
        j = self.L._j
        return tuple(j[a][b] for a, b in zip(x, y))

    def meet(self, x, y):
        m = self.L._m
        return tuple(m[a][b] for a, b in zip(x, y))

    def join_all(self, items):
        acc = self.bot
        for x in items:
            acc = self.join(acc, x)
        return acc

    def meet_all(self, items):
        acc = self.top
        for x in items:
            acc = self.meet(acc, x)
        return acc

    def signature(self):
        L = self.L
        consts = [(nm, self.const(c)) for nm, c in L.constants()]
        unary = [
            (nm, (lambda tab: lambda x: tuple(tab[a] for a in x))(tab)) for nm, tab in L.unary_tables()
        ]
        binary = [
            (nm, (lambda tab: lambda x, y: tuple(tab[a][b] for a, b in zip(x, y)))(tab), comm)
            for nm, tab, comm in L.binary_tables()
        ]
        return consts, unary, binary


def pointwise_subalgebra(L: FiniteAlgebra, members: Sequence[tuple], names=None) -> FiniteAlgebra:
    """Algebra carried by a closed family of functions X -> L, in the given order."""
    members = list(members)
    if names is None:
        names = ["[" + ",".join(L.names[v] for v in t) + "]" for t in members]
    if L.variety is Variety.SET:
        return FiniteAlgebra(Variety.SET, names)
    k = len(members)
    if members and len(members[0]):
        E = np.asarray(members, dtype=np.int64)
        le = np.all(L.le[E[:, None, :], E[None, :, :]], axis=2)
    else:
        le = np.ones((k, k), dtype=bool)
    tensor = unit = None
    if L.variety is Variety.UQUANT:
        pos = {t: i for i, t in enumerate(members)}
        ops = PointwiseOps(L, len(members[0]))
        tab = L._t
        tensor = [[pos[tuple(tab[a][b] for a, b in zip(x, y))] for y in members] for x in members]
        unit = pos[ops.const(L.unit)]
    return FiniteAlgebra(L.variety, names, le, tensor=tensor, unit=unit)


# --------------------------------------------------------------------------
# Birkhoff duality for finite frames


@dataclass(frozen=True, eq=False)
class Poset:
    names: tuple
    le: np.ndarray
    elements: tuple = ()

    @property
    def n(self) -> int:
        return len(self.names)


def join_irreducibles(F: FiniteAlgebra) -> Poset:
    if F.variety is not Variety.FRAME and F.variety is not Variety.CBALG:
        raise VarietyMismatch(f"join_irreducibles expects a frame, got {F.variety}")
    ids = join_irreducible_ids(F)
    idx = np.asarray(ids, dtype=np.int64)
    le = F.le[np.ix_(idx, idx)] if ids else np.zeros((0, 0), dtype=bool)
    return Poset(tuple(F.names[i] for i in ids), le, tuple(ids))


def product_poset(posets: Sequence[Poset]) -> tuple[Poset, list[tuple]]:
    """Componentwise order on the cartesian product; returns index tuples too."""
    tuples = list(itertools.product(*[range(P.n) for P in posets]))
    k = len(tuples)
    le = np.ones((k, k), dtype=bool)
    if tuples and posets:
        T = np.asarray(tuples, dtype=np.int64)
        for c, P in enumerate(posets):
            le &= P.le[T[:, c][:, None], T[:, c][None, :]]
    names = tuple("(" + ",".join(P.names[v] for P, v in zip(posets, t)) + ")" for t in tuples)
    return Poset(names, le), tuples


def downsets(P: Poset, cap: int = DEFAULT_SIZE_CAP) -> list[int]:
    """All down-closed subsets of P as bitmasks, sorted by (size, members)."""
    n = P.n
    below = [0] * n
    for x in range(n):
        for y in range(n):
            if y != x and P.le[y, x]:
                below[x] |= 1 << y
    # linear extension: fewer strict predecessors first
    order = sorted(range(n), key=lambda x: bin(below[x]).count("1"))
    out: list[int] = []

    def rec(k: int, mask: int) -> None:
        if k == n:
            out.append(mask)
            if len(out) > cap:
                raise BudgetExceeded(f"more than {cap} down-sets")
            return
        x = order[k]
        rec(k + 1, mask)
        if below[x] & mask == below[x]:
            rec(k + 1, mask | (1 << x))

    rec(0, 0)
    out.sort(key=lambda m: (bin(m).count("1"), [i for i in range(n) if m >> i & 1]))
    return out


@dataclass(frozen=True, eq=False)
class DownsetFrame:
    poset: Poset
    algebra: FiniteAlgebra
    masks: tuple

    def principal(self, p: int) -> int:
        """Id of the principal down-set of poset element p."""
        mask = 0
        for y in range(self.poset.n):
            if self.poset.le[y, p]:
                mask |= 1 << y
        return self.masks.index(mask)


def downset_frame(P: Poset, cap: int = DEFAULT_SIZE_CAP) -> DownsetFrame:
    masks = downsets(P, cap)
    pos = {m: i for i, m in enumerate(masks)}
    k = len(masks)
    names = ["{" + ",".join(P.names[i] for i in range(P.n) if m >> i & 1) + "}" for m in masks]
    le = np.array([[(a & b) == a for b in masks] for a in masks], dtype=bool)
    join = np.array([[pos[a | b] for b in masks] for a in masks], dtype=np.int64)
    meet = np.array([[pos[a & b] for b in masks] for a in masks], dtype=np.int64)
    alg = FiniteAlgebra(Variety.FRAME, names, le, _join=join, _meet=meet, _trusted=k > 64)
    return DownsetFrame(P, alg, tuple(masks))


def birkhoff_isomorphism(F: FiniteAlgebra) -> tuple[Hom, DownsetFrame]:
    """Explicit F -> Down(J(F)), a |-> {j <= a}; verified to be an order isomorphism."""
    J = join_irreducibles(F)
    D = downset_frame(J)
    pos = {m: i for i, m in enumerate(D.masks)}
    image = []
    for a in range(F.n):
        mask = 0
        for k, j in enumerate(J.elements):
            if F.le[j, a]:
                mask |= 1 << k
        image.append(pos[mask])
    frame_view = F if F.variety is Variety.FRAME else FiniteAlgebra(
        Variety.FRAME, F.names, F.le, _join=F.join, _meet=F.meet, _trusted=True
    )
    h = Hom(frame_view, D.algebra, tuple(image))
    if not (h.is_injective() and h.is_surjective() and is_homomorphism(h)):
        raise AssertionError("Birkhoff map is not an isomorphism")
    return h, D
