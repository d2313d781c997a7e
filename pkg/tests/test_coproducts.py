import itertools
import random

import pytest

from affsys.algebra import PointwiseOps, Variety, enumerate_homs, is_homomorphism, join_irreducibles
from affsys.catalog import boolean, chain, diamond, lukasiewicz, two
from affsys.coproducts import coproduct, mediate, mediate_values, verify_coproduct_universal
from affsys.errors import BudgetExceeded, CoconeShapeMismatch, UnsupportedVariety, VarietyMismatch
from affsys.verify import gen_algebra


def brute_force_downsets(sizes):
    """Down-sets of a product of chains, by testing every subset."""
    elems = list(itertools.product(*[range(k) for k in sizes]))
    count = 0
    for mask in range(1 << len(elems)):
        members = {elems[i] for i in range(len(elems)) if mask >> i & 1}
        if all(
            tuple(e[:j] + (e[j] - 1,) + e[j + 1 :]) in members for e in members for j in range(len(e)) if e[j] > 0
        ):
            count += 1
    return count


def test_brute_force_oracle_small():
    assert brute_force_downsets([2]) == 3
    assert brute_force_downsets([2, 2]) == 6


@pytest.mark.parametrize("n, size", [(1, 3), (2, 6), (3, 20), (4, 168)])
def test_frame_coproduct_of_three_chains(n, size):
    C = coproduct("frame", [chain(3)] * n)
    assert C.algebra.n == size
    if n <= 3:
        assert brute_force_downsets([2] * n) == size


def test_supsl_coproduct_is_product():
    C = coproduct("supsl", [chain(2, "supsl"), chain(2, "supsl")])
    assert C.algebra.n == 4
    assert [h.map for h in C.injections] == [(0, 2), (0, 1)] or len({h.map for h in C.injections}) == 2


def test_cbalg_and_set_coproducts():
    assert coproduct("cbalg", [diamond(), diamond()]).algebra.n == 16
    assert coproduct("cbalg", [two("cbalg"), diamond()]).algebra.n == 4
    S = coproduct("set", [two("set"), two("set"), two("set")])
    assert S.algebra.n == 6


def test_unsupported_and_mismatch():
    with pytest.raises(UnsupportedVariety):
        coproduct("uquant", [lukasiewicz(3)])
    with pytest.raises(VarietyMismatch):
        coproduct("frame", [chain(2, "supsl")])
    with pytest.raises(UnsupportedVariety):
        coproduct("set", [])
    with pytest.raises(BudgetExceeded):
        coproduct("frame", [chain(3)] * 6)


def test_injections_are_homs():
    for v, F in [("frame", diamond("frame")), ("supsl", chain(3, "supsl")), ("cbalg", boolean(2))]:
        C = coproduct(v, [F, F])
        for mu in C.injections:
            assert is_homomorphism(mu)


@pytest.mark.parametrize("variety", ["set", "supsl", "frame", "cbalg"])
def test_universal_property_audit(variety):
    rng = random.Random(f"coprod:{variety}")
    for _ in range(4):
        factors = [gen_algebra(variety, rng, 4) for _ in range(2)]
        C = coproduct(variety, factors)
        audit = verify_coproduct_universal(C, [gen_algebra(variety, rng, 3), two(variety)])
        assert audit.ok, audit.failures[:1]


def test_mediate_shape_errors():
    C = coproduct("frame", [chain(3), chain(3)])
    leg = enumerate_homs(chain(3), two())[0]
    with pytest.raises(CoconeShapeMismatch):
        mediate(C, [leg])
    with pytest.raises(CoconeShapeMismatch):
        mediate(C, [], None)


def test_points_of_coproduct_are_tuples_of_points():
    # the lazy coding used for powers of the Sierpinski system
    for F in (chain(3), diamond("frame")):
        C = coproduct("frame", [F, F])
        n = len(enumerate_homs(F, two()))
        assert len(enumerate_homs(C.algebra, two())) == n * n


def test_mediate_values_pointwise():
    C = coproduct("frame", [chain(3), chain(3)])
    ops = PointwiseOps(two(), 2)
    images = [[(0, 0), (0, 1), (1, 1)], [(0, 0), (1, 0), (1, 1)]]
    vals = mediate_values(C, images, ops)
    for i, mu in enumerate(C.injections):
        assert [vals[mu.map[a]] for a in range(3)] == images[i]
    assert join_irreducibles(chain(3)).n == 2
    assert Variety.FRAME is C.variety
