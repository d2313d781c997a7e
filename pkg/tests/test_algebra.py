import itertools
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from affsys.algebra import (
    FiniteAlgebra,
    Hom,
    Variety,
    birkhoff_isomorphism,
    closure,
    downset_frame,
    downsets,
    enumerate_homs,
    generated_subalgebra,
    identity,
    is_homomorphism,
    join_irreducible_ids,
    join_irreducibles,
    naive_homs,
    pointwise_subalgebra,
    power_algebra,
    product_algebras,
    product_poset,
    validate_algebra,
)
from affsys.catalog import BUILTINS, boolean, chain, diamond, lukasiewicz, two
from affsys.errors import (
    ComplementFailure,
    DistributivityFailure,
    MissingJoin,
    NotAPartialOrder,
    TensorAxiomFailure,
    ValidationError,
)
from affsys.verify import gen_algebra

from conftest import QUANTALES, small_algebras


# ---------------------------------------------------------------- validation


def test_three_chain_from_cover_pairs():
    A = validate_algebra("frame", ["bot", "c", "top"], [("bot", "c"), ("c", "top")])
    assert A.leq(A.el("bot"), A.el("top"))
    assert A.bot == 0 and A.top == 2
    assert A.join[1, 2] == 2 and A.meet[1, 2] == 1


def test_order_cycle_is_rejected_with_witness():
    with pytest.raises(NotAPartialOrder) as e:
        validate_algebra("frame", ["a", "b"], [("a", "b"), ("b", "a")])
    assert set(e.value.witness) <= {"a", "b"}


def test_missing_join_is_reported():
    # two maximal elements and no top
    with pytest.raises(MissingJoin):
        validate_algebra("supsl", ["0", "a", "b"], [("0", "a"), ("0", "b")])


def test_pentagon_is_not_a_frame():
    pairs = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")]
    with pytest.raises(DistributivityFailure):
        validate_algebra("frame", ["0", "a", "b", "c", "1"], pairs)
    # but it is a sup-lattice
    assert validate_algebra("supsl", ["0", "a", "b", "c", "1"], pairs).n == 5


def test_diamond_m3_is_not_distributive():
    pairs = [("0", x) for x in "abc"] + [(x, "1") for x in "abc"]
    with pytest.raises(DistributivityFailure):
        validate_algebra("frame", ["0", "a", "b", "c", "1"], pairs)


def test_three_chain_has_no_complement():
    with pytest.raises(ComplementFailure):
        chain(3, "cbalg")


def test_bad_tensor_unit_is_rejected():
    with pytest.raises(TensorAxiomFailure):
        FiniteAlgebra("uquant", ["0", "1"], np.triu(np.ones((2, 2), bool)), tensor=[[0, 0], [0, 1]], unit=0)


def test_incomplete_tensor_table():
    with pytest.raises(ValidationError):
        validate_algebra("uquant", ["0", "1"], [("0", "1")], {"0": {"0": "0"}}, "1")


def test_builtins_are_valid():
    for name, make in BUILTINS.items():
        A = make(Variety.FRAME)
        assert A.n >= 2, name


def test_catalog_quantale_facts():
    L = lukasiewicz(3)
    assert L.is_integral and not L.is_idempotent
    half = L.el("1/2")
    assert L.mul(half, half) == L.bot
    assert chain(3, "uquant").is_idempotent


def test_cbalg_complements():
    D = diamond()
    a, b = D.el("a"), D.el("b")
    assert D.compl[a] == b and D.compl[D.bot] == D.top


# ---------------------------------------------------------------- homs


def test_hom_counts_frozen():
    # counts from the naive filter over all maps
    assert [h.map for h in enumerate_homs(chain(3), two())] == [(0, 0, 1), (0, 1, 1)]
    assert len(enumerate_homs(chain(3), chain(3))) == 3
    assert len(enumerate_homs(chain(2, "supsl"), diamond("supsl"))) == 4
    assert len(enumerate_homs(two("set"), FiniteAlgebra("set", "abc"))) == 9
    assert len(enumerate_homs(diamond(), two("cbalg"))) == 2
    assert len(enumerate_homs(diamond("frame"), two())) == 2


def test_one_element_algebra_has_no_points_in_two():
    one = FiniteAlgebra("frame", ["*"], [[True]])
    assert enumerate_homs(one, two()) == []
    assert len(enumerate_homs(two(), one)) == 1


@pytest.mark.parametrize("variety", ["set", "supsl", "frame", "cbalg"])
def test_pruned_equals_naive(variety):
    algs = small_algebras(variety, 6, 5)
    for A, B in itertools.product(algs, repeat=2):
        pruned = [h.map for h in enumerate_homs(A, B)]
        assert pruned == sorted(h.map for h in naive_homs(A, B))


def test_pruned_equals_naive_quantales():
    for A, B in itertools.product(QUANTALES[:5], repeat=2):
        assert [h.map for h in enumerate_homs(A, B)] == sorted(h.map for h in naive_homs(A, B))


@given(st.integers(0, 10_000), st.sampled_from(["supsl", "frame", "cbalg", "set"]))
def test_homs_compose(seed, variety):
    rng = random.Random(seed)
    A, B, C = (gen_algebra(variety, rng, 4) for _ in range(3))
    for f in enumerate_homs(A, B)[:4]:
        for g in enumerate_homs(B, C)[:4]:
            assert is_homomorphism(f.then(g))
    assert is_homomorphism(identity(A))


def test_is_homomorphism_witness():
    c3 = chain(3)
    v = is_homomorphism(Hom(c3, two(), (0, 1, 0)))
    assert not v and v.witness is not None


# ---------------------------------------------------------------- constructions


def test_product_of_two_chains_is_diamond():
    P = product_algebras([chain(2, "supsl"), chain(2, "supsl")])
    assert P.algebra.n == 4
    # number of elements above each element: bot, two atoms, top
    assert sorted(P.algebra.le.sum(axis=1).tolist()) == [1, 2, 2, 4]
    for pr in P.projections:
        assert is_homomorphism(pr)


def test_power_algebra_sizes():
    assert power_algebra(lukasiewicz(3), 3).algebra.n == 27
    assert power_algebra(two(), 0).algebra.n == 1


def test_sierpinski_generated_subalgebra_lukasiewicz():
    L = lukasiewicz(3)
    from affsys.algebra import PointwiseOps

    members = closure(PointwiseOps(L, 3).signature(), [(0, 1, 2)])
    assert sorted(members) == [(0, 0, 0), (0, 0, 2), (0, 1, 2), (2, 2, 2)]
    sub = pointwise_subalgebra(L, sorted(members))
    assert sub.n == 4 and sub.variety is Variety.UQUANT


def test_generated_subalgebra_of_boolean():
    B = boolean(3)
    atom = B.el("{0}")
    S = generated_subalgebra(B, [atom])
    assert S.algebra.n == 4


def test_join_irreducibles():
    assert join_irreducible_ids(chain(3)) == [1, 2]
    assert len(join_irreducible_ids(boolean(3))) == 3
    assert join_irreducibles(chain(4)).n == 3


def test_downset_counts():
    P, _ = product_poset([join_irreducibles(chain(3))] * 2)
    assert len(downsets(P)) == 6
    P, _ = product_poset([join_irreducibles(chain(3))] * 3)
    assert len(downsets(P)) == 20


@pytest.mark.parametrize("F", [chain(3), chain(4), diamond("frame"), boolean(3, "frame")])
def test_birkhoff_isomorphism(F):
    h, D = birkhoff_isomorphism(F)
    assert h.is_injective() and h.is_surjective() and is_homomorphism(h)
    assert D.algebra.n == F.n


def test_downset_frame_is_distributive():
    P, _ = product_poset([join_irreducibles(chain(3)), join_irreducibles(diamond("frame"))])
    D = downset_frame(P)
    assert D.algebra.variety is Variety.FRAME
