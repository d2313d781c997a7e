import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affsys.algebra import FiniteAlgebra, Hom, Variety, enumerate_homs, is_homomorphism
from affsys.catalog import chain, diamond, drastic_chain, lukasiewicz, two
from affsys.errors import KappaNotHomomorphism, NotContinuous, ValidationError, VarietyMismatch
from affsys.free import FinNatSet
from affsys.spaces import generated_space, is_t0_space, sierpinski_space
from affsys.systems import (
    QuantaleSierpinski,
    SystemMorphism,
    canonical_to_power,
    embed_E,
    embed_E_map,
    enumerate_morphisms,
    identity_morphism,
    idempotents,
    in_M,
    initiality_check,
    is_mono,
    is_sober,
    is_sober_mono,
    is_sober_mono_lazy,
    is_t0,
    minjective_search,
    morphisms_to_S,
    naive_morphisms,
    product_systems,
    pts,
    sierpinski_system,
    spatialize,
    split_idempotent,
    theta_comparison,
    validate_morphism,
    validate_system,
)
from affsys.verify import GenConfig, gen_system

FINITE = ["set", "supsl", "frame", "cbalg"]


def sys_sample(variety, seed, stratum="any", max_points=3, max_algebra=4):
    cfg = GenConfig(seed=seed, variety=Variety(variety))
    return gen_system(cfg, cfg.rng("test", seed), stratum, max_points, max_algebra)


# ---------------------------------------------------------------- validation


def test_validate_classical_sierpinski():
    L = two()
    s = validate_system(L, ["0", "1"], chain(3), [(0, 0), (0, 1), (1, 1)])
    assert is_t0(s) and is_sober(s).reason == "bijective"
    assert [h.map for h in pts(chain(3), L)] == sorted(s.ells)


def test_empty_point_set_with_trivial_algebra():
    one = FiniteAlgebra("frame", ["*"], [[True]])
    s = validate_system(two(), [], one, [()])
    assert len(s.points) == 0 and is_t0(s) and is_sober(s)


def test_kappa_violating_joins_is_rejected():
    L = two()
    with pytest.raises(KappaNotHomomorphism) as e:
        # c goes to bot at the only point but top is sent to bot too
        validate_system(L, ["x"], chain(3), [(0,), (1,), (0,)])
    assert e.value.witness
    with pytest.raises(ValidationError):
        validate_system(L, ["x"], chain(3), [(0,), (1,)])
    with pytest.raises(VarietyMismatch):
        validate_system(L, ["x"], chain(3, "supsl"), [(0,), (1,), (1,)])


def test_non_t0_and_non_sober():
    L = two()
    dup = validate_system(L, ["x", "y"], chain(3), [(0, 0), (1, 1), (1, 1)])
    v = is_t0(dup)
    assert not v and set(v.witness) == {"x", "y"}
    assert is_sober(dup).reason == "not-injective"
    one_pt = validate_system(L, ["x"], chain(3), [(0,), (1,), (1,)])
    assert is_t0(one_pt) and is_sober(one_pt).reason == "not-surjective"


# ---------------------------------------------------------------- morphisms


def test_validate_morphism_catches_square_failure():
    L = two()
    S = sierpinski_system(L)
    assert validate_morphism(identity_morphism(S))
    swap = SystemMorphism(S, S, (1, 0), Hom(S.A, S.A, (0, 1, 2)))
    v = validate_morphism(swap)
    assert not v and v.reason == "square does not commute"
    bad_phi = SystemMorphism(S, S, (0, 1), Hom(S.A, S.A, (0, 2, 1)))
    assert not validate_morphism(bad_phi)


@pytest.mark.parametrize("variety", FINITE)
def test_enumerated_morphisms_match_naive(variety):
    for seed in range(6):
        s1 = sys_sample(variety, seed, max_points=2)
        s2 = sys_sample(variety, seed + 100, max_points=3)
        if s1.L is not s2.L:
            continue
        fast = sorted((m.f, m.phi.map) for m in enumerate_morphisms(s1, s2))
        slow = sorted((m.f, m.phi.map) for m in naive_morphisms(s1, s2))
        assert fast == slow
        assert all(validate_morphism(m) for m in enumerate_morphisms(s1, s2))


@settings(max_examples=25)
@given(st.integers(0, 5000), st.sampled_from(FINITE))
def test_morphisms_compose(seed, variety):
    s1 = sys_sample(variety, seed, max_points=2)
    s2 = sys_sample(variety, seed + 1, max_points=2)
    ms1 = enumerate_morphisms(s1, s2)[:3]
    ms2 = enumerate_morphisms(s2, s1)[:3]
    for a in ms1:
        assert a.then(identity_morphism(s2)).same(a)
        for b in ms2:
            assert validate_morphism(a.then(b))


# ---------------------------------------------------------------- spaces and systems


def test_embed_and_spatialize():
    L = two()
    sp = sierpinski_space(L)
    E = embed_E(sp)
    assert E.A.n == 3 and is_sober(E)
    assert spatialize(E).opens == sp.opens
    assert len(morphisms_to_S(E)) == 3
    assert all(validate_morphism(m) for m in morphisms_to_S(E))
    assert validate_morphism(embed_E_map((0, 1), sp, sp))
    with pytest.raises(NotContinuous):
        embed_E_map((1, 0), sp, sp)


@pytest.mark.parametrize("L", [two(), chain(3), lukasiewicz(3), two("supsl")])
def test_spatialize_of_embedded_space_is_identity(L):
    for seeds in ([(0, 1)], [(1, 0), (0, 1)], []):
        sp = generated_space(L, ["x", "y"], seeds)
        assert spatialize(embed_E(sp)).opens == sp.opens
        assert bool(is_t0(embed_E(sp))) == bool(is_t0_space(sp))


# ---------------------------------------------------------------- Sierpinski system


def test_sierpinski_kappa_per_variety():
    assert sierpinski_system(two()).kappa == ((0, 0), (0, 1), (1, 1))
    assert sierpinski_system(two("supsl")).kappa == ((0, 0), (0, 1))
    assert sierpinski_system(two("set")).kappa == ((0, 1),)
    cb = sierpinski_system(two("cbalg"))
    assert cb.A.n == 4 and is_t0(cb) and is_sober(cb)
    for L in (two(), chain(3), two("supsl"), diamond("frame")):
        assert is_sober(sierpinski_system(L))


def test_quantale_sierpinski_is_lazy():
    L = lukasiewicz(3)
    sS = sierpinski_system(L)
    assert isinstance(sS, QuantaleSierpinski)
    assert sS.kappa([1]) == (0, 1, 2)
    assert sS.kappa(FinNatSet.of(0, 1)) == sS.kappa([0])
    assert sS.is_t0()


def test_morphisms_to_S_are_valid():
    for variety in FINITE:
        s = sys_sample(variety, 3)
        legs = morphisms_to_S(s)
        assert len(legs) == s.A.n
        assert all(validate_morphism(m) for m in legs)


# ---------------------------------------------------------------- products


def test_product_of_two_sierpinskis():
    S = sierpinski_system(two())
    P = product_systems([S, S])
    assert len(P.system.points) == 4 and P.system.A.n == 6
    assert is_sober(P.system)
    assert all(validate_morphism(p) for p in P.projections)


@pytest.mark.parametrize("variety", FINITE)
def test_product_pairing(variety):
    s = sys_sample(variety, 7)
    S = sierpinski_system(s.L)
    P = product_systems([S, S])
    legs = morphisms_to_S(s)[:2]
    g = P.pair(legs)
    assert validate_morphism(g)
    for leg, proj in zip(legs, P.projections):
        assert g.then(proj).same(leg)


# ---------------------------------------------------------------- canonical morphism and monos


@pytest.mark.parametrize("variety", FINITE)
def test_canonical_lazy_vs_materialised(variety):
    for seed in range(4):
        s = sys_sample(variety, seed, max_algebra=3 if variety != "cbalg" else 2)
        lazy = canonical_to_power(s)
        eager = canonical_to_power(s, materialize=True)
        assert bool(lazy.f_injective()) == bool(is_t0(s))
        assert bool(lazy.phi_surjective()) == bool(eager.phi_surjective())
        assert validate_morphism(eager.morphism)
        assert bool(is_sober_mono_lazy(lazy)) == bool(is_sober_mono(eager.morphism))


def test_canonical_rejects_quantales():
    L = lukasiewicz(3)
    s = validate_system(L, ["x"], L, [(v,) for v in range(3)])
    with pytest.raises(VarietyMismatch):
        canonical_to_power(s)


def test_is_mono_and_in_M():
    L = two()
    S = sierpinski_system(L)
    assert is_mono(identity_morphism(S)) and in_M(identity_morphism(S))
    c = validate_system(L, ["x", "y"], chain(3), [(0, 0), (1, 1), (1, 1)])
    to_S = SystemMorphism(c, S, (1, 1), Hom(S.A, c.A, (0, 1, 2)))
    assert validate_morphism(to_S)
    v = is_mono(to_S)
    assert not v and v.reason == "f not injective"
    one = validate_system(L, ["x"], chain(4), [(0,), (0,), (1,), (1,)])
    m = SystemMorphism(one, S, (1,), Hom(S.A, one.A, (0, 2, 3)))
    assert validate_morphism(m)
    v = is_mono(m)
    assert not v and v.partial  # frames have non-surjective epis


def test_initiality_of_empty_source_and_identity():
    L = two()
    S = sierpinski_system(L)
    v = initiality_check([identity_morphism(S)], S, [S])
    assert v and v.details["checked"] > 0
    # the empty source is initial only for the indiscrete-like domain; over S it fails
    assert not initiality_check([], S, [S])


@pytest.mark.parametrize("variety", FINITE)
def test_canonical_source_is_initial(variety):
    s = sys_sample(variety, 11)
    probes = [sierpinski_system(s.L), sys_sample(variety, 12, max_points=2)]
    assert initiality_check(morphisms_to_S(s), s, probes)


def test_sober_mono_examples():
    L = two()
    S = sierpinski_system(L)
    assert is_sober_mono(identity_morphism(S))
    # the top point alone includes into S, but misses the point bot
    top = validate_system(L, ["1"], chain(3), [(0,), (1,), (1,)])
    m = SystemMorphism(top, S, (1,), Hom(S.A, top.A, (0, 1, 2)))
    assert validate_morphism(m)
    v = is_sober_mono(m)
    assert not v


# ---------------------------------------------------------------- injectivity and retracts


@pytest.mark.parametrize("variety", FINITE)
def test_sierpinski_is_injective_for_identity_monos(variety):
    s = sys_sample(variety, 5)
    S = sierpinski_system(s.L)
    m = identity_morphism(s)
    rep = minjective_search(S, [(m, f) for f in morphisms_to_S(s)])
    assert rep.ok and all(r.recipe_ok for r in rep.results)
    P = product_systems([S, S])
    rep = minjective_search(P, [(m, P.pair(morphisms_to_S(s)[:2]))])
    assert rep.ok


def test_retracts_of_sierpinski_square():
    S = sierpinski_system(two())
    P = product_systems([S, S]).system
    es = idempotents(P)
    assert any(e.same(identity_morphism(P)) for e in es)
    for e in es:
        R, s, r = split_idempotent(e)
        assert validate_morphism(s) and validate_morphism(r)
        assert s.then(r).same(identity_morphism(R))
        assert r.then(s).same(e)
        assert is_homomorphism(s.phi)


# ---------------------------------------------------------------- theta


@pytest.mark.parametrize("variety", FINITE)
def test_theta_is_iso_on_finite_varieties(variety):
    for L in (two(variety),) + ((chain(3),) if variety == "frame" else ()):
        rec = theta_comparison(L)
        assert rec.is_iso and rec.prop22


@pytest.mark.parametrize("L", [lukasiewicz(3), drastic_chain(4)])
def test_theta_not_iso_on_integral_quantales(L):
    rec = theta_comparison(L)
    assert not rec.is_iso
    assert rec.witness == {"A1": [0, 1], "A2": [0]}
    assert rec.prop22


def test_points_via_pts_agree_with_enumerate():
    rng = random.Random(4)
    for _ in range(5):
        s = sys_sample("frame", rng.randrange(1000))
        assert [h.map for h in pts(s.A, s.L)] == [h.map for h in enumerate_homs(s.A, s.L)]
