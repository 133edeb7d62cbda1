import math
import random

import pytest
from hypothesis import given, strategies as st

from catcov import fixtures as fx
from catcov.category import CatFunctor, Ident, check_functor, compose_functors, identity_functor, is_connected
from catcov.coverings import aut_group, is_galois, orbit_category
from catcov.errors import NotBijectiveOnObjects, NotInjectiveOnObjects, SectionNotEquivariant, TargetNotConnected
from catcov.grading import (
    Grading,
    associated_grading,
    coset_components,
    grading_morphism,
    is_effective,
    make_grading,
    regraded,
    roundtrip_iso,
    slice_pullback_check,
    smash_product,
    smash_quotient_map,
)
from catcov.groupoids import (
    FiniteGroupoid,
    complete_groupoid,
    cyclic_group,
    group_groupoid,
    image_isomorphism,
    kernel_functor,
    quotient_groupoid,
)


# -- groupoid kernels ----------------------------------------------------------------

def test_kernel_z4_to_z2():
    N = kernel_functor(fx.z4_to_z2())
    assert N.morphisms == frozenset({"2"})
    Q, proj = quotient_groupoid(N.groupoid, N)
    assert len(Q.category.names()) == 1
    assert proj("1") == proj("3") and isinstance(proj("2"), Ident)


def test_image_isomorphism():
    iso = image_isomorphism(fx.z4_to_z2())
    assert iso.is_bijective()


def test_kernel_needs_injective_on_objects():
    G = complete_groupoid(["u", "v"], cyclic_group(2))
    T = fx.z2grp()
    F = check_functor(CatFunctor(G.category, T.category, {"u": "*", "v": "*"},
                                 {m: (Ident("*") if G.element(m) == "0" else "s") for m in G.category.names()}))
    with pytest.raises(NotInjectiveOnObjects):
        kernel_functor(F)


# -- smash products -----------------------------------------------------------------

def test_smash_k2():
    sm = smash_product(fx.k2_grading(), "*")
    C = sm.category
    assert C.objects == ("(x,1)", "(x,s)", "(x0,1)", "(x0,s)")
    assert C.src("beta@1") == "(x,1)" and C.tgt("beta@1") == "(x0,s)"
    assert C.tgt("alpha@s") == "(x0,s)"
    assert is_connected(C)
    assert sm.action.elements == ("1", "s") and sm.action.is_free()


def test_smash_flat_grading_splits():
    X = fx.k2_grading(beta="1")
    assert coset_components(X, "*") == [["(x,1)", "(x0,1)"], ["(x,s)", "(x0,s)"]]
    assert not is_effective(X)


def test_smash_trivial_group():
    B = fx.square()
    G = group_groupoid(cyclic_group(1))
    sm = smash_product(make_grading(B, G, {m: "0" for m in B.names()}), "*")
    assert len(sm.category.objects) == len(B.objects)
    assert len(sm.category.names()) == len(B.names())


def test_smash_quotient_map():
    for sm in (fx.cyclic_cover(3), smash_product(fx.k2_grading(), "*"), smash_product(fx.zigzag_z4(), "*")):
        F = smash_quotient_map(sm)
        assert F.is_bijective()


def test_smash_over_multi_object_groupoid():
    G = complete_groupoid(["u", "v"], cyclic_group(2))
    B = fx.k2()
    a = G.arrow("u", "0", "v")
    b = G.arrow("u", "1", "v")
    X = make_grading(B, G, {"alpha": a, "beta": b}, {"x": "u", "x0": "v"})
    sm = smash_product(X, "u")
    assert len(sm.category.objects) == 4
    assert is_effective(X)
    assert slice_pullback_check(X, "v")


# -- effectiveness ----------------------------------------------------------------

def test_effective_examples():
    assert is_effective(fx.k2_grading())
    assert is_effective(fx.zigzag_z4())
    Z2 = fx.z2grp()
    assert is_effective(Grading(identity_functor(Z2.category), Z2))


def test_effective_strict_rejects_group_grading():
    with pytest.raises(NotBijectiveOnObjects):
        is_effective(fx.k2_grading(), strict=True)


def test_effective_disconnected_target():
    G = FiniteGroupoid(fx.disjoint_union(fx.z2grp().category, fx.z2grp().category),
                       {"s.1": "s.1", "s.2": "s.2"}).check()
    B = fx.k2()
    X = Grading(check_functor(CatFunctor(B, G.category, {"x": "*.1", "x0": "*.1"},
                                         {"alpha": Ident("*.1"), "beta": "s.1"})), G)
    with pytest.raises(TargetNotConnected):
        is_effective(X)


# -- maps of gradings ----------------------------------------------------------------

def test_grading_morphism_identity():
    X = fx.zigzag_z4()
    Z = grading_morphism(X, X)
    assert Z is not None and Z.same_maps(identity_functor(X.groupoid.category))


def test_grading_morphism_mod2():
    X = fx.zigzag_z4()
    phi = fx.z4_to_z2()
    Y = Grading(compose_functors(phi, X.functor), fx.z2grp())
    Z = grading_morphism(X, Y)
    assert Z is not None and Z.same_maps(phi)
    assert grading_morphism(Y, X) is None


def test_grading_morphism_from_trivial_to_effective():
    B = fx.k2()
    T = make_grading(B, fx.z2grp(), {"alpha": "1", "beta": "1"})
    assert grading_morphism(T, fx.k2_grading()) is None
    Z = grading_morphism(fx.k2_grading(), T)
    assert Z is not None and isinstance(Z("s"), Ident)


@pytest.mark.parametrize("seed", range(6))
def test_grading_morphism_order_independent(seed):
    rng = random.Random(seed)
    X = fx.zigzag_z4()
    Y = Grading(compose_functors(fx.z4_to_z2(), X.functor), fx.z2grp())
    names = X.source.names()
    base = grading_morphism(X, Y)
    rng.shuffle(names)
    assert grading_morphism(X, Y, names).same_maps(base)


# -- associated gradings --------------------------------------------------------------

def _cover_orbit(n=2):
    sm = fx.cyclic_cover(n)
    return orbit_category(sm.category, sm.action)


def test_associated_default_section():
    ag = associated_grading(_cover_orbit())
    assert {f: ag.element(f) for f in ag.orbit.quotient.names()} == {"alpha@0": "0", "beta@0": "1"}
    assert ag.grading.is_bijective_on_objects()


def test_associated_other_section_matches_regraded():
    oc = _cover_orbit(3)
    ag = associated_grading(oc)
    for k in "012":
        moved = {"(x,0)": "(x,0)", "(x0,0)": f"(x0,{k})"}
        ag2 = associated_grading(oc, moved)
        # moving a representative by k shifts its deviation by k^-1
        u = {"(x,0)": "0", "(x0,0)": str(-int(k) % 3)}
        assert {f: ag2.element(f) for f in oc.quotient.names()} == regraded(ag, u)


def test_associated_bad_section():
    oc = _cover_orbit()
    with pytest.raises(SectionNotEquivariant):
        associated_grading(oc, {"(x,0)": "(x0,0)", "(x0,0)": "(x0,0)"})


def test_associated_grading_is_effective():
    ag = associated_grading(_cover_orbit(4))
    assert is_effective(ag.grading)


# -- round trip -----------------------------------------------------------------------

def test_roundtrip_identity_action():
    from catcov.coverings import trivial_action
    K = fx.k2()
    oc = orbit_category(K, trivial_action(K))
    Phi = roundtrip_iso(oc)
    assert Phi.is_bijective()


def test_roundtrip_k2_cover():
    oc = _cover_orbit(2)
    Phi = roundtrip_iso(oc)
    assert Phi.obj("((x,0),1:(x,0)->(x,0))") == "(x,1)"
    assert Phi.obj("((x0,0),0:(x0,0)->(x,0))") == "(x0,0)"


def test_roundtrip_i2():
    A = fx.i2_swap()
    Phi = roundtrip_iso(orbit_category(A.category, A))
    assert sorted(Phi.object_map.values()) == ["a", "b"]


def test_roundtrip_all_sections_and_points():
    oc = _cover_orbit(3)
    for k in "012":
        for q in oc.quotient.objects:
            roundtrip_iso(oc, {"(x,0)": f"(x,{k})", "(x0,0)": "(x0,0)"}, q)


# -- pullback description ------------------------------------------------------------

def test_slice_pullback_examples():
    assert slice_pullback_check(fx.k2_grading(), "*")
    assert slice_pullback_check(fx.zigzag_z4(), "*")
    Z2 = fx.z2grp()
    assert slice_pullback_check(Grading(identity_functor(Z2.category), Z2), "*")
    T = make_grading(fx.k2(), fx.z2grp(), {"alpha": "1", "beta": "1"})
    assert slice_pullback_check(T, "*")


# -- properties ------------------------------------------------------------------------

def _loop_subgroup_order(X, n):
    """Order of the subgroup of Z/n generated by degrees of closed walks (a spanning-tree potential)."""
    B = X.source
    deg = {m: 0 if isinstance(X.degree(m), Ident) else int(X.degree(m)) for m in B.names()}
    pot = {B.objects[0]: 0}
    changed = True
    while changed:
        changed = False
        for m in B.morphisms:
            if m.src in pot and m.tgt not in pot:
                pot[m.tgt] = (pot[m.src] + deg[m.name]) % n
                changed = True
            elif m.tgt in pot and m.src not in pot:
                pot[m.src] = (pot[m.tgt] - deg[m.name]) % n
                changed = True
    g = n
    for m in B.morphisms:
        g = math.gcd(g, (pot[m.src] + deg[m.name] - pot[m.tgt]) % n)
    return n // g


@given(st.integers(0, 100_000), st.integers(1, 4))
def test_components_are_cosets(seed, n):
    rng = random.Random(seed)
    B = fx.random_connected_category(rng, 3, 6)
    X = fx.random_cyclic_grading(rng, B, n)
    if X is None:
        return
    comps = coset_components(X, "*")
    k = _loop_subgroup_order(X, n)
    assert len(comps) == n // k
    assert all(len(c) == k * len(B.objects) for c in comps)
    assert is_effective(X) == (k == n)


@given(st.integers(0, 100_000))
def test_smash_is_galois_with_quotient_base(seed):
    sm = fx.random_free_action(random.Random(seed))
    assert smash_quotient_map(sm).is_bijective()
    assert is_galois(sm.covering)
    assert aut_group(sm.covering).order == sm.action.order


@given(st.integers(0, 100_000))
def test_roundtrip_random(seed):
    sm = fx.random_free_action(random.Random(seed))
    oc = orbit_category(sm.category, sm.action)
    assert roundtrip_iso(oc).is_bijective()
    assert is_effective(associated_grading(oc).grading)
