import random

import pytest
from hypothesis import given, strategies as st

from catcov import fixtures as fx
from catcov.category import CatFunctor, FiniteCategory, Ident, Morphism, check_functor, compose_functors, identity_functor, is_connected
from catcov.coverings import (
    aut_group,
    check_covering,
    covering_report,
    fibre_product,
    is_galois,
    lambda_of,
    lift_pointed,
    orbit_category,
    pullback_covering,
    trivial_action,
)
from catcov.errors import (
    ActionNotFree,
    FibreMismatch,
    NotSurjectiveOnObjects,
    ObjectSetMismatch,
    StarNotInjective,
    StarNotSurjective,
)
from catcov.grading import Grading, smash_product

from oracles import covering_automorphism_count


def _identity_cover(C):
    return check_covering(identity_functor(C))


def _mod2():
    """(b,k) -> (b,k mod 2) from the Z/4 cover of K2 to the Z/2 cover."""
    S4, S2 = fx.cyclic_cover(4), fx.cyclic_cover(2)
    om = {x: x[:-2] + str(int(x[-2]) % 2) + ")" for x in S4.category.objects}
    mm = {m: m[:-1] + str(int(m[-1]) % 2) for m in S4.category.names()}
    return check_functor(CatFunctor(S4.category, S2.category, om, mm)), S4.covering, S2.covering


# -- covering check ----------------------------------------------------------------

def test_identity_is_covering():
    P = _identity_cover(fx.k2())
    assert P.fibre("x") == ("x",)


def test_smash_projection_is_covering():
    P = fx.cyclic_cover(3).covering
    assert P.fibre("x0") == ("(x0,0)", "(x0,1)", "(x0,2)")
    assert P.lift_from("(x,1)", "beta") == "beta@1"


def test_folding_is_covering():
    P = check_covering(fx.folding(fx.k2()))
    assert len(P.fibre("x")) == 2


def test_star_not_injective():
    C = FiniteCategory(("x", "x0"), (Morphism("a", "x", "x0"), Morphism("b", "x", "x0")), {}).check()
    B = FiniteCategory(("x", "x0"), (Morphism("a", "x", "x0"),), {}).check()
    F = check_functor(CatFunctor(C, B, {"x": "x", "x0": "x0"}, {"a": "a", "b": "a"}))
    with pytest.raises(StarNotInjective) as e:
        check_covering(F)
    assert e.value.exit_code == 1


def test_star_not_surjective():
    K = fx.k2()
    C = FiniteCategory(("x", "x0"), (Morphism("alpha", "x", "x0"),), {}).check()
    F = check_functor(CatFunctor(C, K, {"x": "x", "x0": "x0"}, {"alpha": "alpha"}))
    with pytest.raises(StarNotSurjective):
        check_covering(F)


def test_not_surjective_on_objects():
    K = fx.k2()
    C = FiniteCategory(("p",), (), {}).check()
    with pytest.raises(NotSurjectiveOnObjects):
        check_covering(check_functor(CatFunctor(C, K, {"p": "x"}, {})))


def test_idem_to_point_is_not_covering():
    # collapsing e onto an identity makes the star non-injective
    C = fx.idem()
    T = FiniteCategory(("o",), (), {}).check()
    F = check_functor(CatFunctor(C, T, {"o": "o"}, {"e": Ident("o")}))
    with pytest.raises(StarNotInjective):
        check_covering(F)


def test_report():
    rep = covering_report(fx.cyclic_cover(2).covering)
    assert rep["connected"] and rep["galois"]
    assert rep["fibres"]["x"] == ["(x,0)", "(x,1)"]


# -- automorphisms ---------------------------------------------------------------

def test_aut_cyclic():
    for n in (1, 2, 3, 4):
        A = aut_group(fx.cyclic_cover(n).covering)
        assert A.order == n and A.is_free()


def test_nongalois():
    P = check_covering(fx.nongalois_k3())
    assert is_connected(P.source)
    assert aut_group(P).order == 1
    assert not is_galois(P)


def test_galois_examples():
    assert is_galois(fx.cyclic_cover(3).covering)
    assert is_galois(_identity_cover(fx.k3()))
    assert not is_galois(check_covering(fx.folding(fx.k2())))


AUT_CASES = [fx.cyclic_cover(2).covering, fx.cyclic_cover(3).covering,
             check_covering(fx.nongalois_k3()), _identity_cover(fx.square())]


@pytest.mark.parametrize("P", AUT_CASES)
def test_aut_matches_oracle(P):
    assert aut_group(P).order == covering_automorphism_count(P.functor)


@given(st.integers(0, 100_000))
def test_aut_random_matches_oracle(seed):
    sm = fx.random_free_action(random.Random(seed))
    A = aut_group(sm.covering)
    assert A.order == covering_automorphism_count(sm.covering.functor)
    A.check()


# -- orbit categories -------------------------------------------------------------

def test_orbit_i2():
    oc = orbit_category(fx.i2(), fx.i2_swap())
    Q = oc.quotient
    assert Q.objects == ("a",) and Q.names() == ["f"]
    assert Q.comp("f", "f") == Ident("a")
    assert oc.translate("f", "b") == "g"


def test_orbit_swap():
    A = fx.swap_action(fx.k2())
    oc = orbit_category(A.category, A)
    assert oc.quotient.objects == ("x.1", "x0.1")
    assert oc.orbit_members("x.1") == ["x.1", "x.2"]


def test_orbit_trivial():
    K = fx.k2()
    oc = orbit_category(K, trivial_action(K))
    assert oc.quotient.objects == K.objects
    assert sorted(oc.quotient.names()) == sorted(K.names())


def test_orbit_of_smash_recovers_base():
    sm = fx.cyclic_cover(3)
    oc = orbit_category(sm.category, sm.action)
    assert len(oc.quotient.objects) == 2 and len(oc.quotient.names()) == 2


def test_not_free():
    K = fx.k2()
    A = aut_group(_identity_cover(K))
    from catcov.coverings import GroupAction
    flip = CatFunctor(fx.i2(), fx.i2(), {"a": "a", "b": "b"}, {"f": "f", "g": "g"})
    bad = GroupAction(fx.i2(), ("1", "s"), {("1", "1"): "1", ("1", "s"): "s", ("s", "1"): "s", ("s", "s"): "1"},
                      "1", {"1": flip, "s": flip})
    with pytest.raises(ActionNotFree):
        orbit_category(fx.i2(), bad)
    assert A.order == 1


# -- lifting ----------------------------------------------------------------------

def test_lift_identity_into_double_cover():
    F = _identity_cover(fx.k2())
    G = fx.cyclic_cover(2).covering
    assert lift_pointed(F, G, "x0", "(x0,0)") is None


def test_lift_double_cover_to_base():
    F = fx.cyclic_cover(2).covering
    G = _identity_cover(fx.k2())
    H = lift_pointed(F, G, "(x,1)", "x")
    assert H is not None and H.same_maps(F.functor)


def test_lift_fibre_mismatch():
    F = fx.cyclic_cover(2).covering
    with pytest.raises(FibreMismatch):
        lift_pointed(F, F, "(x,0)", "(x0,0)")


def test_lift_between_cyclic_covers():
    H, F, G = _mod2()
    L = lift_pointed(F, G, "(x,3)", "(x,1)")
    assert L is not None and L.same_maps(H)
    assert lift_pointed(G, F, "(x,0)", "(x,0)") is None


@given(st.integers(0, 100_000))
def test_lift_order_independent(seed):
    rng = random.Random(seed)
    sm = fx.random_free_action(rng)
    P = sm.covering
    c = P.source.objects[0]
    for d in P.fibre(P.functor.obj(c)):
        base = lift_pointed(P, P, c, d)
        for k in range(3):
            other = lift_pointed(P, P, c, d, random.Random(k))
            assert (base is None) == (other is None)
            if base is not None:
                assert base.same_maps(other)
                assert compose_functors(P.functor, base).same_maps(P.functor)


# -- maps of Galois coverings -----------------------------------------------------

def test_lambda_mod2():
    H, F, G = _mod2()
    lam = lambda_of(H, F, G)
    assert lam.surjective
    assert lam.kernel == ("(x,0)", "(x,2)")
    assert lam.mapping["(x,3)"] == "(x,1)"


def test_lambda_identity():
    F = fx.cyclic_cover(3).covering
    lam = lambda_of(identity_functor(F.source), F, F)
    assert lam.kernel == ("(x,0)",)
    assert dict(lam.mapping) == {g: g for g in lam.source.elements}


# -- pullbacks ---------------------------------------------------------------------

def _z2_regular_cover():
    Z2 = fx.z2grp()
    return smash_product(Grading(identity_functor(Z2.category), Z2), "*").covering


def test_pullback_along_z4_to_z2():
    theta = fx.z4_to_z2()
    P = pullback_covering(theta, _z2_regular_cover())
    assert len(P.source.objects) == 2 and len(P.source.names()) == 6
    assert is_connected(P.source)
    assert is_galois(P)


def test_pullback_along_identity():
    G = fx.cyclic_cover(2).covering
    P = pullback_covering(identity_functor(fx.k2()), G)
    assert len(P.source.objects) == 4 and len(P.source.names()) == 4


def test_pullback_object_mismatch():
    X = fx.k2_grading()
    with pytest.raises(ObjectSetMismatch):
        pullback_covering(X.functor, _z2_regular_cover())


def test_fibre_product_legs_commute():
    theta = fx.z4_to_z2()
    G = _z2_regular_cover()
    fp = fibre_product(theta, G.functor)
    assert compose_functors(theta, fp.left).same_maps(compose_functors(G.functor, fp.right))
