import random

import pytest
from hypothesis import given, strategies as st

from catcov import fixtures as fx
from catcov.category import (
    CatFunctor,
    Congruence,
    FiniteCategory,
    Ident,
    Morphism,
    check_functor,
    congruence_close,
    connected_components,
    identity_functor,
    is_connected,
    make_category,
    quotient_category,
)
from catcov.errors import (
    DuplicateName,
    EndpointMismatch,
    MissingComposite,
    NotAssociative,
    NotFunctorial,
    PairEndpointMismatch,
)

from oracles import arrows, brute_associative, least_congruence


# -- validation ------------------------------------------------------------------

def test_k2_is_valid():
    C = fx.k2()
    assert C.objects == ("x", "x0")
    assert C.names() == ["alpha", "beta"]
    assert C.table == {}


def test_idem_is_valid():
    C = fx.idem()
    assert C.comp("e", "e") == "e"
    assert C.comp("e", Ident("o")) == "e"


def test_missing_composite_square():
    raw = fx.missing_composite_square()
    with pytest.raises(MissingComposite):
        make_category(raw["objects"], raw["morphisms"], raw["compositions"])


def test_duplicate_name():
    with pytest.raises(DuplicateName):
        make_category(["x", "y"], [("f", "x", "y"), ("f", "x", "y")])
    with pytest.raises(DuplicateName):
        make_category(["x", "x"])


def test_unknown_endpoint():
    with pytest.raises(EndpointMismatch):
        make_category(["x"], [("f", "x", "y")])


def test_identity_composite_needs_endo_pair():
    with pytest.raises(EndpointMismatch):
        make_category(["x", "y"], [("f", "x", "y"), ("g", "y", "x")],
                      {("g", "f"): "ID", ("f", "g"): "g"})


def test_not_associative():
    # e.e = f, e.f = e, f.e = f, f.f = f is not associative: (e.e).e = f.e = f, e.(e.e) = e.f = e
    with pytest.raises(NotAssociative):
        make_category(["o"], [("e", "o", "o"), ("f", "o", "o")],
                      {("e", "e"): "f", ("e", "f"): "e", ("f", "e"): "f", ("f", "f"): "f"})


def test_comp_rejects_non_composable():
    with pytest.raises(EndpointMismatch):
        fx.k2().comp("alpha", "beta")


def _monoid(table):
    names = sorted({k for pair in table for k in pair})
    return FiniteCategory(("o",), tuple(Morphism(n, "o", "o") for n in names),
                          {k: (Ident("o") if v == "ID" else v) for k, v in table.items()})


@given(st.lists(st.sampled_from(["a", "b", "ID"]), min_size=4, max_size=4))
def test_validation_agrees_with_brute_associativity(values):
    keys = [("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]
    C = _monoid(dict(zip(keys, values)))
    try:
        C.check()
        accepted = True
    except NotAssociative:
        accepted = False
    assert accepted == brute_associative(C)


@given(st.integers(0, 10_000))
def test_random_categories_are_associative(seed):
    C = fx.random_concrete_category(random.Random(seed), 3, 3)
    if C is not None:
        assert brute_associative(C)


# -- functors ----------------------------------------------------------------------

def test_identity_functor_valid():
    check_functor(identity_functor(fx.k2()))


def test_k2_to_z2_is_functor():
    Z2 = fx.z2grp().category
    check_functor(CatFunctor(fx.k2(), Z2, {"x": "*", "x0": "*"}, {"alpha": Ident("*"), "beta": "s"}))


def test_idem_to_z2_not_functorial():
    Z2 = fx.z2grp().category
    with pytest.raises(NotFunctorial) as e:
        check_functor(CatFunctor(fx.idem(), Z2, {"o": "*"}, {"e": "s"}))
    assert e.value.pair == ("e", "e")


def test_functor_must_preserve_endpoints():
    with pytest.raises(NotFunctorial):
        check_functor(CatFunctor(fx.k2(), fx.k2(), {"x": "x0", "x0": "x"}, {"alpha": "alpha", "beta": "beta"}))


# -- connectivity ---------------------------------------------------------------------

def test_components():
    assert len(connected_components(fx.k2())) == 1
    assert len(connected_components(fx.disjoint_union(fx.k2(), fx.k2()))) == 2
    single = FiniteCategory(("o",), (), {})
    assert connected_components(single) == [["o"]]
    assert is_connected(single)
    empty = FiniteCategory((), (), {})
    assert connected_components(empty) == []
    assert not is_connected(empty)


# -- congruences ------------------------------------------------------------------------

def _pairs(q: Congruence):
    arr = list(q.category.arrows())
    return frozenset((a, b) for a in arr for b in arr if q.related(a, b))


def test_k2_alpha_beta():
    C = fx.k2()
    q = congruence_close(C, [("alpha", "beta")])
    classes = sorted(sorted(map(str, c)) for c in q.classes)
    assert classes == [["ID(x)"], ["ID(x0)"], ["alpha", "beta"]]
    Q, proj = quotient_category(C, q)
    assert len(Q.morphisms) == 1 and Q.morphisms[0].src == "x" and Q.morphisms[0].tgt == "x0"
    assert proj("alpha") == proj("beta")


def test_idem_collapse():
    C = fx.idem()
    q = congruence_close(C, [("e", "ID:o")])
    assert len(q.classes) == 1
    Q, proj = quotient_category(C, q)
    assert Q.morphisms == () and proj("e") == Ident("o")


def test_discrete():
    C = fx.square()
    q = congruence_close(C, [])
    assert all(len(c) == 1 for c in q.classes)
    Q, proj = quotient_category(C, q)
    assert proj.is_bijective()


def test_pair_endpoint_mismatch():
    with pytest.raises(PairEndpointMismatch):
        congruence_close(fx.idem_arrow(), [("f", "e")])


def _small_cases():
    rng = random.Random(7)
    cases = [(fx.k2(), [("alpha", "beta")]), (fx.idem(), [("e", "ID:o")]), (fx.idem_arrow(), [("e", "ID:y")])]
    while len(cases) < 25:
        C = fx.random_concrete_category(rng, rng.randint(1, 3), rng.randint(1, 3), max_morphisms=6)
        if C is None:
            continue
        par = [(a, b) for a in C.arrows() for b in C.arrows()
               if a != b and C.src(a) == C.src(b) and C.tgt(a) == C.tgt(b)]
        R = rng.sample(par, min(len(par), rng.randint(0, 2)))
        cases.append((C, R))
    return cases


@pytest.mark.parametrize("C,R", _small_cases())
def test_closure_is_least(C, R):
    q = congruence_close(C, R)
    assert q.is_congruence()
    R2 = [(a if not (isinstance(a, str) and a.startswith("ID:")) else Ident(a[3:]),
           b if not (isinstance(b, str) and b.startswith("ID:")) else Ident(b[3:])) for a, b in R]
    assert _pairs(q) == least_congruence(C, R2)


@pytest.mark.parametrize("C,R", _small_cases())
def test_closure_idempotent_and_projection_exact(C, R):
    q = congruence_close(C, R)
    pairs = [(c[0], b) for c in q.classes for b in c[1:]]
    assert _pairs(congruence_close(C, pairs)) == _pairs(q)
    Q, proj = quotient_category(C, q)
    Q.check()
    check_functor(proj)
    for a in arrows(C):
        for b in arrows(C):
            assert (proj(a) == proj(b)) == q.related(a, b)
