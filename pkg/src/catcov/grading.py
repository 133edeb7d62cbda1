"""Groupoid gradings, smash products and the grading of a Galois covering.

A grading is a functor ``X: B -> G`` into a finite groupoid. Its smash
product at ``x0`` has objects ``(b, g)`` with ``g: X(b) -> x0`` in ``G`` and
a morphism ``f: (b, g) -> (c, h)`` whenever ``h . X(f) = g``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .category import (
    Arrow,
    CatFunctor,
    FiniteCategory,
    Ident,
    Morphism,
    check_functor,
    compose_functors,
    connected_components,
    is_connected,
)
from .coverings import (
    CoveringFunctor,
    GroupAction,
    OrbitCategory,
    check_covering,
    fibre_product,
    orbit_category,
)
from .errors import (
    InvalidInput,
    NotBijectiveOnObjects,
    NotFunctorial,
    SectionNotEquivariant,
    TargetNotConnected,
)
from .groupoids import CompleteGroupoid, FiniteGroupoid, complete_groupoid, FiniteGroup


@dataclass(frozen=True, eq=False)
class Grading:
    functor: CatFunctor
    groupoid: FiniteGroupoid

    @property
    def source(self) -> FiniteCategory:
        return self.functor.source

    def degree(self, f: Arrow) -> Arrow:
        return self.functor(f)

    def is_bijective_on_objects(self) -> bool:
        return sorted(self.functor.object_map.values()) == sorted(self.groupoid.objects)


def make_grading(B: FiniteCategory, G: FiniteGroupoid, degrees: Mapping[str, Arrow],
                 object_map: Optional[Mapping[str, str]] = None) -> Grading:
    """Grade ``B`` by ``G``; ``object_map`` may be omitted when ``G`` has one object.

    Degrees may name an identity by ``G``'s identity label.
    """
    if object_map is None:
        if len(G.objects) != 1:
            raise InvalidInput("object_map is required for groupoids with several objects")
        object_map = {b: G.objects[0] for b in B.objects}
    fixed = {}
    for m, a in degrees.items():
        if not isinstance(a, Ident) and a not in G.category._by_name:
            if a == G.identity_label:
                a = Ident(object_map[B.src(m)])
            else:
                raise InvalidInput(f"degree {a!r} is not a morphism of the groupoid")
        fixed[m] = a
    F = check_functor(CatFunctor(B, G.category, dict(object_map), fixed))
    return Grading(F, G)


# -- smash products ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Smash:
    grading: Grading
    point: str
    category: FiniteCategory
    covering: CoveringFunctor
    action: GroupAction
    object_pairs: Mapping[str, Tuple[str, Arrow]]
    morphism_pairs: Mapping[str, Tuple[str, Arrow]]

    def __iter__(self):
        return iter((self.category, self.covering, self.action))

    def object_name(self, b: str, g: Arrow) -> str:
        return f"({b},{self.grading.groupoid.label(g)})"


def smash_product(X: Grading, x0: str) -> Smash:
    B, G = X.source, X.groupoid
    GC = G.category
    if not GC.has_object(x0):
        raise InvalidInput(f"{x0!r} is not an object of the grading groupoid")
    lab = G.label
    objs: List[str] = []
    opairs: Dict[str, Tuple[str, Arrow]] = {}
    oname: Dict[Tuple[str, Arrow], str] = {}
    for b in B.objects:
        for g in GC.hom(X.functor.obj(b), x0):
            n = f"({b},{lab(g)})"
            objs.append(n)
            opairs[n] = (b, g)
            oname[(b, g)] = n
    morphs = []
    mpairs: Dict[str, Tuple[str, Arrow]] = {}
    mname: Dict[Tuple[str, Arrow], str] = {}
    for f in B.morphisms:
        inv_deg = G.inv(X.degree(f.name))
        for g in GC.hom(X.functor.obj(f.src), x0):
            h = GC.comp(g, inv_deg)
            n = f"{f.name}@{lab(g)}"
            morphs.append(Morphism(n, oname[(f.src, g)], oname[(f.tgt, h)]))
            mpairs[n] = (f.name, g)
            mname[(f.name, g)] = n
    table = {}
    for (g, f), h in B.table.items():
        for gam in GC.hom(X.functor.obj(B.src(f)), x0):
            fn = mname[(f, gam)]
            src = oname[(B.src(f), gam)]
            gam2 = GC.comp(gam, G.inv(X.degree(f)))
            gn = mname[(g, gam2)]
            table[(gn, fn)] = Ident(src) if isinstance(h, Ident) else mname[(h, gam)]
    S = FiniteCategory(tuple(objs), tuple(morphs), table)
    proj = CatFunctor(S, B, {n: p[0] for n, p in opairs.items()},
                      {n: p[0] for n, p in mpairs.items()})
    covering = check_covering(proj)

    vertex = GC.hom(x0, x0)
    elements = tuple(lab(a) for a in vertex)
    by_label = dict(zip(elements, vertex))
    functors = {}
    for la, a in by_label.items():
        functors[la] = CatFunctor(
            S, S,
            {n: oname[(b, GC.comp(a, g))] for n, (b, g) in opairs.items()},
            {n: mname[(f, GC.comp(a, g))] for n, (f, g) in mpairs.items()},
        )
    mul = {(p, q): lab(GC.comp(by_label[p], by_label[q])) for p in elements for q in elements}
    action = GroupAction(S, elements, mul, lab(Ident(x0)), functors)
    return Smash(X, x0, S, covering, action, opairs, mpairs)


def smash_quotient_map(sm: Smash) -> CatFunctor:
    """The canonical isomorphism ``(B # X) / G(x0, x0) -> B``, verified."""
    oc = orbit_category(sm.category, sm.action)
    F = CatFunctor(
        oc.quotient, sm.grading.source,
        {o: sm.object_pairs[o][0] for o in oc.quotient.objects},
        {m: sm.morphism_pairs[m][0] for m in oc.quotient.names()},
    )
    check_functor(F)
    if not F.is_bijective():
        raise InvalidInput("smash quotient is not isomorphic to the graded category")
    return F


def is_effective(X: Grading, strict: bool = False) -> bool:
    """Whether ``X`` is effective, decided by connectivity of its smash product.

    Gradings that are not bijective on objects (group gradings, say) are
    judged through the equivalent grading on ``B``'s own objects, whose smash
    product is the same category; pass ``strict=True`` to reject them instead.
    """
    G = X.groupoid
    if not is_connected(G.category):
        raise TargetNotConnected("grading groupoid is not connected")
    if not X.is_bijective_on_objects() and strict:
        raise NotBijectiveOnObjects("grading is not bijective on objects")
    return is_connected(smash_product(X, G.objects[0]).category)


# -- maps of gradings ----------------------------------------------------------

def grading_morphism(X: Grading, Y: Grading,
                     order: Optional[Sequence[str]] = None) -> Optional[CatFunctor]:
    """The unique ``Z`` with ``Z X = Y``, or ``None`` when there is none.

    ``Z`` is forced on degrees of ``B`` and then propagated through
    composition and inverses; ``order`` only changes the propagation order.
    """
    B = X.source
    G, H = X.groupoid, Y.groupoid
    GC, HC = G.category, H.category
    obj_map: Dict[str, str] = {}
    for b in B.objects:
        if obj_map.setdefault(X.functor.obj(b), Y.functor.obj(b)) != Y.functor.obj(b):
            return None
    if set(obj_map) != set(GC.objects):
        return None
    z: Dict[Arrow, Arrow] = {Ident(x): Ident(y) for x, y in obj_map.items()}

    def assign(a, v):
        if z.setdefault(a, v) != v:
            raise _Clash

    try:
        for f in (order or B.names()):
            assign(X.degree(f), Y.degree(f))
        changed = True
        while changed:
            changed = False
            known = list(z.items())
            for a, za in known:
                ia = G.inv(a)
                if ia not in z:
                    changed = True
                assign(ia, H.inv(za))
                for b, zb in known:
                    if GC.tgt(b) == GC.src(a):
                        ab = GC.comp(a, b)
                        if ab not in z:
                            changed = True
                        assign(ab, HC.comp(za, zb))
    except _Clash:
        return None
    if any(m not in z for m in GC.names()):
        return None
    Z = CatFunctor(GC, HC, obj_map, {m: z[m] for m in GC.names()})
    try:
        check_functor(Z)
    except NotFunctorial:
        return None
    return Z


class _Clash(Exception):
    pass


# -- gradings from Galois coverings -----------------------------------------

@dataclass(frozen=True, eq=False)
class AssociatedGrading:
    grading: Grading
    section: Mapping[str, str]
    deviation: Mapping[str, str]
    orbit: OrbitCategory

    @property
    def groupoid(self) -> CompleteGroupoid:
        return self.grading.groupoid

    def element(self, f: Arrow) -> str:
        return self.groupoid.element(self.grading.degree(f))


def _deviation(oc: OrbitCategory, section: Mapping[str, str]) -> Dict[str, str]:
    A = oc.action
    d = {}
    for x in oc.category.objects:
        rep = section[oc.object_orbit[x]]
        d[x] = next(g for g in A.elements if A.act_obj(g, rep) == x)
    return d


def associated_grading(oc: OrbitCategory, section: Optional[Mapping[str, str]] = None) -> AssociatedGrading:
    """The grading of ``C/Gamma`` by deviations: ``[f] -> d(y)^-1 d(x)``."""
    A = oc.action
    Q = oc.quotient
    if section is None:
        section = {o: o for o in Q.objects}
    section = dict(section)
    for o in Q.objects:
        if o not in section or oc.object_orbit.get(section[o]) != o:
            raise SectionNotEquivariant(f"section must pick an object in orbit {o!r}")
    d = _deviation(oc, section)
    for g in A.elements:
        for x in oc.category.objects:
            if d[A.act_obj(g, x)] != A.mul(g, d[x]):
                raise SectionNotEquivariant("deviation is not equivariant")
    group = FiniteGroup(A.elements, A.table, A.identity)
    G = complete_groupoid(Q.objects, group)
    C = oc.category
    degrees = {}
    for m in C.names():
        o = oc.morphism_orbit[m]
        x, y = C.src(m), C.tgt(m)
        val = G.arrow(oc.object_orbit[x], A.mul(A.inv(d[y]), d[x]), oc.object_orbit[y])
        if degrees.setdefault(o, val) != val:
            raise SectionNotEquivariant(f"degree of {o!r} depends on the representative")
    X = CatFunctor(Q, G.category, {o: o for o in Q.objects}, degrees)
    check_functor(X)
    return AssociatedGrading(Grading(X, G), section, d, oc)


def regraded(ag: AssociatedGrading, u: Mapping[str, str]) -> Dict[str, str]:
    """Degrees after moving the section by ``u``: ``u[y]^-1 X(f) u[x]``."""
    A = ag.orbit.action
    Q = ag.orbit.quotient
    return {f: A.mul(A.mul(A.inv(u[Q.tgt(f)]), ag.element(f)), u[Q.src(f)]) for f in Q.names()}


def roundtrip_iso(oc: OrbitCategory, section: Optional[Mapping[str, str]] = None,
                  q: Optional[str] = None) -> CatFunctor:
    """The isomorphism ``(C/Gamma) # X -> C``, ``([x], g) -> g [x]_0``.

    Verified to be an isomorphism of categories commuting with both
    projections to ``C/Gamma``.
    """
    ag = associated_grading(oc, section)
    G = ag.groupoid
    A = oc.action
    q = q or oc.quotient.objects[0]
    sm = smash_product(ag.grading, q)
    obj_map = {}
    for n, (o, g) in sm.object_pairs.items():
        obj_map[n] = A.act_obj(G.element(g), ag.section[o])
    mor_map = {}
    for n, (f, _) in sm.morphism_pairs.items():
        src = obj_map[sm.category.src(n)]
        rep = oc.translate(f, src)
        if oc.category.tgt(rep) != obj_map[sm.category.tgt(n)]:
            raise InvalidInput(f"representative of {f!r} misses the expected target")
        mor_map[n] = rep
    Phi = check_functor(CatFunctor(sm.category, oc.category, obj_map, mor_map))
    if not Phi.is_bijective():
        raise InvalidInput("round-trip functor is not bijective")
    if not compose_functors(oc.covering.functor, Phi).same_maps(sm.covering.functor):
        raise InvalidInput("round-trip functor does not commute with the projections")
    return Phi


# -- smash as a pullback ---------------------------------------------------------

def slice_groupoid(G: FiniteGroupoid, x0: str) -> Tuple[FiniteCategory, CatFunctor]:
    """Objects over ``x0`` and its covering of ``G``: ``a -> s(a)``, ``(a -> c) -> c^-1 a``."""
    GC = G.category
    lab = G.label
    over = [a for x in GC.objects for a in GC.hom(x, x0)]
    objs = tuple(lab(a) for a in over)
    morphs = []
    key = {}
    for a in over:
        for c in over:
            if a != c:
                n = f"{lab(a)}>{lab(c)}"
                morphs.append(Morphism(n, lab(a), lab(c)))
                key[(a, c)] = n
    table = {}
    for (a, c), n1 in key.items():
        for e in over:
            if e != c:
                n2 = key[(c, e)]
                table[(n2, n1)] = Ident(lab(a)) if e == a else key[(a, e)]
    S = FiniteCategory(objs, tuple(morphs), table)
    pi = CatFunctor(S, GC, {lab(a): GC.src(a) for a in over},
                    {n: GC.comp(G.inv(c), a) for (a, c), n in key.items()})
    return S, pi


def slice_pullback_check(X: Grading, x0: str) -> bool:
    """Check that ``B x_G (slice over x0)`` and ``B # X`` are isomorphic."""
    G = X.groupoid
    S, pi = slice_groupoid(G, x0)
    check_covering(check_functor(pi))
    fp = fibre_product(X.functor, pi)
    sm = smash_product(X, x0)
    lab = G.label
    obj_map = {}
    back = {v: k for k, v in sm.object_pairs.items()}
    by_label = {lab(a): a for x in G.category.objects for a in G.category.hom(x, x0)}
    for n, (b, a) in fp.object_pairs.items():
        obj_map[n] = back[(b, by_label[a])]
    mback = {v: k for k, v in sm.morphism_pairs.items()}
    mor_map = {}
    for n, (f, _) in fp.morphism_pairs.items():
        src_label = fp.object_pairs[fp.category.src(n)][1]
        mor_map[n] = mback[(f, by_label[src_label])]
    Phi = check_functor(CatFunctor(fp.category, sm.category, obj_map, mor_map))
    if not Phi.is_bijective():
        raise AssertionError("pullback and smash product are not isomorphic")
    if not compose_functors(sm.covering.functor, Phi).same_maps(fp.left):
        raise AssertionError("isomorphism does not commute with the projections")
    return True


def coset_components(X: Grading, x0: str) -> List[List[str]]:
    return connected_components(smash_product(X, x0).category)
