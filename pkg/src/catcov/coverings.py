"""Coverings of finite categories.

Stars, covering and Galois checks, automorphism groups found by star
transport, orbit categories of free actions, pointed lifts, the
homomorphism induced by a map of Galois coverings, and pullbacks.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Tuple

from .category import (
    Arrow,
    CatFunctor,
    FiniteCategory,
    Ident,
    Morphism,
    check_functor,
    compose_functors,
    identity_functor,
    is_connected,
)
from .errors import (
    ActionNotFree,
    FibreMismatch,
    InvalidInput,
    NotConnected,
    NotEquivariant,
    NotFunctorial,
    NotSurjectiveOnObjects,
    ObjectSetMismatch,
    StarNotInjective,
    StarNotSurjective,
)


@dataclass(frozen=True)
class Star:
    obj: str
    source_star: Tuple[Arrow, ...]
    target_star: Tuple[Arrow, ...]

    @property
    def tagged(self) -> List[Tuple[str, Arrow]]:
        """The star proper: a loop appears once per tag."""
        return [("s", a) for a in self.source_star] + [("t", a) for a in self.target_star]

    def __len__(self):
        return len(self.source_star) + len(self.target_star)


def star(C: FiniteCategory, x: str) -> Star:
    return Star(x, (Ident(x), *C.out(x)), (Ident(x), *C.into(x)))


def arrow_label(a: Arrow) -> str:
    return str(a) if isinstance(a, Ident) else a


# -- coverings ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CoveringFunctor:
    functor: CatFunctor
    fibres: Mapping[str, Tuple[str, ...]]

    @property
    def source(self) -> FiniteCategory:
        return self.functor.source

    @property
    def target(self) -> FiniteCategory:
        return self.functor.target

    @cached_property
    def _lifts(self):
        F = self.functor
        up, down = {}, {}
        for c in self.source.objects:
            st = star(self.source, c)
            for a in st.source_star:
                up[(c, F(a))] = a
            for a in st.target_star:
                down[(c, F(a))] = a
        return up, down

    def lift_from(self, c: str, b: Arrow) -> Arrow:
        """The unique morphism with source ``c`` lying over ``b``."""
        return self._lifts[0][(c, b)]

    def lift_into(self, c: str, b: Arrow) -> Arrow:
        """The unique morphism with target ``c`` lying over ``b``."""
        return self._lifts[1][(c, b)]

    def fibre(self, b: str) -> Tuple[str, ...]:
        return self.fibres[b]


def check_covering(F: CatFunctor) -> CoveringFunctor:
    """Verify that ``F`` is a covering: onto on objects and bijective on stars.

    Both the source and the target stars are checked, even over groupoids
    where one of them would suffice.
    """
    C, B = F.source, F.target
    fibres: Dict[str, List[str]] = {b: [] for b in B.objects}
    for c in C.objects:
        fibres[F.obj(c)].append(c)
    missing = [b for b, fib in fibres.items() if not fib]
    if missing:
        raise NotSurjectiveOnObjects(f"objects {missing} have empty fibres")
    for c in C.objects:
        sc, sb = star(C, c), star(B, F.obj(c))
        for tag, mine, theirs in (("s", sc.source_star, sb.source_star),
                                  ("t", sc.target_star, sb.target_star)):
            seen: Dict[Arrow, Arrow] = {}
            for a in mine:
                img = F(a)
                if img in seen:
                    raise StarNotInjective(
                        f"{seen[img]} and {a} at {c!r} both map to {img} ({tag}-star)",
                        obj=c, pair=(seen[img], a))
                seen[img] = a
            for b in theirs:
                if b not in seen:
                    raise StarNotSurjective(
                        f"{b} has no lift in the {tag}-star of {c!r}", obj=c, missing=b)
    return CoveringFunctor(F, {b: tuple(v) for b, v in fibres.items()})


def covering_report(P: CoveringFunctor, action: "GroupAction | None" = None) -> dict:
    rep = {
        "format": "catcov-covering/1",
        "fibres": {b: list(v) for b, v in P.fibres.items()},
        "stars": {c: len(star(P.source, c)) for c in P.source.objects},
        "connected": is_connected(P.source),
    }
    if action is None and rep["connected"]:
        action = aut_group(P)
    if action is not None:
        rep["automorphisms"] = action.to_dict()
        rep["galois"] = rep["connected"] and action.order == len(next(iter(P.fibres.values())))
    return rep


# -- group actions -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GroupAction:
    """A finite group acting on ``category`` by automorphisms."""

    category: FiniteCategory
    elements: Tuple[str, ...]
    table: Mapping[Tuple[str, str], str]
    identity: str
    functors: Mapping[str, CatFunctor]

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: str, b: str) -> str:
        return self.table[(a, b)]

    def inv(self, a: str) -> str:
        return next(b for b in self.elements if self.table[(a, b)] == self.identity)

    def act_obj(self, g: str, x: str) -> str:
        return self.functors[g].obj(x)

    def act(self, g: str, a: Arrow) -> Arrow:
        return self.functors[g](a)

    def is_free(self) -> bool:
        return all(self.act_obj(g, x) != x
                   for g in self.elements if g != self.identity
                   for x in self.category.objects)

    def check(self) -> "GroupAction":
        els = set(self.elements)
        for a in self.elements:
            for b in self.elements:
                if self.table.get((a, b)) not in els:
                    raise InvalidInput(f"group table lacks {a}*{b}")
        for a in self.elements:
            for b in self.elements:
                for c in self.elements:
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                        raise InvalidInput("group table is not associative")
            if self.mul(self.identity, a) != a or self.mul(a, self.identity) != a:
                raise InvalidInput(f"{self.identity!r} is not the identity")
        for a in self.elements:
            check_functor(self.functors[a])
            if not self.functors[a].is_bijective():
                raise InvalidInput(f"element {a!r} does not act by an automorphism")
        if not self.functors[self.identity].same_maps(identity_functor(self.category)):
            raise InvalidInput("the identity element must act trivially")
        for a in self.elements:
            for b in self.elements:
                lhs = compose_functors(self.functors[a], self.functors[b])
                if not lhs.same_maps(self.functors[self.mul(a, b)]):
                    raise InvalidInput(f"action is not a homomorphism at ({a}, {b})")
        return self

    def to_dict(self) -> dict:
        return {
            "format": "catcov-action/1",
            "elements": list(self.elements),
            "table": {f"{a},{b}": self.mul(a, b) for a in self.elements for b in self.elements},
            "functors": {
                g: {
                    "object_map": dict(F.object_map),
                    "morphism_map": {k: arrow_label(v) for k, v in F.morphism_map.items()},
                }
                for g, F in self.functors.items()
            },
        }


def trivial_action(C: FiniteCategory, label: str = "1") -> GroupAction:
    return GroupAction(C, (label,), {(label, label): label}, label, {label: identity_functor(C)})


# -- lifting and automorphisms -------------------------------------------------

def lift_pointed(F: CoveringFunctor, G: CoveringFunctor, c: str, d: str,
                 rng: Optional[random.Random] = None) -> Optional[CatFunctor]:
    """The unique ``H`` with ``G H = F`` and ``H(c) = d``, or ``None``.

    ``H`` is built by transporting along stars outward from ``c``; ``rng``
    randomizes the traversal order (the answer must not depend on it).
    """
    if F.functor.obj(c) != G.functor.obj(d):
        raise FibreMismatch(f"{c!r} and {d!r} lie over different objects")
    C, D = F.source, G.source
    if not is_connected(C):
        raise NotConnected("source of the lifted covering must be connected")
    obj_map = {c: d}
    mor_map: Dict[str, Arrow] = {}
    frontier = [c]
    while frontier:
        u = frontier.pop(rng.randrange(len(frontier))) if rng else frontier.pop(0)
        hu = obj_map[u]
        moves = [(m, "s") for m in C.out(u)] + [(m, "t") for m in C.into(u)]
        if rng:
            rng.shuffle(moves)
        for m, tag in moves:
            b = F.functor(m)
            try:
                g = G.lift_from(hu, b) if tag == "s" else G.lift_into(hu, b)
            except KeyError:
                return None
            if mor_map.setdefault(m, g) != g:
                return None
            v = C.tgt(m) if tag == "s" else C.src(m)
            w = D.tgt(g) if tag == "s" else D.src(g)
            if v in obj_map:
                if obj_map[v] != w:
                    return None
            else:
                obj_map[v] = w
                frontier.append(v)
    H = CatFunctor(C, D, {x: obj_map[x] for x in C.objects},
                   {m: mor_map[m] for m in C.names()})
    try:
        check_functor(H)
    except NotFunctorial:
        return None
    return H


def aut_group(F: CoveringFunctor) -> GroupAction:
    """Automorphisms of a connected covering, each named by the image of the
    first object of the covering category."""
    C = F.source
    if not is_connected(C):
        raise NotConnected("automorphism search needs a connected covering")
    c = C.objects[0]
    autos: Dict[str, CatFunctor] = {}
    for c2 in F.fibre(F.functor.obj(c)):
        H = lift_pointed(F, F, c, c2)
        if H is not None and H.is_bijective():
            autos[c2] = H
    elements = tuple(autos)
    table = {(a, b): autos[a].obj(autos[b].obj(c)) for a in elements for b in elements}
    return GroupAction(C, elements, table, c, autos)


def is_galois(F: CoveringFunctor) -> bool:
    if not is_connected(F.source):
        return False
    b = F.functor.obj(F.source.objects[0])
    return aut_group(F).order == len(F.fibre(b))


# -- orbit categories -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class OrbitCategory:
    """``C/Gamma`` together with its projection and orbit bookkeeping.

    Orbits are named after their least-ordered object; a morphism orbit is
    named after its member whose source is that object.
    """

    category: FiniteCategory
    action: GroupAction
    quotient: FiniteCategory
    covering: CoveringFunctor
    object_orbit: Mapping[str, str]
    morphism_orbit: Mapping[str, str]

    def __iter__(self):
        return iter((self.quotient, self.covering))

    def orbit_members(self, orbit_obj: str) -> List[str]:
        return [x for x, o in self.object_orbit.items() if o == orbit_obj]

    def translate(self, orbit_mor: Arrow, src: str) -> Arrow:
        """The member of a morphism orbit with the given source."""
        return self.covering.lift_from(src, orbit_mor)


def orbit_category(C: FiniteCategory, A: GroupAction) -> OrbitCategory:
    if not A.is_free():
        raise ActionNotFree("the group does not act freely on objects")
    obj_orbit: Dict[str, str] = {}
    for x in C.objects:
        if x not in obj_orbit:
            for g in A.elements:
                obj_orbit[A.act_obj(g, x)] = x
    mor_orbit: Dict[str, str] = {}
    reps: List[str] = []
    for m in C.names():
        if m in mor_orbit:
            continue
        members = {A.act(g, m) for g in A.elements}
        rep = next(n for n in members if C.src(n) == obj_orbit[C.src(n)])
        reps.append(rep)
        for n in members:
            mor_orbit[n] = rep
    by_src = {(mor_orbit[m], C.src(m)): m for m in C.names()}
    morphs = tuple(Morphism(r, obj_orbit[C.src(r)], obj_orbit[C.tgt(r)]) for r in reps)
    table = {}
    for g in morphs:
        for f in morphs:
            if f.tgt != g.src:
                continue
            y = C.tgt(f.name)
            g2 = by_src[(g.name, y)]
            h = C.comp(g2, f.name)
            table[(g.name, f.name)] = Ident(f.src) if isinstance(h, Ident) else mor_orbit[h]
    objects = tuple(x for x in C.objects if obj_orbit[x] == x)
    Q = FiniteCategory(objects, morphs, table)
    P = CatFunctor(C, Q, {x: obj_orbit[x] for x in C.objects},
                   {m: mor_orbit[m] for m in C.names()})
    return OrbitCategory(C, A, Q, check_covering(P), obj_orbit, mor_orbit)


# -- maps of Galois coverings ----------------------------------------------------

@dataclass(frozen=True)
class GroupHomomorphism:
    source: GroupAction
    target: GroupAction
    mapping: Mapping[str, str]
    kernel: Tuple[str, ...]

    @property
    def surjective(self) -> bool:
        return set(self.mapping.values()) == set(self.target.elements)


def lambda_of(H: CatFunctor, F: CoveringFunctor, G: CoveringFunctor,
              gamma: Optional[GroupAction] = None,
              gamma2: Optional[GroupAction] = None) -> GroupHomomorphism:
    """The homomorphism ``aut F -> aut G`` with ``H g = lambda(g) H``."""
    if not compose_functors(G.functor, H).same_maps(F.functor):
        raise InvalidInput("H is not a map of coverings F -> G")
    gamma = gamma or aut_group(F)
    gamma2 = gamma2 or aut_group(G)
    c0 = F.source.objects[0]
    mapping = {}
    for g in gamma.elements:
        Hg = compose_functors(H, gamma.functors[g])
        target = Hg.obj(c0)
        match = [t for t in gamma2.elements if gamma2.act_obj(t, H.obj(c0)) == target]
        if len(match) != 1:
            raise NotEquivariant(f"no unique automorphism matches H.{g}")
        t = match[0]
        if not compose_functors(gamma2.functors[t], H).same_maps(Hg):
            raise NotEquivariant(f"H.{g} and {t}.H agree on {c0!r} but not globally")
        mapping[g] = t
    for a in gamma.elements:
        for b in gamma.elements:
            if mapping[gamma.mul(a, b)] != gamma2.mul(mapping[a], mapping[b]):
                raise NotEquivariant("lambda is not a homomorphism")
    kernel = tuple(g for g in gamma.elements if mapping[g] == gamma2.identity)
    fixed = tuple(g for g in gamma.elements
                  if compose_functors(H, gamma.functors[g]).same_maps(H))
    assert kernel == fixed
    hom = GroupHomomorphism(gamma, gamma2, mapping, kernel)
    assert hom.surjective
    return hom


# -- pullbacks -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FibreProduct:
    category: FiniteCategory
    left: CatFunctor
    right: CatFunctor
    object_pairs: Mapping[str, Tuple[str, str]]
    morphism_pairs: Mapping[str, Tuple[Arrow, Arrow]]


def _pair_name(a: Arrow, b: Arrow) -> str:
    return f"({arrow_label(a)},{arrow_label(b)})"


def fibre_product(theta: CatFunctor, G: CatFunctor) -> FibreProduct:
    """``B x_D E`` for ``theta: B -> D`` and ``G: E -> D``."""
    B, E = theta.source, G.source
    objs = []
    pairs = {}
    for b in B.objects:
        for e in E.objects:
            if G.obj(e) == theta.obj(b):
                name = f"({b},{e})"
                objs.append(name)
                pairs[name] = (b, e)
    obj_of = {v: k for k, v in pairs.items()}
    e_out: Dict[str, List[Arrow]] = {e: [Ident(e), *E.out(e)] for e in E.objects}
    morphs = []
    mpairs: Dict[str, Tuple[Arrow, Arrow]] = {}
    for f in B.arrows():
        tf = theta(f)
        for e in E.objects:
            if (B.src(f), e) not in obj_of:
                continue
            for h in e_out[e]:
                if isinstance(f, Ident) and isinstance(h, Ident):
                    continue
                if G(h) == tf:
                    name = _pair_name(f, h)
                    morphs.append(Morphism(name, obj_of[(B.src(f), e)],
                                           obj_of[(B.tgt(f), E.tgt(h))]))
                    mpairs[name] = (f, h)
    index = {v: k for k, v in mpairs.items()}
    table = {}
    for g in morphs:
        for f in morphs:
            if f.tgt == g.src:
                (f1, f2), (g1, g2) = mpairs[f.name], mpairs[g.name]
                h1, h2 = B.comp(g1, f1), E.comp(g2, f2)
                if isinstance(h1, Ident) and isinstance(h2, Ident):
                    table[(g.name, f.name)] = Ident(f.src)
                else:
                    table[(g.name, f.name)] = index[(h1, h2)]
    P = FiniteCategory(tuple(objs), tuple(morphs), table)
    left = CatFunctor(P, B, {n: p[0] for n, p in pairs.items()},
                      {n: p[0] for n, p in mpairs.items()})
    right = CatFunctor(P, E, {n: p[1] for n, p in pairs.items()},
                       {n: p[1] for n, p in mpairs.items()})
    return FibreProduct(P, left, right, pairs, mpairs)


def pullback_covering(theta: CatFunctor, G: CoveringFunctor) -> CoveringFunctor:
    """Pull a covering of ``D`` back along an identity-on-objects ``theta: B -> D``."""
    B, D = theta.source, theta.target
    if set(B.objects) != set(D.objects) or any(theta.obj(b) != b for b in B.objects):
        raise ObjectSetMismatch("theta must be the identity on a shared object set")
    if G.target is not D and G.target.objects != D.objects:
        raise ObjectSetMismatch("G must cover the target of theta")
    fp = fibre_product(theta, G.functor)
    return check_covering(fp.left)
