"""Finite balls in the universal cover, and Cayley-graph doubles.

When the fundamental group of ``B`` at ``b0`` is free, a morphism
``gamma: b -> b0`` of the fundamental groupoid is coded as a reduced word
``w`` (the tree path from ``b`` is implicit). The universal cover has
objects ``(b, w)`` and a morphism ``f: (b, w) -> (c, w g_f^-1)`` for each
``f: b -> c``, where ``g_f`` is the group element of ``f``. The ball of
radius ``r`` keeps the words of length at most ``r``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import words as W
from .category import (
    Arrow,
    CatFunctor,
    FiniteCategory,
    Ident,
    Morphism,
    check_functor,
    compose_functors,
    is_connected,
)
from .coverings import CoveringFunctor, check_covering, star
from .errors import BudgetOrNonFree, EmptyE, FibreMismatch, InvalidInput, NotConnected
from .fractions import pi1_presentation
from .presentation import DEFAULT_TIETZE_STEPS, GroupPresentation


@dataclass(frozen=True, eq=False)
class CoverBall:
    category: FiniteCategory
    boundary: Tuple[str, ...]
    projection: CatFunctor
    coords: Mapping[str, Tuple[str, W.Word]]
    presentation: GroupPresentation
    base: str
    radius: int

    @property
    def base_category(self) -> FiniteCategory:
        return self.projection.target

    def interior(self) -> List[str]:
        bd = set(self.boundary)
        return [x for x in self.category.objects if x not in bd]

    def object_at(self, b: str, w: W.Word) -> Optional[str]:
        return self._index.get((b, W.reduce(w)))

    @property
    def _index(self) -> Dict[Tuple[str, W.Word], str]:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {v: k for k, v in self.coords.items()}
            self.__dict__["_idx"] = idx
        return idx

    def to_dict(self) -> dict:
        C = self.category
        comps = []
        for (g, f), h in C.table.items():
            comps.append({"g": g, "f": f, "gf": "ID" if isinstance(h, Ident) else h})
        P = self.projection
        return {
            "format": "catcov-category/1",
            "mode": "explicit",
            "objects": list(C.objects),
            "morphisms": [{"name": m.name, "src": m.src, "tgt": m.tgt} for m in C.morphisms],
            "compositions": comps,
            "boundary": list(self.boundary),
            "projection": {
                "object_map": dict(P.object_map),
                "morphism_map": {m: (f"ID:{v.obj}" if isinstance(v, Ident) else v)
                                 for m, v in P.morphism_map.items()},
            },
        }


def _free_presentation(B: FiniteCategory, b0: str, max_steps: int) -> GroupPresentation:
    P = pi1_presentation(B, b0, max_steps)
    if P.exhausted or P.relators:
        raise BudgetOrNonFree(
            f"fundamental group at {b0!r} did not simplify to a free presentation "
            f"({len(P.relators)} relators left)")
    return P


def universal_ball(B: FiniteCategory, b0: str, radius: int,
                   max_steps: int = DEFAULT_TIETZE_STEPS) -> CoverBall:
    if radius < 0:
        raise InvalidInput("radius must be non-negative")
    if not is_connected(B):
        raise NotConnected("category is not connected")
    P = _free_presentation(B, b0, max_steps)
    ball = W.all_reduced_words(P.generators, radius)
    inball = set(ball)
    objs: List[str] = []
    coords: Dict[str, Tuple[str, W.Word]] = {}
    oname: Dict[Tuple[str, W.Word], str] = {}
    for b in B.objects:
        for w in ball:
            n = f"({b},{W.format_word(w)})"
            objs.append(n)
            coords[n] = (b, w)
            oname[(b, w)] = n
    step = {f: W.inverse(P.substitution[f]) for f in B.names()}
    morphs: List[Morphism] = []
    mname: Dict[Tuple[str, W.Word], str] = {}
    proj_m: Dict[str, str] = {}
    for m in B.morphisms:
        for w in ball:
            w2 = W.mul(w, step[m.name])
            if w2 in inball:
                n = f"{m.name}@{W.format_word(w)}"
                morphs.append(Morphism(n, oname[(m.src, w)], oname[(m.tgt, w2)]))
                mname[(m.name, w)] = n
                proj_m[n] = m.name
    table = {}
    for (g, f), h in B.table.items():
        for w in ball:
            if (f, w) not in mname:
                continue
            w2 = W.mul(w, step[f])
            if (g, w2) not in mname:
                continue
            table[(mname[(g, w2)], mname[(f, w)])] = (
                Ident(oname[(B.src(f), w)]) if isinstance(h, Ident) else mname[(h, w)])
    C = FiniteCategory(tuple(objs), tuple(morphs), table)
    proj = CatFunctor(C, B, {n: b for n, (b, _) in coords.items()}, proj_m)
    boundary = tuple(x for x in objs if len(star(C, x)) != len(star(B, coords[x][0])))
    return CoverBall(C, boundary, proj, coords, P, b0, radius)


def check_interior(ball: CoverBall) -> bool:
    """Stars of interior objects map bijectively, tag by tag, onto stars in the base."""
    B, C, F = ball.base_category, ball.category, ball.projection
    for x in ball.interior():
        sx, sb = star(C, x), star(B, F.obj(x))
        for mine, theirs in ((sx.source_star, sb.source_star), (sx.target_star, sb.target_star)):
            imgs = [F(a) for a in mine]
            if len(set(imgs)) != len(imgs) or set(imgs) != set(theirs):
                return False
    return True


def is_full_subball(small: CoverBall, big: CoverBall) -> bool:
    """Whether ``small`` sits in ``big`` as a full subcategory on its objects."""
    emb = {x: big.object_at(*small.coords[x]) for x in small.category.objects}
    if None in emb.values():
        return False
    S, L = small.category, big.category
    for x in S.objects:
        for y in S.objects:
            mine = {small.projection(a) for a in S.hom(x, y)}
            theirs = {big.projection(a) for a in L.hom(emb[x], emb[y])}
            if mine != theirs:
                return False
    return True


def deck_translate(ball: CoverBall, g: W.Word, target: CoverBall) -> CatFunctor:
    """Left translation ``(b, w) -> (b, g w)`` of the interior of ``ball`` into ``target``.

    The source of the returned functor is the full subcategory on the
    interior objects; each morphism goes to the one over the same base
    morphism, so the projections commute by construction.
    """
    g = W.reduce(g)
    C, T = _full_subcategory(ball.category, ball.interior()), target.category
    inner = set(C.objects)
    obj_map = {}
    for x in inner:
        b, w = ball.coords[x]
        y = target.object_at(b, W.mul(g, w))
        if y is None:
            raise InvalidInput(f"translate of {x!r} leaves the target ball")
        obj_map[x] = y
    mor_map = {}
    for m in C.morphisms:
        if m.src in inner and m.tgt in inner:
            f = ball.projection(m.name)
            img = [a for a in T.out(obj_map[m.src]) if target.projection(a) == f]
            if len(img) != 1 or T.tgt(img[0]) != obj_map[m.tgt]:
                raise InvalidInput(f"translate of {m.name!r} is not a morphism of the target")
            mor_map[m.name] = img[0]
    return check_functor(CatFunctor(C, T, obj_map, mor_map))


def _full_subcategory(C: FiniteCategory, objects: Sequence[str]) -> FiniteCategory:
    keep = set(objects)
    morphs = tuple(m for m in C.morphisms if m.src in keep and m.tgt in keep)
    names = {m.name for m in morphs}
    table = {k: v for k, v in C.table.items() if k[0] in names and k[1] in names}
    return FiniteCategory(tuple(x for x in C.objects if x in keep), morphs, table)


# -- Kronecker categories --------------------------------------------------------

def kronecker(E: Sequence[str], x: str = "x", x0: str = "x0") -> FiniteCategory:
    """``K_E``: two objects and the arrows ``E`` all from ``x`` to ``x0``."""
    if not E:
        raise EmptyE("K_E needs at least one arrow")
    return FiniteCategory((x, x0), tuple(Morphism(e, x, x0) for e in E), {}).check()


@dataclass(frozen=True, eq=False)
class CayleyDouble:
    category: FiniteCategory
    vertices: Tuple[W.Word, ...]
    edges: Tuple[Tuple[W.Word, str, W.Word], ...]
    isomorphism: CatFunctor

    def to_quiver(self) -> dict:
        C = self.category
        return {
            "objects": list(C.objects),
            "arrows": [{"name": m.name, "src": m.src, "tgt": m.tgt} for m in C.morphisms],
        }


def cayley_double(E: Sequence[str], radius: int, x: str = "x", x0: str = "x0") -> Tuple[CoverBall, CayleyDouble]:
    """Double of the radius-``radius`` Cayley ball of the free group on ``E[1:]``.

    The generator named ``beta`` stands for the loop ``alpha . beta'`` at
    ``x0`` (back along ``beta``, then out along ``alpha = E[0]``). The
    arrow ``beta@g`` runs from ``(x, g)`` to ``(x0, g beta)`` and ``alpha@g``
    from ``(x, g)`` to ``(x0, g)``. The double is
    checked to be isomorphic to ``universal_ball(K_E, x0, radius)``, which
    is returned alongside it.
    """
    if not E:
        raise EmptyE("E must contain at least one arrow")
    E = list(E)
    alpha, gens = E[0], E[1:]
    verts = W.all_reduced_words(gens, radius)
    inball = set(verts)
    edges = []
    for g in verts:
        edges.append((g, alpha, g))
        for b in gens:
            h = W.mul(g, ((b, 1),))
            if h in inball:
                edges.append((g, b, h))
    objs = tuple(f"({side},{W.format_word(g)})" for side in (x, x0) for g in verts)
    morphs = tuple(Morphism(f"{a}@{W.format_word(g)}", f"({x},{W.format_word(g)})",
                            f"({x0},{W.format_word(h)})") for g, a, h in edges)
    D = FiniteCategory(objs, morphs, {}).check()

    K = kronecker(E, x, x0)
    ball = universal_ball(K, x0, radius)
    P = ball.presentation
    # alpha . beta' in ball coordinates
    images = {b: W.mul(W.inverse(P.substitution[b]), P.substitution[alpha]) for b in gens}
    obj_map, mor_map = {}, {}
    for side in (x, x0):
        for g in verts:
            w = W.substitute(g, images)
            y = ball.object_at(side, w)
            if y is None:
                raise InvalidInput(f"vertex {W.format_word(g)} has no counterpart in the ball")
            obj_map[f"({side},{W.format_word(g)})"] = y
    for (g, a, h), m in zip(edges, morphs):
        src = obj_map[m.src]
        cands = [f for f in ball.category.out(src) if ball.projection(f) == a]
        if len(cands) != 1 or ball.category.tgt(cands[0]) != obj_map[m.tgt]:
            raise InvalidInput(f"edge {m.name!r} has no counterpart in the ball")
        mor_map[m.name] = cands[0]
    iso = check_functor(CatFunctor(D, ball.category, obj_map, mor_map))
    if not iso.is_bijective():
        raise InvalidInput("Cayley double and universal ball are not isomorphic")
    return ball, CayleyDouble(D, tuple(verts), tuple(edges), iso)


# -- universality witness ------------------------------------------------------

def covers_all(ball: CoverBall, F, c: str, rng: Optional[random.Random] = None) -> CatFunctor:
    """The map of pointed coverings from the ball to ``F``, sending ``(b0, 1)`` to ``c``.

    Built by transporting along stars of ``F`` outward from the base point,
    then checked to be a functor commuting with the projections.
    """
    if not isinstance(F, CoveringFunctor):
        F = check_covering(F)
    C, B = ball.category, ball.base_category
    if F.target is not B and (F.target.objects != B.objects or F.target.names() != B.names()):
        raise InvalidInput("covering and ball lie over different categories")
    start = ball.object_at(ball.base, ())
    if F.functor.obj(c) != ball.base:
        raise FibreMismatch(f"{c!r} does not lie over {ball.base!r}")
    proj = ball.projection
    obj_map = {start: c}
    mor_map: Dict[str, Arrow] = {}
    frontier = [start]
    while frontier:
        u = frontier.pop(rng.randrange(len(frontier))) if rng else frontier.pop(0)
        hu = obj_map[u]
        moves = [(m, True) for m in C.out(u)] + [(m, False) for m in C.into(u)]
        for m, fwd in moves:
            g = F.lift_from(hu, proj(m)) if fwd else F.lift_into(hu, proj(m))
            if mor_map.setdefault(m, g) != g:
                raise InvalidInput(f"transport of {m!r} is inconsistent")
            v = C.tgt(m) if fwd else C.src(m)
            w = F.source.tgt(g) if fwd else F.source.src(g)
            if v in obj_map:
                if obj_map[v] != w:
                    raise InvalidInput(f"transport reaches {v!r} twice with different images")
            else:
                obj_map[v] = w
                frontier.append(v)
    if len(obj_map) != len(C.objects):
        raise NotConnected("ball is not connected, transport cannot reach every object")
    H = check_functor(CatFunctor(C, F.source, obj_map, {m: mor_map[m] for m in C.names()}))
    if not compose_functors(F.functor, H).same_maps(proj):
        raise InvalidInput("map does not commute with the projections")
    return H

