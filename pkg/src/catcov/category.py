"""Finite small categories, functors, congruences and quotient categories.

Identities are never stored. A composite that happens to be an identity is
the token :class:`Ident`, and every API that accepts a morphism also accepts
an :class:`Ident`. Iteration orders are always the declared orders.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .errors import (
    DuplicateName,
    EndpointMismatch,
    InvalidInput,
    MissingComposite,
    NotAssociative,
    NotFunctorial,
    PairEndpointMismatch,
)


@dataclass(frozen=True, order=True)
class Ident:
    """The identity morphism at ``obj``."""

    obj: str

    def __str__(self):
        return f"ID({self.obj})"


Arrow = Union[str, Ident]


@dataclass(frozen=True)
class Morphism:
    name: str
    src: str
    tgt: str


class UnionFind:
    def __init__(self, items=()):
        self.parent = {}
        for x in items:
            self.parent[x] = x

    def find(self, x):
        p = self.parent
        p.setdefault(x, x)
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def _check_unique(names, what):
    seen = set()
    for n in names:
        if n in seen:
            raise DuplicateName(f"duplicate {what} name {n!r}")
        seen.add(n)


@dataclass(frozen=True)
class FiniteCategory:
    """A finite category given by its non-identity morphisms and a composition table.

    ``table`` maps ``(g, f)`` (meaning ``g . f``, f applied first) to a
    morphism name or an :class:`Ident`. It is defined exactly on the
    composable pairs of non-identity morphisms.
    """

    objects: Tuple[str, ...]
    morphisms: Tuple[Morphism, ...]
    table: Mapping[Tuple[str, str], Arrow] = field(default_factory=dict)

    # -- indices ----------------------------------------------------------
    @cached_property
    def _by_name(self) -> Dict[str, Morphism]:
        return {m.name: m for m in self.morphisms}

    @cached_property
    def _out(self) -> Dict[str, List[str]]:
        d = {x: [] for x in self.objects}
        for m in self.morphisms:
            d[m.src].append(m.name)
        return d

    @cached_property
    def _into(self) -> Dict[str, List[str]]:
        d = {x: [] for x in self.objects}
        for m in self.morphisms:
            d[m.tgt].append(m.name)
        return d

    @cached_property
    def _object_index(self) -> Dict[str, int]:
        return {x: i for i, x in enumerate(self.objects)}

    @cached_property
    def _arrow_index(self) -> Dict[Arrow, int]:
        return {a: i for i, a in enumerate(self.arrows())}

    # -- queries ----------------------------------------------------------
    def has_object(self, x) -> bool:
        return x in self._object_index

    def morphism(self, name: str) -> Morphism:
        try:
            return self._by_name[name]
        except KeyError:
            raise InvalidInput(f"unknown morphism {name!r}") from None

    def names(self) -> List[str]:
        return [m.name for m in self.morphisms]

    def src(self, a: Arrow) -> str:
        if isinstance(a, Ident):
            return a.obj
        return self.morphism(a).src

    def tgt(self, a: Arrow) -> str:
        if isinstance(a, Ident):
            return a.obj
        return self.morphism(a).tgt

    def out(self, x: str) -> List[str]:
        """Non-identity morphisms with source ``x``."""
        return self._out[x]

    def into(self, x: str) -> List[str]:
        """Non-identity morphisms with target ``x``."""
        return self._into[x]

    def arrows(self) -> List[Arrow]:
        """All morphisms, identities first, in declared order."""
        return [Ident(x) for x in self.objects] + self.names()

    def arrow_key(self, a: Arrow) -> int:
        return self._arrow_index[a]

    def object_key(self, x: str) -> int:
        return self._object_index[x]

    def hom(self, x: str, y: str) -> List[Arrow]:
        res: List[Arrow] = [Ident(x)] if x == y else []
        res.extend(n for n in self._out[x] if self._by_name[n].tgt == y)
        return res

    def comp(self, g: Arrow, f: Arrow) -> Arrow:
        """``g . f`` (f first)."""
        if self.tgt(f) != self.src(g):
            raise EndpointMismatch(f"cannot compose {g} after {f}")
        if isinstance(f, Ident):
            return g
        if isinstance(g, Ident):
            return f
        try:
            return self.table[(g, f)]
        except KeyError:
            raise MissingComposite(f"no composite for ({g}, {f})") from None

    def composable_pairs(self) -> Iterable[Tuple[str, str]]:
        for f in self.morphisms:
            for g in self._out[f.tgt]:
                yield g, f.name

    def is_endo(self, a: Arrow) -> bool:
        return self.src(a) == self.tgt(a)

    def __len__(self):
        return len(self.morphisms)

    # -- validation -------------------------------------------------------
    def check(self) -> "FiniteCategory":
        """Check every structural invariant; return ``self``."""
        _check_unique(self.objects, "object")
        _check_unique(self.names(), "morphism")
        for m in self.morphisms:
            if m.src not in self._object_index or m.tgt not in self._object_index:
                raise EndpointMismatch(f"morphism {m.name!r} has an unknown endpoint")
        for (g, f), h in self.table.items():
            if g not in self._by_name or f not in self._by_name:
                raise InvalidInput(f"composition entry ({g}, {f}) names an unknown morphism")
            fm, gm = self._by_name[f], self._by_name[g]
            if fm.tgt != gm.src:
                raise EndpointMismatch(f"composition entry ({g}, {f}) is not composable")
            if isinstance(h, Ident):
                if not (h.obj == fm.src == gm.tgt):
                    raise EndpointMismatch(f"({g}, {f}) cannot compose to {h}")
            else:
                if h not in self._by_name:
                    raise InvalidInput(f"composite {h!r} is not a morphism")
                hm = self._by_name[h]
                if hm.src != fm.src or hm.tgt != gm.tgt:
                    raise EndpointMismatch(f"composite {h!r} of ({g}, {f}) has wrong endpoints")
        for g, f in self.composable_pairs():
            if (g, f) not in self.table:
                raise MissingComposite(f"composable pair ({g}, {f}) has no table entry")
        for g, f in self.composable_pairs():
            for h in self._out[self._by_name[g].tgt]:
                left = self.comp(h, self.comp(g, f))
                right = self.comp(self.comp(h, g), f)
                if left != right:
                    raise NotAssociative(
                        f"({h}.{g}).{f} = {right} but {h}.({g}.{f}) = {left}"
                    )
        return self


def make_category(
    objects: Sequence[str],
    morphisms: Sequence[Tuple[str, str, str]] = (),
    compositions: Mapping[Tuple[str, str], Arrow] | None = None,
    check: bool = True,
) -> FiniteCategory:
    """Build a category from plain tuples; ``"ID"`` in the table means identity."""
    morphs = tuple(Morphism(*m) for m in morphisms)
    srcs = {m.name: m.src for m in morphs}
    table = {}
    for (g, f), h in (compositions or {}).items():
        table[(g, f)] = Ident(srcs.get(f, "")) if h == "ID" else h
    C = FiniteCategory(tuple(objects), morphs, table)
    return C.check() if check else C


@dataclass(frozen=True)
class PresentedCategory:
    """A category presented by a quiver and path relations.

    Paths are in application order: ``("a", "c")`` is ``c . a``.
    """

    objects: Tuple[str, ...]
    arrows: Tuple[Morphism, ...]
    relations: Tuple[Tuple[Tuple[str, ...], Tuple[str, ...]], ...] = ()

    @cached_property
    def _by_name(self):
        return {a.name: a for a in self.arrows}

    def path_endpoints(self, path, default=None):
        if not path:
            return default
        for a, b in zip(path, path[1:]):
            if self._by_name[a].tgt != self._by_name[b].src:
                raise EndpointMismatch(f"path {list(path)} is not composable")
        return self._by_name[path[0]].src, self._by_name[path[-1]].tgt

    def check(self) -> "PresentedCategory":
        _check_unique(self.objects, "object")
        _check_unique([a.name for a in self.arrows], "arrow")
        objs = set(self.objects)
        for a in self.arrows:
            if a.src not in objs or a.tgt not in objs:
                raise EndpointMismatch(f"arrow {a.name!r} has an unknown endpoint")
        for lhs, rhs in self.relations:
            for n in (*lhs, *rhs):
                if n not in self._by_name:
                    raise InvalidInput(f"relation mentions unknown arrow {n!r}")
            if not lhs and not rhs:
                continue
            el = self.path_endpoints(lhs)
            er = self.path_endpoints(rhs)
            if el is None:
                el = er if er[0] == er[1] else None
            if er is None:
                er = el if el[0] == el[1] else None
            if el is None or er is None or el != er:
                raise EndpointMismatch(f"relation {list(lhs)} = {list(rhs)} has mismatched endpoints")
        return self


@dataclass(frozen=True)
class CatFunctor:
    source: FiniteCategory
    target: FiniteCategory
    object_map: Mapping[str, str]
    morphism_map: Mapping[str, Arrow]

    def obj(self, x: str) -> str:
        return self.object_map[x]

    def __call__(self, a: Arrow) -> Arrow:
        if isinstance(a, Ident):
            return Ident(self.object_map[a.obj])
        return self.morphism_map[a]

    def same_maps(self, other: "CatFunctor") -> bool:
        return (dict(self.object_map) == dict(other.object_map)
                and dict(self.morphism_map) == dict(other.morphism_map))

    def __eq__(self, other):
        if not isinstance(other, CatFunctor):
            return NotImplemented
        return self.same_maps(other)

    __hash__ = None

    def is_bijective(self) -> bool:
        objs = set(self.object_map.values())
        arrows = set(self.morphism_map.values())
        return (
            len(objs) == len(self.source.objects) == len(self.target.objects)
            and len(arrows) == len(self.source.morphisms) == len(self.target.morphisms)
            and not any(isinstance(a, Ident) for a in arrows)
        )

    def inverse(self) -> "CatFunctor":
        if not self.is_bijective():
            raise InvalidInput("functor is not an isomorphism")
        return CatFunctor(
            self.target,
            self.source,
            {v: k for k, v in self.object_map.items()},
            {v: k for k, v in self.morphism_map.items()},
        )


def check_functor(F: CatFunctor) -> CatFunctor:
    """Verify functoriality of ``F``; raise :class:`NotFunctorial` otherwise."""
    S, T = F.source, F.target
    for x in S.objects:
        if x not in F.object_map:
            raise NotFunctorial(f"object {x!r} has no image")
        if not T.has_object(F.object_map[x]):
            raise NotFunctorial(f"image of {x!r} is not an object of the target")
    for m in S.morphisms:
        if m.name not in F.morphism_map:
            raise NotFunctorial(f"morphism {m.name!r} has no image")
        a = F.morphism_map[m.name]
        if isinstance(a, Ident):
            if not T.has_object(a.obj):
                raise NotFunctorial(f"image of {m.name!r} is not a target morphism")
        elif a not in T._by_name:
            raise NotFunctorial(f"image of {m.name!r} is not a target morphism")
        if T.src(a) != F.obj(m.src) or T.tgt(a) != F.obj(m.tgt):
            raise NotFunctorial(f"{m.name!r} and its image {a} have incompatible endpoints")
    for (g, f), h in S.table.items():
        lhs = F(h)
        rhs = T.comp(F(g), F(f))
        if lhs != rhs:
            raise NotFunctorial(f"F({g}.{f}) = {lhs} but F({g}).F({f}) = {rhs}", pair=(g, f))
    return F


def identity_functor(C: FiniteCategory) -> CatFunctor:
    return CatFunctor(C, C, {x: x for x in C.objects}, {m: m for m in C.names()})


def compose_functors(G: CatFunctor, F: CatFunctor) -> CatFunctor:
    """``G . F``."""
    return CatFunctor(
        F.source,
        G.target,
        {x: G.obj(F.obj(x)) for x in F.source.objects},
        {m: G(F(m)) for m in F.source.names()},
    )


def connected_components(C: FiniteCategory) -> List[List[str]]:
    uf = UnionFind(C.objects)
    for m in C.morphisms:
        uf.union(m.src, m.tgt)
    comps: Dict[str, List[str]] = {}
    for x in C.objects:
        comps.setdefault(uf.find(x), []).append(x)
    return list(comps.values())


def is_connected(C: FiniteCategory) -> bool:
    return len(connected_components(C)) == 1


# -- congruences --------------------------------------------------------------

@dataclass(frozen=True)
class Congruence:
    """A partition of all arrows (identities included) of ``category``."""

    category: FiniteCategory
    classes: Tuple[Tuple[Arrow, ...], ...]

    @cached_property
    def _index(self) -> Dict[Arrow, int]:
        return {a: i for i, cls in enumerate(self.classes) for a in cls}

    def class_of(self, a: Arrow) -> int:
        return self._index[a]

    def related(self, a: Arrow, b: Arrow) -> bool:
        return self._index[a] == self._index[b]

    def is_congruence(self) -> bool:
        C = self.category
        for cls in self.classes:
            a = cls[0]
            for b in cls[1:]:
                if C.src(a) != C.src(b) or C.tgt(a) != C.tgt(b):
                    return False
                for g in C.out(C.tgt(a)):
                    if not self.related(C.comp(g, a), C.comp(g, b)):
                        return False
                for f in C.into(C.src(a)):
                    if not self.related(C.comp(a, f), C.comp(b, f)):
                        return False
        return True

    @classmethod
    def from_union_find(cls, C: FiniteCategory, uf: UnionFind) -> "Congruence":
        groups: Dict[Arrow, List[Arrow]] = {}
        for a in C.arrows():
            groups.setdefault(uf.find(a), []).append(a)
        return cls(C, tuple(tuple(g) for g in groups.values()))

    @classmethod
    def discrete(cls, C: FiniteCategory) -> "Congruence":
        return cls(C, tuple((a,) for a in C.arrows()))


def _as_arrow(C: FiniteCategory, a) -> Arrow:
    if isinstance(a, Ident):
        return a
    if isinstance(a, str) and a.startswith("ID:"):
        return Ident(a[3:])
    C.morphism(a)
    return a


def congruence_close(C: FiniteCategory, R: Iterable[Tuple[Arrow, Arrow]]) -> Congruence:
    """Smallest congruence on ``C`` containing the pairs ``R``."""
    uf = UnionFind(C.arrows())
    for a, b in R:
        a, b = _as_arrow(C, a), _as_arrow(C, b)
        if C.src(a) != C.src(b) or C.tgt(a) != C.tgt(b):
            raise PairEndpointMismatch(f"{a} and {b} are not parallel")
        uf.union(a, b)
    changed = True
    while changed:
        changed = False
        groups: Dict[Arrow, List[Arrow]] = {}
        for a in C.arrows():
            groups.setdefault(uf.find(a), []).append(a)
        for members in groups.values():
            a = members[0]
            for b in members[1:]:
                for g in C.out(C.tgt(a)):
                    changed |= uf.union(C.comp(g, a), C.comp(g, b))
                for f in C.into(C.src(a)):
                    changed |= uf.union(C.comp(a, f), C.comp(b, f))
    return Congruence.from_union_find(C, uf)


def quotient_category(C: FiniteCategory, q: Congruence) -> Tuple[FiniteCategory, CatFunctor]:
    """The quotient ``C/~`` and its projection functor.

    A class containing an identity becomes that identity; any other class is
    named after its first member in declared order.
    """
    rep: Dict[int, Arrow] = {}
    for i, cls in enumerate(q.classes):
        idents = [a for a in cls if isinstance(a, Ident)]
        rep[i] = idents[0] if idents else cls[0]
    morphs = [
        Morphism(rep[i], C.src(rep[i]), C.tgt(rep[i]))
        for i in range(len(q.classes))
        if not isinstance(rep[i], Ident)
    ]
    table = {}
    for g in morphs:
        for f in morphs:
            if f.tgt == g.src:
                table[(g.name, f.name)] = rep[q.class_of(C.comp(g.name, f.name))]
    Q = FiniteCategory(C.objects, tuple(morphs), table)
    proj = CatFunctor(C, Q, {x: x for x in C.objects},
                      {m: rep[q.class_of(m)] for m in C.names()})
    return Q, proj
