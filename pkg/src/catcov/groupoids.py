"""Finite groups and groupoids, normal subgroupoids, kernels and quotients."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import FrozenSet, List, Mapping, Optional, Sequence, Tuple

from .category import (
    Arrow,
    CatFunctor,
    Congruence,
    FiniteCategory,
    Ident,
    Morphism,
    UnionFind,
    check_functor,
    quotient_category,
)
from .errors import InvalidInput, NotAGroupoid, NotInjectiveOnObjects


@dataclass(frozen=True)
class FiniteGroup:
    elements: Tuple[str, ...]
    table: Mapping[Tuple[str, str], str]
    identity: str

    def mul(self, a: str, b: str) -> str:
        return self.table[(a, b)]

    def inv(self, a: str) -> str:
        return next(b for b in self.elements if self.table[(a, b)] == self.identity)

    @property
    def order(self) -> int:
        return len(self.elements)

    @classmethod
    def from_function(cls, elements: Sequence[str], mul, identity: str) -> "FiniteGroup":
        els = tuple(elements)
        return cls(els, {(a, b): mul(a, b) for a in els for b in els}, identity)


def cyclic_group(n: int, names: Optional[Sequence[str]] = None) -> FiniteGroup:
    """Z/n with elements ``names`` (default ``"0" .. "n-1"``), identity first."""
    names = list(names) if names is not None else [str(i) for i in range(n)]
    return FiniteGroup(tuple(names),
                       {(names[i], names[j]): names[(i + j) % n]
                        for i in range(n) for j in range(n)},
                       names[0])


def permutation_group(perms: Sequence[Sequence[int]]) -> FiniteGroup:
    """Closure of the given permutations (tuples of images), named by image tuples.

    Product ``a*b`` is ``a`` after ``b``.
    """
    n = len(perms[0])
    ident = tuple(range(n))
    seen = [ident]
    frontier = [ident]
    gens = [tuple(p) for p in perms]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(n))
                if q not in seen:
                    seen.append(q)
                    nxt.append(q)
        frontier = nxt
    name = {p: "".join(map(str, p)) for p in seen}
    table = {(name[a], name[b]): name[tuple(a[b[i]] for i in range(n))] for a in seen for b in seen}
    return FiniteGroup(tuple(name[p] for p in seen), table, name[ident])


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    category: FiniteCategory
    inverses: Mapping[str, Arrow]
    identity_label: str = "1"

    @property
    def objects(self) -> Tuple[str, ...]:
        return self.category.objects

    def inv(self, a: Arrow) -> Arrow:
        return a if isinstance(a, Ident) else self.inverses[a]

    def label(self, a: Arrow) -> str:
        """Display name; identities read as ``identity_label`` when unambiguous."""
        if not isinstance(a, Ident):
            return a
        if self.identity_label in self.category._by_name:
            return str(a)
        if len(self.objects) == 1:
            return self.identity_label
        return f"{self.identity_label}_{a.obj}"

    def check(self) -> "FiniteGroupoid":
        C = self.category
        for m in C.names():
            i = self.inverses.get(m)
            if i is None:
                raise NotAGroupoid(f"{m!r} has no inverse")
            if C.comp(i, m) != Ident(C.src(m)) or C.comp(m, i) != Ident(C.tgt(m)):
                raise NotAGroupoid(f"{i} is not a two-sided inverse of {m!r}")
            if self.inv(i) != m:
                raise NotAGroupoid("inverse map is not an involution")
        return self


def as_groupoid(C: FiniteCategory, identity_label: str = "1") -> FiniteGroupoid:
    inverses = {}
    for m in C.names():
        for cand in C.hom(C.tgt(m), C.src(m)):
            if C.comp(cand, m) == Ident(C.src(m)) and C.comp(m, cand) == Ident(C.tgt(m)):
                inverses[m] = cand
                break
        else:
            raise NotAGroupoid(f"{m!r} is not invertible")
    return FiniteGroupoid(C, inverses, identity_label).check()


def group_groupoid(G: FiniteGroup, obj: str = "*") -> FiniteGroupoid:
    """A group as a one-object groupoid; the identity element is not stored."""
    e = G.identity
    els = [a for a in G.elements if a != e]
    morphs = tuple(Morphism(a, obj, obj) for a in els)
    table = {}
    for g in els:
        for f in els:
            h = G.mul(g, f)
            table[(g, f)] = Ident(obj) if h == e else h
    C = FiniteCategory((obj,), morphs, table)
    return FiniteGroupoid(C, {a: G.inv(a) for a in els}, e)


@dataclass(frozen=True, eq=False)
class CompleteGroupoid(FiniteGroupoid):
    """Objects ``objects`` with a copy of ``group`` between any two of them.

    The arrow ``x -> y`` carrying ``g`` composes as ``(h: y->z) . (g: x->y) = hg``.
    """

    group: FiniteGroup = None
    elements: Mapping[Arrow, str] = field(default_factory=dict)

    def arrow(self, x: str, g: str, y: str) -> Arrow:
        if x == y and g == self.group.identity:
            return Ident(x)
        if len(self.objects) == 1:
            return g
        return f"{g}:{x}->{y}"

    def element(self, a: Arrow) -> str:
        return self.group.identity if isinstance(a, Ident) else self.elements[a]

    def label(self, a: Arrow) -> str:
        if len(self.objects) == 1:
            return self.element(a)
        return super().label(a)


def complete_groupoid(objects: Sequence[str], G: FiniteGroup) -> CompleteGroupoid:
    objects = tuple(objects)
    e = G.identity
    key = {}

    def name(x, g, y):
        if x == y and g == e:
            return Ident(x)
        return g if len(objects) == 1 else f"{g}:{x}->{y}"

    morphs = []
    for x in objects:
        for y in objects:
            for g in G.elements:
                a = name(x, g, y)
                if not isinstance(a, Ident):
                    morphs.append(Morphism(a, x, y))
                    key[a] = (x, g, y)
    table = {}
    for f in morphs:
        for h in morphs:
            if f.tgt == h.src:
                x, g, _ = key[f.name]
                _, k, z = key[h.name]
                table[(h.name, f.name)] = name(x, G.mul(k, g), z)
    C = FiniteCategory(objects, tuple(morphs), table)
    inverses = {a: name(y, G.inv(g), x) for a, (x, g, y) in key.items()}
    return CompleteGroupoid(C, inverses, e, G, {a: g for a, (_, g, _) in key.items()})


def vertex_group(G: FiniteGroupoid, x: str) -> FiniteGroup:
    C = G.category
    arrows = C.hom(x, x)
    labels = {a: G.label(a) for a in arrows}
    back = {v: k for k, v in labels.items()}
    return FiniteGroup.from_function(
        [labels[a] for a in arrows],
        lambda p, q: labels[C.comp(back[p], back[q])],
        labels[Ident(x)],
    )


# -- normal subgroupoids ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NormalSubgroupoid:
    """A totally disconnected normal subgroupoid; identities are implicit."""

    groupoid: FiniteGroupoid
    morphisms: FrozenSet[str]

    def at(self, x: str) -> List[Arrow]:
        C = self.groupoid.category
        return [Ident(x)] + [m for m in C.hom(x, x) if m in self.morphisms]

    def check(self) -> "NormalSubgroupoid":
        G = self.groupoid
        C = G.category
        for m in self.morphisms:
            if not C.is_endo(m):
                raise InvalidInput(f"{m!r} is not an endomorphism")
        for x in C.objects:
            here = set(self.at(x))
            for a in here:
                if G.inv(a) not in here:
                    raise InvalidInput(f"not closed under inverses at {x!r}")
                for b in here:
                    if C.comp(a, b) not in here:
                        raise InvalidInput(f"not closed under composition at {x!r}")
        for g in C.arrows():
            x, y = C.src(g), C.tgt(g)
            there = set(self.at(x))
            for n in self.at(y):
                if C.comp(G.inv(g), C.comp(n, g)) not in there:
                    raise InvalidInput(f"not normal: conjugating by {g} leaves it")
        return self


def kernel_functor(F: CatFunctor) -> NormalSubgroupoid:
    """Morphisms sent to identities by a functor of groupoids injective on objects."""
    if len(set(F.object_map.values())) != len(F.source.objects):
        raise NotInjectiveOnObjects("kernel needs a functor injective on objects")
    G = as_groupoid(F.source)
    ker = frozenset(m for m in F.source.names() if isinstance(F(m), Ident))
    return NormalSubgroupoid(G, ker).check()


def quotient_groupoid(G: FiniteGroupoid, N: NormalSubgroupoid) -> Tuple[FiniteGroupoid, CatFunctor]:
    """``G/N``: ``f ~ b f a`` for ``b`` in N at the target and ``a`` in N at the source."""
    C = G.category
    uf = UnionFind(C.arrows())
    for f in C.arrows():
        for b in N.at(C.tgt(f)):
            for a in N.at(C.src(f)):
                uf.union(f, C.comp(b, C.comp(f, a)))
    q = Congruence.from_union_find(C, uf)
    Q, proj = quotient_category(C, q)
    return as_groupoid(Q, G.identity_label), proj


def image_isomorphism(F: CatFunctor) -> CatFunctor:
    """The comparison ``G/Ker(F) -> Im(F)``; raises unless it is an isomorphism
    onto the image."""
    N = kernel_functor(F)
    QG, proj = quotient_groupoid(N.groupoid, N)
    Q = QG.category
    induced = {}
    for m in F.source.names():
        c = proj(m)
        if isinstance(c, Ident):
            if not isinstance(F(m), Ident):
                raise InvalidInput("kernel class has non-identity image")
            continue
        if induced.setdefault(c, F(m)) != F(m):
            raise InvalidInput("F is not constant on a kernel class")
    if len(set(induced.values())) != len(induced) or any(isinstance(v, Ident) for v in induced.values()):
        raise InvalidInput("induced map is not injective")
    objs = {x: F.obj(x) for x in Q.objects}
    image_objs = tuple(F.obj(x) for x in Q.objects)
    image_morphs = tuple(Morphism(v, F.target.src(v), F.target.tgt(v)) for v in induced.values())
    table = {}
    for g in image_morphs:
        for f in image_morphs:
            if f.tgt == g.src:
                table[(g.name, f.name)] = F.target.comp(g.name, f.name)
    image = FiniteCategory(image_objs, image_morphs, table).check()
    return check_functor(CatFunctor(Q, image, objs, induced))
