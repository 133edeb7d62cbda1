"""Walks, free categories, the category of fractions and the fundamental group.

A walk is a sequence of letters ``(name, +1)`` (traverse the morphism) or
``(name, -1)`` (traverse its formal inverse), listed in application order.

Two composition laws are offered. ``mode="free"`` is composition in the
free category over the formal inverses: adjacent forward letters are
composed and nothing cancels. ``mode="fractions"`` is composition in the
category of fractions, where walks are brought to normal form by a
rewriting system made confluent by bounded Knuth-Bendix completion.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from . import words as W
from .category import Arrow, CatFunctor, FiniteCategory, Ident, PresentedCategory, is_connected
from .errors import EndpointMismatch, NoSuchObject, NotConnected
from .presentation import DEFAULT_TIETZE_STEPS, GroupPresentation, tietze_simplify

FWD, INV = 1, -1
Letter = Tuple[str, int]


@dataclass(frozen=True)
class Walk:
    src: str
    tgt: str
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        if not self.letters and self.src != self.tgt:
            raise EndpointMismatch("an empty walk must be closed")

    def __len__(self):
        return len(self.letters)

    @classmethod
    def identity(cls, x: str) -> "Walk":
        return cls(x, x, ())

    @classmethod
    def of(cls, C, letters: Sequence[Letter]) -> "Walk":
        """Build and endpoint-check a non-empty walk in ``C``."""
        letters = tuple((m, int(d)) for m, d in letters)
        if not letters:
            raise EndpointMismatch("use Walk.identity for empty walks")
        ends = [letter_ends(C, a) for a in letters]
        for (_, t), (s, _) in zip(ends, ends[1:]):
            if t != s:
                raise EndpointMismatch(f"walk {letters} is not composable")
        return cls(ends[0][0], ends[-1][1], letters)

    def inverse(self) -> "Walk":
        return Walk(self.tgt, self.src, tuple((m, -d) for m, d in reversed(self.letters)))


def letter_ends(C, a: Letter) -> Tuple[str, str]:
    m, d = a
    s, t = C.src(m), C.tgt(m)
    return (s, t) if d == FWD else (t, s)


def walk_word(w: Walk) -> W.Word:
    """The group word of a walk, read in composition order (last letter first)."""
    return tuple(reversed(w.letters))


# -- rewriting -----------------------------------------------------------------

class RewritingSystem:
    """Length-reducing string rewriting on walk letters.

    Built from the composition table and the cancellation rules, then
    completed (shortlex Knuth-Bendix) within ``max_rules``. When
    ``complete`` is true the normal form of a walk is canonical for its
    morphism in the category of fractions; otherwise normal forms are
    still sound but two equal walks may reduce to different words.
    """

    def __init__(self, C: FiniteCategory, max_rules: int = 400):
        self.category = C
        order = {m: i for i, m in enumerate(C.names())}
        self._key = lambda w: (len(w), [(order[m], 0 if d == FWD else 1) for m, d in w])
        rules = {}
        for m in C.names():
            rules[((m, FWD), (m, INV))] = ()
            rules[((m, INV), (m, FWD))] = ()
        for (g, f), h in C.table.items():
            rules[((f, FWD), (g, FWD))] = () if isinstance(h, Ident) else ((h, FWD),)
        self.rules: List[Tuple[tuple, tuple]] = list(rules.items())
        self.complete = self._complete(max_rules)

    # shortlex orientation
    def _orient(self, a, b):
        return (a, b) if self._key(a) > self._key(b) else (b, a)

    def reduce(self, w: tuple, rng: Optional[random.Random] = None) -> tuple:
        """Normal form of ``w``; with ``rng`` the redex is picked at random."""
        rules = self.rules
        while True:
            hits = []
            for lhs, rhs in rules:
                n = len(lhs)
                for i in range(len(w) - n + 1):
                    if w[i:i + n] == lhs:
                        hits.append((i, n, rhs))
                        if rng is None:
                            break
                if hits and rng is None:
                    break
            if not hits:
                return w
            i, n, rhs = rng.choice(hits) if rng is not None else hits[0]
            w = w[:i] + rhs + w[i + n:]

    def _interreduce(self):
        changed = True
        while changed:
            changed = False
            for k, (lhs, rhs) in enumerate(self.rules):
                others = self.rules[:k] + self.rules[k + 1:]
                saved = self.rules
                self.rules = others
                l2, r2 = self.reduce(lhs), self.reduce(rhs)
                self.rules = saved
                if (l2, r2) != (lhs, rhs):
                    self.rules = others
                    if l2 != r2:
                        self.rules.append(self._orient(l2, r2))
                    changed = True
                    break

    def _critical_pairs(self):
        for l1, r1 in self.rules:
            for l2, r2 in self.rules:
                # suffix of l1 overlaps prefix of l2
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] == l2[:k]:
                        yield r1 + l2[k:], l1[:-k] + r2
                # l2 inside l1
                if (l1, r1) != (l2, r2) and len(l2) <= len(l1):
                    for i in range(len(l1) - len(l2) + 1):
                        if l1[i:i + len(l2)] == l2:
                            yield r1, l1[:i] + r2 + l1[i + len(l2):]

    def _complete(self, max_rules: int) -> bool:
        while True:
            self._interreduce()
            new = []
            for a, b in self._critical_pairs():
                a, b = self.reduce(a), self.reduce(b)
                if a != b:
                    rule = self._orient(a, b)
                    if rule not in new:
                        new.append(rule)
            if not new:
                return True
            if len(self.rules) + len(new) > max_rules:
                return False
            self.rules.extend(new)


def rewriting_system(C: FiniteCategory) -> RewritingSystem:
    cache = C.__dict__.get("_catcov_rws")
    if cache is None:
        cache = RewritingSystem(C)
        C.__dict__["_catcov_rws"] = cache
    return cache


def _merge_free(C: FiniteCategory, letters: Tuple[Letter, ...], i: int) -> Tuple[Letter, ...]:
    # compose the forward pair at the junction i-1, i, if there is one
    if 0 < i < len(letters) and letters[i - 1][1] == FWD and letters[i][1] == FWD:
        f, g = letters[i - 1][0], letters[i][0]
        if (g, f) in C.table:
            h = C.table[(g, f)]
            mid = () if isinstance(h, Ident) else ((h, FWD),)
            return letters[:i - 1] + mid + letters[i + 1:]
    return letters


def normalize(C: FiniteCategory, w: Walk, rng: Optional[random.Random] = None) -> Walk:
    """Normal form of ``w`` in the category of fractions of ``C``."""
    return Walk(w.src, w.tgt, rewriting_system(C).reduce(w.letters, rng))


def free_compose(C: FiniteCategory, w2: Walk, w1: Walk, mode: str = "fractions") -> Walk:
    """``w2 . w1`` (w1 first)."""
    if w1.tgt != w2.src:
        raise EndpointMismatch(f"walk ending at {w1.tgt!r} cannot precede one starting at {w2.src!r}")
    letters = w1.letters + w2.letters
    if mode == "free":
        return Walk(w1.src, w2.tgt, _merge_free(C, letters, len(w1.letters)))
    if mode != "fractions":
        raise ValueError(f"unknown mode {mode!r}")
    return normalize(C, Walk(w1.src, w2.tgt, letters))


def eval_universal(F: CatFunctor, theta: Mapping[str, Arrow], w: Walk) -> Arrow:
    """Value of the extension of ``F`` to walks, inverse letters going through ``theta``."""
    T = F.target
    for m, img in theta.items():
        if T.src(img) != F.obj(F.source.tgt(m)) or T.tgt(img) != F.obj(F.source.src(m)):
            raise EndpointMismatch(f"theta({m}') = {img} has the wrong endpoints")
    result: Arrow = Ident(F.obj(w.src))
    for m, d in w.letters:
        img = F(m) if d == FWD else theta[m]
        result = T.comp(img, result)
    return result


# -- fundamental group ---------------------------------------------------------

def _spanning_tree(objects, edges, base) -> List[str]:
    """BFS over the undirected graph; ``edges`` are (name, src, tgt) in declared order."""
    incident: Dict[str, List[Tuple[str, str]]] = {x: [] for x in objects}
    for name, s, t in edges:
        incident[s].append((name, t))
        incident[t].append((name, s))
    seen = {base}
    tree = []
    queue = deque([base])
    while queue:
        x = queue.popleft()
        for name, y in incident[x]:
            if y not in seen:
                seen.add(y)
                tree.append(name)
                queue.append(y)
    if len(seen) != len(objects):
        raise NotConnected("category is not connected")
    return tree


def pi1_presentation(C: Union[FiniteCategory, PresentedCategory], base: str,
                     max_steps: int = DEFAULT_TIETZE_STEPS) -> GroupPresentation:
    """Presentation of the vertex group at ``base`` of the fundamental groupoid.

    Generators are the morphisms (or quiver arrows); relators are the
    composition triangles (or declared relations) and the edges of a BFS
    spanning tree rooted at ``base``. The result is Tietze-simplified and
    its ``substitution`` maps each morphism to its group element.
    """
    if base not in C.objects:
        raise NoSuchObject(f"no object {base!r}")
    if isinstance(C, PresentedCategory):
        edges = [(a.name, a.src, a.tgt) for a in C.arrows]
        rels = []
        for lhs, rhs in C.relations:
            lw = tuple((a, 1) for a in reversed(lhs))
            rw = tuple((a, 1) for a in reversed(rhs))
            rels.append(W.reduce(lw + W.inverse(rw)))
    else:
        if not is_connected(C):
            raise NotConnected("category is not connected")
        edges = [(m.name, m.src, m.tgt) for m in C.morphisms]
        rels = []
        for (g, f), h in C.table.items():
            r = ((g, 1), (f, 1)) if isinstance(h, Ident) else ((g, 1), (f, 1), (h, -1))
            rels.append(W.reduce(r))
    tree = _spanning_tree(C.objects, edges, base)
    rels.extend(((t, 1),) for t in tree)
    P = GroupPresentation(tuple(e[0] for e in edges), tuple(rels), base=base, tree=tuple(tree))
    return tietze_simplify(P, max_steps)


def walk_element(P: GroupPresentation, w: Walk) -> W.Word:
    """The vertex-group element (over ``P``'s generators) of a walk, conjugated
    into the base by tree paths."""
    return P.rewrite(walk_word(w))
