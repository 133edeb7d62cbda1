"""Finitely presented groups: Tietze simplification, abelianization,
Todd-Coxeter enumeration and a budgeted word problem.

Every decision procedure here is honest: ``None`` means "unknown", never a
guess.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field, replace
from typing import List, Mapping, Optional, Sequence, Tuple

from . import words as W
from .words import Word

DEFAULT_TIETZE_STEPS = 10_000
DEFAULT_COSET_ROWS = 100_000
DEFAULT_SEARCH_DEPTH = 12


@dataclass(frozen=True)
class GroupPresentation:
    """Generators and relators, plus provenance.

    ``substitution`` expresses each *original* generator as a word in the
    current ones, so words written before simplification can still be
    evaluated. ``tree`` and ``base`` are filled in by
    :func:`catcov.fractions.pi1_presentation`.
    """

    generators: Tuple[str, ...]
    relators: Tuple[Word, ...] = ()
    base: Optional[str] = None
    tree: Tuple[str, ...] = ()
    substitution: Mapping[str, Word] = field(default_factory=dict)
    exhausted: bool = False

    def __post_init__(self):
        if not self.substitution:
            object.__setattr__(self, "substitution", {g: ((g, 1),) for g in self.generators})

    def rewrite(self, w: Word) -> Word:
        """Express a word over the original generators in the current ones."""
        return W.substitute(w, self.substitution)

    @property
    def is_free(self) -> bool:
        return not self.relators

    def to_dict(self) -> dict:
        return {
            "format": "catcov-pi1/1",
            "base": self.base,
            "generators": list(self.generators),
            "relators": [[[g, e] for g, e in r] for r in self.relators],
            "tree": list(self.tree),
            "abelian": abelianize(self).to_dict(),
        }


def presentation(generators: Sequence[str], relators: Sequence[Sequence] = ()) -> GroupPresentation:
    """Convenience constructor; relators may be strings like ``"aab"``/``"aB"``
    (upper case = inverse) when generators are single letters, or words."""
    rels = []
    for r in relators:
        if isinstance(r, str):
            r = tuple((c.lower(), -1 if c.isupper() else 1) for c in r)
        rels.append(W.reduce(tuple((g, e) for g, e in r)))
    return GroupPresentation(tuple(generators), tuple(rels))


# -- Tietze ---------------------------------------------------------------

def _tidy(relators) -> List[Word]:
    seen = set()
    out = []
    for r in relators:
        c = W.cyclic_canonical(r)
        if c and c not in seen:
            seen.add(c)
            out.append(c)
    return out


def _elimination_candidate(gens, rels):
    order = sorted(range(len(rels)), key=lambda i: (len(rels[i]), i))
    for i in order:
        r = rels[i]
        for g in gens:
            if W.occurrences(r, g) == 1:
                return i, g
    return None


def tietze_simplify(P: GroupPresentation, max_steps: int = DEFAULT_TIETZE_STEPS) -> GroupPresentation:
    """Simplify ``P`` by free reduction and generator elimination.

    One step is one relator reduction pass or one elimination. On running out
    of steps the current state is returned with ``exhausted=True``.
    """
    gens = list(P.generators)
    rels = [W.reduce(r) for r in P.relators]
    sub = dict(P.substitution)
    steps = 0
    exhausted = False
    while True:
        tidy = _tidy(rels)
        if tidy != rels:
            if steps >= max_steps:
                exhausted = True
                break
            rels = tidy
            steps += 1
        cand = _elimination_candidate(gens, rels)
        if cand is None:
            break
        if steps >= max_steps:
            exhausted = True
            break
        i, g = cand
        r = rels.pop(i)
        k = next(j for j, (h, _) in enumerate(r) if h == g)
        rot = r[k:] + r[:k]
        e, rest = rot[0][1], rot[1:]
        # g^e . rest = 1
        image = W.inverse(rest) if e == 1 else rest
        images = {g: image}
        rels = [W.substitute(s, images) for s in rels]
        sub = {h: W.substitute(w, images) for h, w in sub.items()}
        gens.remove(g)
        steps += 1
    return replace(P, generators=tuple(gens), relators=tuple(rels),
                   substitution=sub, exhausted=exhausted)


# -- Smith normal form / abelianization -------------------------------------

def smith_normal_form(A: Sequence[Sequence[int]]):
    """Return ``(D, U, V)`` with ``D = U A V`` diagonal, d1 | d2 | ..., all >= 0.

    Plain Python integers throughout, so entries never overflow.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(M, i, j):
        M[i], M[j] = M[j], M[i]

    def swap_cols(M, i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]

    def add_row(M, src, dst, k):  # row dst += k * row src
        M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]

    def add_col(M, src, dst, k):
        for row in M:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            piv = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (piv is None or abs(D[i][j]) < abs(D[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                return _positive(D, U, V)
            i, j = piv
            if i != t:
                swap_rows(D, i, t)
                swap_rows(U, i, t)
            if j != t:
                swap_cols(D, j, t)
                swap_cols(V, j, t)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = D[i][t] // p
                if q:
                    add_row(D, t, i, -q)
                    add_row(U, t, i, -q)
                dirty |= D[i][t] != 0
            for j in range(t + 1, n):
                q = D[t][j] // p
                if q:
                    add_col(D, t, j, -q)
                    add_col(V, t, j, -q)
                dirty |= D[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            add_row(D, bad[0], t, 1)
            add_row(U, bad[0], t, 1)
    return _positive(D, U, V)


def _positive(D, U, V):
    for t in range(min(len(D), len(D[0]) if D else 0)):
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return D, U, V


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            assert b % a == 0, "torsion must form a divisibility chain"
        assert all(d >= 2 for d in self.torsion)

    def to_dict(self):
        return {"rank": self.free_rank, "torsion": list(self.torsion)}


def relator_matrix(P: GroupPresentation) -> List[List[int]]:
    return [[W.exponent_sum(r, g) for g in P.generators] for r in P.relators]


def abelianize(P: GroupPresentation) -> AbelianInvariants:
    n = len(P.generators)
    M = relator_matrix(P)
    if not M or n == 0:
        return AbelianInvariants(n)
    D, _, _ = smith_normal_form(M)
    diag = [D[i][i] for i in range(min(len(D), n))]
    rank = sum(1 for d in diag if d)
    return AbelianInvariants(n - rank, tuple(d for d in diag if d > 1))


def abelian_image_trivial(P: GroupPresentation, w: Word) -> bool:
    """Is ``w`` trivial in the abelianization of ``P``?"""
    v = [W.exponent_sum(w, g) for g in P.generators]
    if not any(v):
        return True
    M = relator_matrix(P)
    if not M:
        return False
    D, _, V = smith_normal_form(M)
    n = len(P.generators)
    # v in rowspace(M)  <=>  v V in rowspace(D)
    vv = [sum(v[i] * V[i][j] for i in range(n)) for j in range(n)]
    for j in range(n):
        d = D[j][j] if j < len(D) else 0
        if d == 0:
            if vv[j]:
                return False
        elif vv[j] % d:
            return False
    return True


# -- Todd-Coxeter -------------------------------------------------------------

class _Overflow(Exception):
    pass


@dataclass(frozen=True)
class CosetTable:
    """A closed coset table of the trivial subgroup: the regular permutation
    representation of the group."""

    generators: Tuple[str, ...]
    perms: Mapping[str, Tuple[int, ...]]

    @property
    def order(self) -> int:
        return len(next(iter(self.perms.values()))) if self.perms else 1

    def act(self, coset: int, w: Word) -> int:
        for g, e in w:
            p = self.perms[g]
            coset = p[coset] if e == 1 else p.index(coset)
        return coset

    def is_trivial(self, w: Word) -> bool:
        return self.act(0, w) == 0


class _Enumerator:
    # Hasselgrove-Leech-Trotter with Holt's coincidence routine.

    def __init__(self, ncols, max_rows):
        self.ncols = ncols
        self.max_rows = max_rows
        self.table = [[None] * ncols]
        self.p = [0]

    def define(self, c, x):
        if len(self.table) >= self.max_rows:
            raise _Overflow
        d = len(self.table)
        self.table.append([None] * self.ncols)
        self.p.append(d)
        self.table[c][x] = d
        self.table[d][x ^ 1] = c

    def rep(self, c):
        p = self.p
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def merge(self, k, l, queue):
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        self.p[l] = k
        queue.append(l)

    def coincidence(self, a, b):
        T = self.table
        queue = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = T[e][x]
                if f is None:
                    continue
                T[f][x ^ 1] = None
                e1, f1 = self.rep(e), self.rep(f)
                if T[e1][x] is not None:
                    self.merge(f1, T[e1][x], queue)
                elif T[f1][x ^ 1] is not None:
                    self.merge(e1, T[f1][x ^ 1], queue)
                else:
                    T[e1][x] = f1
                    T[f1][x ^ 1] = e1

    def scan_and_fill(self, a, w):
        T = self.table
        f, b = a, a
        i, j = 0, len(w) - 1
        while True:
            while i <= j and T[f][w[i]] is not None:
                f = T[f][w[i]]
                i += 1
            if i > j:
                if f != a:
                    self.coincidence(f, a)
                return
            while j >= i and T[b][w[j] ^ 1] is not None:
                b = T[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                T[f][w[i]] = b
                T[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])

    def run(self, rels):
        a = 0
        while a < len(self.table):
            if self.p[a] == a:
                for w in rels:
                    self.scan_and_fill(a, w)
                    if self.p[a] != a:
                        break
                if self.p[a] == a:
                    for x in range(self.ncols):
                        if self.table[a][x] is None:
                            self.define(a, x)
            a += 1


def todd_coxeter(P: GroupPresentation, max_rows: int = DEFAULT_COSET_ROWS) -> Optional[CosetTable]:
    """Enumerate cosets of the trivial subgroup; ``None`` if ``max_rows`` is hit."""
    if max_rows < 1:
        raise ValueError("max_rows must be >= 1")
    index = {g: i for i, g in enumerate(P.generators)}
    rels = [[2 * index[g] + (0 if e == 1 else 1) for g, e in W.cyclic_reduce(r)]
            for r in P.relators]
    rels = [r for r in rels if r]
    en = _Enumerator(2 * len(P.generators), max_rows)
    try:
        en.run(rels)
    except _Overflow:
        return None
    live = [c for c in range(len(en.table)) if en.p[c] == c]
    renum = {c: i for i, c in enumerate(live)}
    perms = {}
    for g, i in index.items():
        perms[g] = tuple(renum[en.rep(en.table[c][2 * i])] for c in live)
    return CosetTable(P.generators, perms)


def coset_enumerate(P: GroupPresentation, budget: int = DEFAULT_COSET_ROWS) -> Optional[int]:
    """Order of the group, or ``None`` when enumeration exceeds ``budget`` rows."""
    table = todd_coxeter(P, budget)
    return None if table is None else table.order


# -- word problem -----------------------------------------------------------

def _relator_search(P: GroupPresentation, w: Word, depth: int, budget: int) -> bool:
    """Best-first search for a derivation of ``w = 1`` by relator insertion."""
    pieces = set()
    for r in P.relators:
        for s in (r, W.inverse(r)):
            pieces.update(W.rotations(s))
    pieces = sorted(pieces, key=lambda p: (len(p), p))
    if not pieces:
        return False
    maxlen = len(w) + max(len(p) for p in pieces)
    seen = {w}
    heap = [(len(w), 0, w)]
    expanded = 0
    while heap and expanded < budget:
        _, d, cur = heapq.heappop(heap)
        if not cur:
            return True
        if d >= depth:
            continue
        expanded += 1
        for pos in range(len(cur) + 1):
            for p in pieces:
                nxt = W.reduce(cur[:pos] + p + cur[pos:])
                if not nxt:
                    return True
                if len(nxt) <= maxlen and nxt not in seen:
                    seen.add(nxt)
                    heapq.heappush(heap, (len(nxt), d + 1, nxt))
    return False


def word_equal(P: GroupPresentation, u: Word, v: Word,
               budget: int = DEFAULT_COSET_ROWS,
               depth: int = DEFAULT_SEARCH_DEPTH,
               max_tietze: int = DEFAULT_TIETZE_STEPS) -> Optional[bool]:
    """Decide ``u == v`` in the group presented by ``P``.

    ``u`` and ``v`` are words over ``P.generators``. Returns ``True`` or
    ``False`` when proven, ``None`` when the budgets run out.
    """
    u, v = W.reduce(u), W.reduce(v)
    if u == v:
        return True
    Q = tietze_simplify(P, max_tietze)
    images = {g: Q.substitution.get(g, ((g, 1),)) for g in P.generators}
    w = W.cyclic_reduce(W.substitute(W.mul(u, W.inverse(v)), images))
    if not w:
        return True
    if Q.is_free:
        return False
    if not abelian_image_trivial(Q, w):
        return False
    table = todd_coxeter(Q, budget)
    if table is not None:
        return table.is_trivial(w)
    if _relator_search(Q, w, depth, min(budget, 20_000)):
        return True
    return None
