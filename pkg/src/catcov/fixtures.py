"""Named small categories and random generators used by tests and demos."""
from __future__ import annotations

import random
from typing import Dict, List, Optional, Sequence, Tuple

from .category import (
    CatFunctor,
    FiniteCategory,
    Ident,
    Morphism,
    PresentedCategory,
    check_functor,
    congruence_close,
    identity_functor,
    is_connected,
    make_category,
    quotient_category,
)
from .coverings import GroupAction
from .errors import NotFunctorial
from .grading import Grading, Smash, make_grading, smash_product
from .groupoids import (
    FiniteGroup,
    FiniteGroupoid,
    complete_groupoid,
    cyclic_group,
    group_groupoid,
    permutation_group,
)
from .universal import kronecker


def k2() -> FiniteCategory:
    return kronecker(["alpha", "beta"])


def k_e(n: int) -> FiniteCategory:
    return kronecker([f"e{i}" for i in range(n)])


def k3() -> FiniteCategory:
    return kronecker(["a", "b", "c"])


def idem() -> FiniteCategory:
    return make_category(["o"], [("e", "o", "o")], {("e", "e"): "e"})


def loop() -> PresentedCategory:
    return PresentedCategory(("o",), (Morphism("a", "o", "o"),)).check()


def z2grp() -> FiniteGroupoid:
    return group_groupoid(cyclic_group(2, ["1", "s"]))


def z4grp() -> FiniteGroupoid:
    return group_groupoid(cyclic_group(4))


def i2() -> FiniteCategory:
    """Trivial connected groupoid on ``a``, ``b``."""
    return make_category(["a", "b"], [("f", "a", "b"), ("g", "b", "a")],
                         {("g", "f"): "ID", ("f", "g"): "ID"})


def zigzag4() -> FiniteCategory:
    """A 4-cycle with alternating orientations; no composable pairs."""
    return make_category(["p0", "p1", "p2", "p3"],
                         [("a", "p0", "p1"), ("b", "p2", "p1"), ("c", "p2", "p3"), ("d", "p0", "p3")])


def square() -> FiniteCategory:
    """Commutative square, simply connected."""
    return make_category(
        ["00", "01", "10", "11"],
        [("a", "00", "10"), ("b", "10", "11"), ("c", "00", "01"), ("d", "01", "11"), ("diag", "00", "11")],
        {("b", "a"): "diag", ("d", "c"): "diag"},
    )


def idem_arrow() -> FiniteCategory:
    """``f: x -> y`` and an idempotent ``e`` at ``y`` with ``e f = f``."""
    return make_category(["x", "y"], [("f", "x", "y"), ("e", "y", "y")],
                         {("e", "e"): "e", ("e", "f"): "f"})


def missing_composite_square() -> dict:
    """Raw data for a square that declares ``c.a`` but not ``d.b``."""
    return {
        "objects": ["p", "q", "r", "s"],
        "morphisms": [("a", "p", "q"), ("b", "p", "r"), ("c", "q", "s"), ("d", "r", "s"), ("e", "p", "s")],
        "compositions": {("c", "a"): "e"},
    }


def disjoint_union(C: FiniteCategory, D: FiniteCategory, tags: Tuple[str, str] = ("1", "2")) -> FiniteCategory:
    def rename(X, t):
        objs = tuple(f"{x}.{t}" for x in X.objects)
        morphs = tuple(Morphism(f"{m.name}.{t}", f"{m.src}.{t}", f"{m.tgt}.{t}") for m in X.morphisms)
        table = {(f"{g}.{t}", f"{f}.{t}"): (Ident(f"{h.obj}.{t}") if isinstance(h, Ident) else f"{h}.{t}")
                 for (g, f), h in X.table.items()}
        return objs, morphs, table

    o1, m1, t1 = rename(C, tags[0])
    o2, m2, t2 = rename(D, tags[1])
    return FiniteCategory(o1 + o2, m1 + m2, {**t1, **t2}).check()


def folding(C: FiniteCategory, tags: Tuple[str, str] = ("1", "2")) -> CatFunctor:
    """``C + C -> C`` forgetting the copy."""
    U = disjoint_union(C, C, tags)
    strip = lambda s: s.rsplit(".", 1)[0]
    return check_functor(CatFunctor(U, C, {x: strip(x) for x in U.objects},
                                    {m: strip(m) for m in U.names()}))


def swap_action(C: FiniteCategory, tags: Tuple[str, str] = ("1", "2")) -> GroupAction:
    """``Z/2`` exchanging the two copies in ``C + C``."""
    U = disjoint_union(C, C, tags)
    a, b = tags
    flip = lambda s: s[: -len(a)] + b if s.endswith("." + a) else s[: -len(b)] + a
    F = CatFunctor(U, U, {x: flip(x) for x in U.objects}, {m: flip(m) for m in U.names()})
    table = {("1", "1"): "1", ("1", "s"): "s", ("s", "1"): "s", ("s", "s"): "1"}
    return GroupAction(U, ("1", "s"), table, "1", {"1": identity_functor(U), "s": F}).check()


def i2_swap() -> GroupAction:
    C = i2()
    F = CatFunctor(C, C, {"a": "b", "b": "a"}, {"f": "g", "g": "f"})
    table = {("1", "1"): "1", ("1", "s"): "s", ("s", "1"): "s", ("s", "s"): "1"}
    return GroupAction(C, ("1", "s"), table, "1", {"1": identity_functor(C), "s": F}).check()


def k2_grading(beta: str = "s") -> Grading:
    """``K2`` graded by ``Z2GRP`` with ``alpha -> 1`` and ``beta -> beta``."""
    return make_grading(k2(), z2grp(), {"alpha": "1", "beta": beta})


def cyclic_cover(n: int, B: Optional[FiniteCategory] = None) -> Smash:
    """The ``Z/n`` cover of ``K2`` given by ``alpha -> 0``, ``beta -> 1``."""
    B = B or k2()
    return smash_product(make_grading(B, group_groupoid(cyclic_group(n)), {"alpha": "0", "beta": str(1 % n)}), "*")


def zigzag_z4() -> Grading:
    return make_grading(zigzag4(), z4grp(), {"a": "1", "b": "0", "c": "0", "d": "0"})


def z4_to_z2() -> CatFunctor:
    return check_functor(CatFunctor(z4grp().category, z2grp().category, {"*": "*"},
                                    {"1": "s", "2": Ident("*"), "3": "s"}))


def nongalois_k3() -> CatFunctor:
    """A connected 3-sheeted cover of ``K3`` whose monodromy is all of ``S3``.

    Sheets are permuted by ``a -> id``, ``b -> (0 1)``, ``c -> (1 2)``; the
    point stabilizer is not normal, so the cover is not Galois.
    """
    K = k3()
    perms = {"a": (0, 1, 2), "b": (1, 0, 2), "c": (0, 2, 1)}
    objs = tuple(f"({s},{i})" for s in K.objects for i in range(3))
    morphs = tuple(Morphism(f"{e}{i}", f"(x,{i})", f"(x0,{p[i]})")
                   for e, p in perms.items() for i in range(3))
    C = FiniteCategory(objs, morphs, {}).check()
    return check_functor(CatFunctor(C, K, {o: o[1:].split(",")[0] for o in objs},
                                    {m.name: m.name[0] for m in morphs}))


# -- groups ----------------------------------------------------------------------

def product_group(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    els = [(a, b) for a in G.elements for b in H.elements]
    name = {p: f"({p[0]},{p[1]})" for p in els}
    table = {(name[p], name[q]): name[(G.mul(p[0], q[0]), H.mul(p[1], q[1]))] for p in els for q in els}
    return FiniteGroup(tuple(name[p] for p in els), table, name[(G.identity, H.identity)])


def s3() -> FiniteGroup:
    return permutation_group([(1, 0, 2), (0, 2, 1)])


def small_epimorphisms() -> List[Tuple[FiniteGroup, int, Dict[str, int]]]:
    """Pairs ``(H, n, phi)`` with ``phi: H -> Z/n`` onto, ``|H| <= 12``, kernel of order <= 4."""
    out = []
    for n in (1, 2, 3):
        for k in (1, 2, 3, 4):
            H = cyclic_group(n * k)
            out.append((H, n, {a: int(a) % n for a in H.elements}))
        Zn = cyclic_group(n)
        V = product_group(cyclic_group(2), cyclic_group(2))
        H = product_group(V, Zn)
        out.append((H, n, {a: int(a.rsplit(",", 1)[1].rstrip(")")) for a in H.elements}))
    S = s3()
    sign = {}
    for p in S.elements:
        perm = tuple(int(c) for c in p)
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
        sign[p] = inv % 2
    out.append((S, 2, sign))
    return out


def extension_fixture(H: FiniteGroup, n: int, phi: Dict[str, int], objects: Sequence[str] = ("u",)) -> Smash:
    """Smash of the complete groupoid on ``objects`` over ``H`` graded by ``phi`` onto ``Z/n``.

    The result is a finite connected groupoid with vertex groups ``ker phi``
    and a free ``Z/n`` action whose orbit groupoid is the complete groupoid.
    """
    G = complete_groupoid(objects, H)
    Zn = group_groupoid(cyclic_group(n))
    deg = {}
    for a in G.category.names():
        k = phi[G.element(a)] % n
        deg[a] = Ident("*") if k == 0 else str(k)
    X = Grading(check_functor(CatFunctor(G.category, Zn.category,
                                         {x: "*" for x in G.objects}, deg)), Zn)
    return smash_product(X, "*")


# -- random categories -------------------------------------------------------------

def random_concrete_category(rng: random.Random, n_objects: int, n_arrows: int,
                             max_set: int = 3, max_morphisms: int = 12,
                             loops: bool = True) -> Optional[FiniteCategory]:
    """Subcategory of finite sets generated by random maps, or ``None`` if too big.

    Every finite category arises this way, so this samples broadly: free
    categories on acyclic graphs, idempotents, finite groups and mixtures.
    """
    objs = [f"o{i}" for i in range(n_objects)]
    size = {x: rng.randint(1, max_set) for x in objs}
    gens = []
    for _ in range(n_arrows):
        s = rng.choice(objs)
        t = rng.choice(objs) if loops else rng.choice([y for y in objs if y != s] or objs)
        fn = tuple(rng.randrange(size[t]) for _ in range(size[s]))
        gens.append((s, t, fn))
    ident = {x: tuple(range(size[x])) for x in objs}
    arrows: Dict[Tuple[str, str, tuple], str] = {}
    order: List[Tuple[str, str, tuple]] = []

    def add(key):
        if key[0] == key[1] and key[2] == ident[key[0]]:
            return False
        if key in arrows:
            return False
        arrows[key] = f"m{len(order)}"
        order.append(key)
        return True

    for g in gens:
        add(g)
    i = 0
    while i < len(order):
        if len(order) > max_morphisms:
            return None
        s, t, fn = order[i]
        for (s2, t2, fn2) in list(order):
            if s2 == t:
                add((s, t2, tuple(fn2[v] for v in fn)))
            if t2 == s:
                add((s2, t, tuple(fn[v] for v in fn2)))
        i += 1
    if len(order) > max_morphisms:
        return None
    morphs = tuple(Morphism(arrows[k], k[0], k[1]) for k in order)
    table = {}
    for f in order:
        for g in order:
            if f[1] == g[0]:
                h = (f[0], g[1], tuple(g[2][v] for v in f[2]))
                table[(arrows[g], arrows[f])] = Ident(f[0]) if h not in arrows else arrows[h]
    return FiniteCategory(tuple(objs), morphs, table).check()


def random_connected_category(rng: random.Random, max_objects: int = 4, max_morphisms: int = 8,
                              tries: int = 200) -> FiniteCategory:
    for _ in range(tries):
        n = rng.randint(1, max_objects)
        k = rng.randint(max(0, n - 1), max(n - 1, min(max_morphisms, n + 2)))
        C = random_concrete_category(rng, n, k, max_morphisms=max_morphisms)
        if C is not None and is_connected(C):
            return C
    return FiniteCategory(("o0",), (), {})


def random_quotient(rng: random.Random, C: FiniteCategory) -> FiniteCategory:
    """Quotient of ``C`` by the congruence generated by one random parallel pair."""
    pairs = [(a, b) for a in C.arrows() for b in C.arrows()
             if a != b and C.src(a) == C.src(b) and C.tgt(a) == C.tgt(b)]
    if not pairs:
        return C
    Q, _ = quotient_category(C, congruence_close(C, [rng.choice(pairs)]))
    return Q


def random_cyclic_grading(rng: random.Random, B: FiniteCategory, n: int, tries: int = 50) -> Optional[Grading]:
    """A random functor from ``B`` to ``Z/n`` (as a one-object groupoid), if one is found."""
    G = group_groupoid(cyclic_group(n))
    names = B.names()
    for _ in range(tries):
        deg = {m: rng.randrange(n) for m in names}
        img = {m: Ident("*") if d == 0 else str(d) for m, d in deg.items()}
        try:
            F = check_functor(CatFunctor(B, G.category, {x: "*" for x in B.objects}, img))
        except NotFunctorial:
            continue
        return Grading(F, G)
    return None


def random_free_action(rng: random.Random, max_objects: int = 4, max_morphisms: int = 8,
                       tries: int = 500) -> Smash:
    """A connected category of the given size with a free action of ``Z/n``, ``n <= 3``.

    Built as the smash product of a random effective grading of a smaller
    category, which carries the free action of the vertex group.
    """
    for _ in range(tries):
        n = rng.randint(1, 3)
        if max_objects // n < 1:
            continue
        B = random_connected_category(rng, max_objects // n, max_morphisms // n)
        X = random_cyclic_grading(rng, B, n)
        if X is None:
            continue
        sm = smash_product(X, "*")
        if is_connected(sm.category):
            return sm
    raise RuntimeError("no connected free action found")


def random_walk_letters(rng: random.Random, C, start: str, length: int):
    """A random walk of at most ``length`` letters from ``start``."""
    letters = []
    x = start
    for _ in range(length):
        moves = [(m, 1) for m in C.out(x)] + [(m, -1) for m in C.into(x)]
        if not moves:
            break
        m, d = rng.choice(moves)
        letters.append((m, d))
        x = C.tgt(m) if d == 1 else C.src(m)
    return tuple(letters), x
