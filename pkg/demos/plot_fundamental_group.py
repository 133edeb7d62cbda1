"""
Fundamental groups of small categories
======================================

Invert every morphism, then read off the vertex group at a base object.
"""

from catcov import fixtures as fx
from catcov.fractions import Walk, free_compose, normalize, pi1_presentation, walk_element
from catcov.presentation import abelianize, coset_enumerate, word_equal

# Two parallel arrows x -> x0. Going out along one and back along the
# other is a loop that never cancels.
K = fx.k2()
P = pi1_presentation(K, "x0")
print("K2 generators:", P.generators, "relators:", P.relators)
print("abelianized:", abelianize(P).to_dict())

loop = Walk.of(K, [("beta", -1), ("alpha", 1)])
print("beta^-1 alpha normal form:", normalize(K, loop).letters)
print("as a group word:", walk_element(P, loop))

# A single idempotent e: inverting it forces e = 1.
I = fx.idem()
e = Walk.of(I, [("e", 1)])
print("e.e in fractions:", free_compose(I, e, e).letters)
print("e.e with free composition:", free_compose(I, e, e, mode="free").letters)
print("order of the idempotent's group:", coset_enumerate(pi1_presentation(I, "o")))

# The free monoid on one letter becomes the integers.
L = fx.loop()
Q = pi1_presentation(L, "o")
a = Q.rewrite((("a", 1),))
print("a == a^-1 ?", word_equal(Q, a, ((a[0][0], -1),)))

# More parallel arrows, more free generators.
for n in (2, 3, 4):
    print(f"K_E with |E|={n}: rank", abelianize(pi1_presentation(fx.k_e(n), "x0")).free_rank)
