"""
Coverings, automorphisms and orbit categories
=============================================

A covering is bijective on every star. Galois coverings have as many
automorphisms as sheets, and dividing out a free action gives one back.
"""

from catcov import fixtures as fx
from catcov.coverings import aut_group, check_covering, is_galois, lift_pointed, orbit_category

# The Z/3 cover of K2: three copies of each object, beta shifts the sheet.
sm = fx.cyclic_cover(3)
P = sm.covering
print("fibre over x0:", P.fibre("x0"))
A = aut_group(P)
print("automorphisms:", A.elements, "galois:", is_galois(P))

# Three sheets over K3 with monodromy S3: connected, but only the identity
# commutes with the projection.
N = check_covering(fx.nongalois_k3())
print("non-Galois cover automorphisms:", aut_group(N).order, "sheets:", len(N.fibre("x")))

# Lifts through a covering are unique once a base point is fixed.
H = lift_pointed(P, P, "(x,0)", "(x,2)")
print("lift sends (x,0) to", H.obj("(x,0)"), "and beta@0 to", H("beta@0"))

# The swap on two arrows a -> b, b -> a folds them into one involution.
swap = fx.i2_swap()
oc = orbit_category(swap.category, swap)
print("I2 / Z2:", oc.quotient.objects, oc.quotient.names(), "f.f =", oc.quotient.comp("f", "f"))
