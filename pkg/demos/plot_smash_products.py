"""
Gradings and smash products
===========================

A grading by a groupoid builds a Galois covering (the smash product);
a Galois covering hands back a grading of its orbit category.
"""

from catcov import fixtures as fx
from catcov.coverings import orbit_category
from catcov.grading import (
    associated_grading,
    coset_components,
    is_effective,
    roundtrip_iso,
    smash_product,
    smash_quotient_map,
)

X = fx.k2_grading()
sm = smash_product(X, "*")
print("objects:", sm.category.objects)
for m in sm.category.morphisms:
    print(f"  {m.name}: {m.src} -> {m.tgt}")
print("effective:", is_effective(X))
print("quotient recovers K2:", smash_quotient_map(sm).is_bijective())

# Both arrows of degree s: the grading misses half the group and the
# smash product falls apart into cosets.
flat = fx.k2_grading(beta="1")
print("flat grading components:", coset_components(flat, "*"))

# Back again: the Z/4 cover of K2, divided by its deck group, graded by
# deviations from a section.
sm4 = fx.cyclic_cover(4)
oc = orbit_category(sm4.category, sm4.action)
ag = associated_grading(oc)
print("degrees:", {f: ag.element(f) for f in oc.quotient.names()})
Phi = roundtrip_iso(oc)
print("round trip is an isomorphism:", Phi.is_bijective())
