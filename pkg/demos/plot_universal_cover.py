"""
Balls in the universal cover
============================

When the fundamental group is free, the universal cover is a tree of
copies of the base. A ball of radius r is a finite piece of it.
"""

from catcov import fixtures as fx
from catcov.dot import render_dot
from catcov.universal import cayley_double, check_interior, covers_all, universal_ball

for r in range(4):
    ball = universal_ball(fx.k2(), "x0", r)
    print(f"r={r}: {len(ball.category.objects)} objects, {len(ball.category.morphisms)} morphisms,"
          f" boundary {ball.boundary}")

ball = universal_ball(fx.k2(), "x0", 1)
print("interior stars map bijectively:", check_interior(ball))
print(render_dot(ball, "ball"))

# The same ball read off the Cayley graph of the free group.
_, D = cayley_double(["alpha", "beta"], 2)
print("Cayley double edges:", [m.name for m in D.category.morphisms])

# Every cyclic cover is a quotient of the ball.
big = universal_ball(fx.k2(), "x0", 3)
for n in (2, 3, 4):
    H = covers_all(big, fx.cyclic_cover(n).covering, "(x0,0)")
    print(f"Z/{n}: (x0,beta^2) goes to", H.obj(big.object_at("x0", (("beta", 1), ("beta", 1)))))
