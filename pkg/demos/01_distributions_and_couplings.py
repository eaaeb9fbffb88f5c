"""
Exact distributions, push-forwards and couplings
================================================

Every probability in hvmforge is a ``Fraction``. This script builds a few
distributions, pushes them through maps, and couples them in two different
ways to show that both couplings keep the marginals intact.
"""

from fractions import Fraction

from hvmforge.prob import Assignment, Dist, comonotone_coupling, product_coupling, project, pushforward

# a biased coin and a fair die-like variable on three faces
coin = Dist({"H": Fraction(2, 3), "T": Fraction(1, 3)})
face = Dist.uniform(["x", "y", "z"])
print("coin:", coin)
print("face:", face)

# push the pair of ±1 signs through their product: the parity is uniform
signs = Dist.uniform([Assignment(a=s, b=t) for s in (1, -1) for t in (1, -1)])
print("parity of two fair signs:", pushforward(signs, lambda p: p["a"] * p["b"]))

##############################################################################
# Two couplings of the same pair
# ------------------------------
#
# The product coupling makes the components independent. The comonotone
# coupling drives both from one common uniform variable, so it usually has
# much smaller support.

prod = product_coupling({"coin": coin, "face": face})
como = comonotone_coupling({"coin": coin, "face": face})
print(f"product coupling has {len(prod)} points, comonotone has {len(como)}")
for pt, p in como.items():
    print("   ", pt, p)

for name, j in (("product", prod), ("comonotone", como)):
    assert project(j, "coin") == coin and project(j, "face") == face
    print(f"{name}: both marginals recovered exactly")
