"""Spheres with cone points: abelianization, depths and the abelian cover.

Run with ``python demos/01_sphere_orbifolds.py``.
"""

from orbikit import AbelianQuotient, OrbicurveSpec, h1, orbicurve_group, pull_back, sakuma_b1
from orbikit.alexander import depth_table, length
from orbikit.sakuma import abelian_cover_genus, genus_with_constant, length_count_b1

# The sphere with cone points of index 2, 3 and 6.
spec = OrbicurveSpec(genus=0, punctures=0, indices=(2, 3, 6))
G = orbicurve_group(spec)
print(G)

A = h1(G)
print("H1 =", A.describe())
print("images of x1, x2, x3 in Z/6:", A.gen_images)

# Depth of every nontrivial character of H1.  On the sphere the depth only
# depends on how many cone points see a nontrivial value.
q = AbelianQuotient.abelianization(G)
for xi, d in depth_table(q):
    g = pull_back(xi, q)
    print(f"  xi = {xi.exponents} (values {g.exponents} mod {g.level}): depth {d}, length {length(g.exponents, g.level)}")

# Betti number of the cover with deck group H1, two ways.
r = sakuma_b1(q, with_oracle=True).check()
print(f"b1 of the cover: {r.b1_cover} from depths, {r.oracle_b1} from the subgroup presentation")

# The cover is a torus.  The genus formula needs the constant 2; with 1 it
# would claim genus 4.
cover = abelian_cover_genus(spec.indices)
print(f"degree {cover.degree}, genus {cover.genus}")
print("constant 1 would give genus", genus_with_constant(spec.indices, 1))

# A few more index tuples where every index divides the lcm of the others.
for idx in [(2, 2, 2, 2), (3, 3, 3), (2, 4, 4), (4, 4, 4, 4)]:
    c = abelian_cover_genus(idx)
    print(f"{idx}: degree {c.degree}, genus {c.genus}, counted b1 {length_count_b1(idx)}")
