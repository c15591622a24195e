"""Unbranched orbifold covers described by permutation monodromy."""

from orbikit import OrbicurveSpec, PermRep, analyze_cover, euler_orb, orbicurve_group, validate_rep
from orbikit.covers import saturation_check

# Degree-5 monodromy of the (2,3,5) sphere: images (1,5)(2,3), (1,4,3), (1,2,3,4,5).
base = OrbicurveSpec(0, 0, (2, 3, 5))
G = orbicurve_group(base)
rep = PermRep.from_images(G, 5, {"x1": [5, 3, 2, 4, 1], "x2": [4, 2, 1, 3, 5], "x3": [2, 3, 4, 5, 1]})
print("relators act trivially:", bool(validate_rep(G, rep)))

r = analyze_cover(base, rep)
print("total space:", r.upstairs_spec())
print(f"euler characteristic {r.euler_orb_upstairs} = 5 * {euler_orb(base)}")
print("flags:", r.flags)
for u in r.upstairs_points:
    print(f"  over {u.base_point}: cycle of length {u.cycle_length}, index {u.index}")

# H1 of this group is trivial, so the homological saturation check flags
# every meridian; the permutation images still show each order is attained.
for row in saturation_check(base, rep):
    print(f"  {row.label}: declared {row.declared}, H1 order {row.order_h1}, rep order {row.order_rep}, certified {row.certified}")

# An elliptic curve with two index-2 points, mapped onto the alternating group A4.
ell = OrbicurveSpec(1, 0, (2, 2))
E = orbicurve_group(ell)
rep = PermRep.from_images(
    E, 4, {"a1": [2, 3, 1, 4], "b1": [2, 1, 4, 3], "x1": [2, 1, 4, 3], "x2": [3, 4, 1, 2]}
)
r = analyze_cover(ell, rep)
print("\nelliptic cover:", r.upstairs_spec(), r.flags)
