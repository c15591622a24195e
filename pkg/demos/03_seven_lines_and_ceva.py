"""Arrangement examples: the seven-line orbifold group and the Ceva arrangement."""

import time

from orbikit import AbelianQuotient, h1, regular_rep, reidemeister_schreier
from orbikit.alexander import depth_table
from orbikit.fixtures import ceva_complement, ceva_orbifold, fixture
from orbikit.fpgroup import gprime_fixture, seven_line_fixture

G = seven_line_fixture()
print("seven lines, index 2:", h1(G).describe())

# The kernel of G -> H1(G) through the 64-point regular action.
q = AbelianQuotient.abelianization(G)
t = time.perf_counter()
K = reidemeister_schreier(G, regular_rep(q))
print(f"kernel: {K.ngens} generators, {len(K.relators)} relators, H1 = {h1(K).describe()} ({time.perf_counter() - t:.2f}s)")
print("hand presentation of the kernel:", h1(gprime_fixture()).describe())

# Ceva: six lines, group of the complement is P4 modulo its center.
print("\n" + fixture("ceva")["provenance"])
print("H1 of the complement:", h1(ceva_complement()).describe())
for n in (2, 3, 4):
    q = AbelianQuotient.abelianization(ceva_orbifold(n))
    total = sum(d for _, d in depth_table(q))
    print(f"index {n}: sum of depths {total}, 5(n-1)(n-2) = {5 * (n - 1) * (n - 2)}")
