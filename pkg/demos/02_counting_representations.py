"""Counting SU(2) representations of torus-knot groups.

For each admissible alpha the number of irreducible representations whose
meridian has trace 2 cos(2 pi alpha) equals minus half the signature.

Run with: python3 demos/02_counting_representations.py
"""

from fractions import Fraction

from knotfloer import admissible, count_reps, isolate_roots, tl_signature, torus_knot_seifert
from knotfloer.char_variety import enumerate_arcs, h1_dimension, nondegeneracy_check

p, q = 3, 5
alpha = Fraction(1, 4)

# Each arc of irreducibles is labelled by the eigenvalue data (a, b) of the
# two generators; tau is the angle between their rotation axes.
print("arcs:", enumerate_arcs(p, q))

roots = isolate_roots(p, q, alpha)
for r in roots:
    print(f"  arc {r.arc.a},{r.arc.b}: tau in [{float(r.lo):.12f}, {float(r.hi):.12f}]")

V = torus_knot_seifert(p, q)
print("count:", count_reps(p, q, alpha), " -sigma/2:", -tl_signature(V, alpha) // 2)

# Every root is a smooth point: H^1 is one-dimensional and injects into the
# cohomology of the meridian.
for r in roots:
    tau = (r.lo + r.hi) / 2
    print("  h1 =", h1_dimension(p, q, r.arc.a, r.arc.b, tau), "nondegenerate:", nondegeneracy_check(p, q, r.arc.a, r.arc.b, tau))

# The same identity on a sweep, skipping alpha on a signature jump.
for k in range(1, 12):
    a = Fraction(k, 24)
    if admissible(V, a):
        print(f"  alpha = {a}: count {count_reps(p, q, a)}, -sigma/2 {-tl_signature(V, a) // 2}")
