"""Tristram-Levine signatures of torus knots, computed exactly.

Run with: python3 demos/01_signatures.py
"""

from fractions import Fraction

from knotfloer import alexander, litherland_t2, signature_jumps, tl_signature, torus_knot_seifert
from knotfloer.errors import NotAdmissible

# A torus knot's Seifert matrix comes from its positive braid word.
V = torus_knot_seifert(2, 5)
print("Seifert matrix of T(2,5):")
for row in V.matrix:
    print("   ", row)

# The Alexander polynomial is det(V - t V^T), centred and sign-normalized.
print("Alexander polynomial:", alexander(V))

# The signature only changes where the Alexander polynomial has a root on the
# unit circle. For torus knots those roots are roots of unity, so the jump
# locations are exact fractions.
jumps = signature_jumps(V)
print("jumps:", [str(j) for j in jumps])

# Sweep alpha across (0, 1/2) and watch the step function.
for alpha in [Fraction(k, 40) for k in range(1, 20)]:
    try:
        sig = tl_signature(V, alpha)
    except NotAdmissible:
        print(f"  alpha = {alpha}: on a jump, not admissible")
        continue
    print(f"  alpha = {alpha}: sigma = {sig}, lattice count = {litherland_t2(2, alpha)}")
