"""S-complexes, tensor products and the Froyshov invariant.

Run with: python3 demos/04_s_complexes.py
"""

from fractions import Fraction

from knotfloer.s_complex import (
    block_b,
    block_b_dagger,
    euler_char,
    froyshov,
    homology_ranks,
    tensor,
    tensor_power,
    torus_model,
    validate,
)

b, bd = block_b(), block_b_dagger()
print("B valid:", validate(b), " h(B) =", froyshov(b), " h(B dagger) =", froyshov(bd))

# Tensor powers of the basic block model the complexes of T(2, 2k+1) sums.
for l in range(5):
    c = tensor_power(b, l)
    print(f"B^{l}: rank {c.rank}, homology {homology_ranks(c)}, euler {euler_char(c)}, h {froyshov(c)}")

# h is additive, so a block and its dual cancel.
print("h(B x B dagger) =", froyshov(tensor(b, bd)))

# The model complex attached to a torus knot at a given alpha.
m = torus_model(3, 5, Fraction(1, 4))
print("T(3,5) at 1/4:", homology_ranks(m), "h =", froyshov(m))
