"""Reducible indices and the eta count on crossing-change cobordisms.

Run with: python3 demos/05_cobordisms.py
"""

from fractions import Fraction

from knotfloer.cobordism import (
    compose,
    crossing_blowup,
    crossing_change_reducible,
    d_alpha,
    disk_cap,
    eta_of,
    minimal_reducibles,
    negative_definite_check,
)
from knotfloer.coeffs import invert_unit, to_function_field

alpha = Fraction(1, 6)
for m in range(-3, 4):
    kappa, nu, ind = crossing_change_reducible(alpha, m)
    print(f"m = {m:2d}: kappa = {kappa}, nu = {nu}, index = {ind}")

c = crossing_blowup(alpha)
mins, kappa0, nu0 = minimal_reducibles(c)
print("minimal reducibles:", [(str(r.kappa), str(r.nu)) for r in mins], "kappa0 =", kappa0, "nu0 =", nu0)

eta = eta_of(c)
print("eta =", eta, " negative definite:", negative_definite_check(c))
print("eta in Q(s, T):", to_function_field(eta))
print("eta^-1 to depth 4:", invert_unit(eta, depth=4))

# Cap off the unknot and stack three crossing changes: T(2,7) at alpha = 1/6.
w = disk_cap(alpha)
for _ in range(3):
    w = compose(w, crossing_blowup(alpha, range(-2, 3)))
w.sig_out = -2
print("d for the capped composite:", d_alpha(w))
