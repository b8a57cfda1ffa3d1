"""
Degeneracy maps on height divisors
==================================

alpha pulls divisors up one level, beta pushes them down.
"""

from dmct.divisors import (
    HeightDivisor,
    alpha_pull,
    beta_cokernel,
    beta_push,
    degree,
    delta_divisor,
    standard_divisors,
    up_action,
)
from dmct.level import Level

L = Level.parse("q=3;p=T^2+1;r=3")

# divisors of the discriminant family, one row per index i
for i in range(L.r + 1):
    D = delta_divisor(i, L)
    print(i, [str(c) for c in D.coeffs], "deg", degree(D))

# beta lowers the index and multiplies by |p|
lower = L.with_r(L.r - 1)
print(beta_push(delta_divisor(2, L)) == delta_divisor(1, lower) * L.norm)

# C' is killed by U = alpha o beta
_, Cp = standard_divisors(L)
print("C' =", Cp, " U(C') =", up_action(Cp))

D = HeightDivisor(lower, [1, -2, 5])
print(degree(alpha_pull(D)), "=", L.norm, "*", degree(D))

for r in range(2, 8):
    print(r, beta_cokernel(L.with_r(r)))
