"""
Cuspidal class groups of X_0(p^r)
=================================

Walk up the exponent r for a few primes and watch the group grow.
"""

from dmct.algebra import FqConfig, Poly
from dmct.classgroup import class_group_structure, ell_primary, torsion_prediction, admissible_primes
from dmct.level import eisenstein_constants, make_level

f2 = FqConfig(2)
p = Poly.parse(f2, "T^3+T+1")
L = make_level(f2, p, 2)

# M and N control everything below
M, N = eisenstein_constants(L)
print(f"|p| = {L.norm}, M = {M}, N = {N}")

for r in range(1, 6):
    S = class_group_structure(L.with_r(r))
    print(f"r={r}: {S}  (order {S.order})")

# away from q(q-1) the l-part is (Z/M)^(r-1) x Z/N
L4 = L.with_r(4)
S = class_group_structure(L4)
for ell in admissible_primes(L4, 10):
    print(ell, ell_primary(S, ell).to_list(), torsion_prediction(L4, ell).to_list())
