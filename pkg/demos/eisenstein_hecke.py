"""
The Eisenstein element and Hecke operators
==========================================
"""

from fractions import Fraction

from dmct.algebra import Laurent, Poly
from dmct.cochain import eisenstein_En, eval_cochain, g_of_Cprime, hecke_apply
from dmct.level import Level, eisenstein_constants
from dmct.tree import Edge, end_edge

L = Level.parse("q=3;p=T^2+1;r=3")
M, _ = eisenstein_constants(L)
E = eisenstein_En(L)

# E(e_j) = q^(j+1) M
print([str(eval_cochain(E, end_edge(L, j))) for j in range(4)], "M =", M)

# annihilated by U_p and by T_m - |m| - 1
e = Edge(5, Laurent.from_terms(L.fq, {1: 1, 3: 2}), 0)
print("E|U =", hecke_apply(E, L, "U", e))
m = Poly.parse(L.fq, "T+1")
print("E|T - 4 =", hecke_apply(E, L, ("T", m), e) - 4 * eval_cochain(E, e))

# the value of g(C') that pins down the order of C'
e2 = Edge(2, Laurent.pi_power(L.fq, 1), 0)
val = L.norm ** (L.r - 2) * eval_cochain(g_of_Cprime(L), e2)
print(val, "=", -Fraction(L.norm, L.q) / M)
