"""
Discriminant cochains on the Bruhat-Tits tree
=============================================

Values of the discriminant cochain on edges, the end edges e_j, and
recovery of Fourier data from values.
"""

from dmct.algebra import Laurent, Poly
from dmct.cochain import delta_cochain, eval_cochain, fourier_from_values
from dmct.level import Level
from dmct.tree import Vertex, end_edge, make_edge, reverse, vertex_star

L = Level.parse("q=2;p=T;r=2")
fq = L.fq
D = delta_cochain(0, L)
pi = Laurent.pi_power(fq, 1)

for j in range(6):
    e = end_edge(L, j)
    print(f"e_{j} = {e}: {eval_cochain(D, e)}")

e = make_edge(fq, 2, pi)
print(eval_cochain(D, e), eval_cochain(D, reverse(e)))

# star sums vanish
v = Vertex(4, pi + pi * pi)
print([str(eval_cochain(D, s)) for s in vertex_star(v)])

# constant term and first coefficient back from level-2 values
values = lambda e: eval_cochain(D, e)
print(fourier_from_values(values, fq, 2), fourier_from_values(values, fq, 2, Poly.one(fq)))
