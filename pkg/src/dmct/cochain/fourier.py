"""Gamma_inf-invariant harmonic cochains in the Eisenstein family.

A :class:`FourierCochain` is a rational combination of shifts of the
discriminant cochain, ``sum(lam * (rDelta | B_m))``.  Its Fourier data and its
values on edges are both available in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from ..algebra.cyclotomic import CycRat
from ..algebra.fq import FqConfig
from ..algebra.laurent import Laurent
from ..algebra.poly import Poly, absolute_norm, divisor_sum
from ..level import Level, eisenstein_constants
from ..tree import Edge
from .engine import delta_constants, delta_value


class EtaCharacter:
    """eta(sum a_i pi^i) = zeta_p^Tr(a_1)."""

    def __init__(self, fq: FqConfig):
        self.fq = fq

    def __call__(self, x: Laurent) -> CycRat:
        return CycRat.zeta_power(self.fq.p, self.fq.trace(x[1]))

    def of_coefficient(self, a1: int) -> CycRat:
        return CycRat.zeta_power(self.fq.p, self.fq.trace(a1))


def eta(x: Laurent) -> CycRat:
    return EtaCharacter(x.fq)(x)


@dataclass(frozen=True)
class FourierCochain:
    """sum of lam * (rDelta | B_m) over ``components`` = ((lam, m), ...)."""

    fq: FqConfig
    components: tuple
    label: str = field(default="", compare=False)
    level: Level | None = field(default=None, compare=False)

    def __post_init__(self):
        merged: dict = {}
        for lam, m in self.components:
            m = m.monic()
            merged[m] = merged.get(m, Fraction(0)) + Fraction(lam)
        comps = tuple(sorted(((lam, m) for m, lam in merged.items() if lam), key=lambda t: t[1].sort_key()))
        object.__setattr__(self, "components", comps)

    def __add__(self, other: "FourierCochain") -> "FourierCochain":
        return FourierCochain(self.fq, self.components + other.components, level=self.level or other.level)

    def __mul__(self, c) -> "FourierCochain":
        c = Fraction(c)
        return FourierCochain(self.fq, tuple((c * lam, m) for lam, m in self.components), self.label, self.level)

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + other * -1

    # Fourier data --------------------------------------------------------

    def constant(self, k: int) -> Fraction:
        """f^0(pi^k)."""
        A, _ = delta_constants(self.fq.q)
        return sum((lam * absolute_norm(m) * A / Fraction(self.fq.q) ** k for lam, m in self.components), Fraction(0))

    def coefficient(self, m: Poly) -> Fraction:
        """c(m), the coefficient at the anchor index (m, deg m)."""
        _, C = delta_constants(self.fq.q)
        m = m.monic()
        total = Fraction(0)
        for lam, s in self.components:
            quo, rem = divmod(m, s)
            if rem.is_zero():
                total += lam * C * divisor_sum(quo) / absolute_norm(quo)
        return total

    def index_coefficient(self, m: Poly, j: int) -> Fraction:
        """Coefficient at the index (m, j), j >= deg m: c(m) q^(deg m - j)."""
        if j < m.degree():
            return Fraction(0)
        return self.coefficient(m) / Fraction(self.fq.q) ** (j - m.degree())

    def value(self, e: Edge) -> Fraction:
        return eval_cochain(self, e)


def _shifted_slots(y: Laurent, m: Poly, k: int) -> tuple:
    # slots 1..k-1 of m*y, with k already lowered by deg m
    if k <= 1:
        return ()
    my = y * Laurent.from_poly(m)
    return tuple(my[t] for t in range(1, k))


def eval_cochain(f: FourierCochain, e: Edge) -> Fraction:
    total = Fraction(0)
    for lam, m in f.components:
        k = e.k - m.degree()
        total += lam * delta_value(f.fq, k, _shifted_slots(e.y, m, k))
    return -total if e.eps else total


def delta_cochain(i: int, L: Level) -> FourierCochain:
    if i < 0:
        raise ValueError("i must be >= 0")
    return FourierCochain(L.fq, ((1, L.p**i),), f"delta:i={i}", L)


def b_shift(f: FourierCochain, m: Poly) -> FourierCochain:
    if m.is_zero():
        raise ValueError("shift by zero")
    m = m.monic()
    return FourierCochain(f.fq, tuple((lam, s * m) for lam, s in f.components), level=f.level)


def eisenstein_En(L: Level) -> FourierCochain:
    if L.r < 2:
        raise ValueError("E_n needs r >= 2")
    q, P = L.q, L.norm
    c = Fraction(1, (q - 1) * (q * q - 1))
    comps = ((c * P, Poly.one(L.fq)), (-c * (P + 1), L.p), (c, L.p**2))
    return FourierCochain(L.fq, comps, "En", L)


def g_of_Cprime(L: Level) -> FourierCochain:
    M, _ = eisenstein_constants(L)
    f = eisenstein_En(L) * Fraction(1, M * L.norm ** (L.r - 2))
    return FourierCochain(f.fq, f.components, "gC'", L)


def g_of_Cprime_eval(L: Level, e: Edge) -> Fraction:
    return eval_cochain(g_of_Cprime(L), e)


def cochain_from_selector(L: Level, text: str) -> FourierCochain:
    """Selectors: ``delta:i=<int>``, ``En``, ``gC'``."""
    t = text.strip()
    if t.startswith("delta:"):
        key, _, val = t[len("delta:") :].partition("=")
        if key != "i":
            raise ValueError(f"bad cochain selector {text!r}")
        return delta_cochain(int(val), L)
    if t == "En":
        return eisenstein_En(L)
    if t in ("gC'", "gC"):
        return g_of_Cprime(L)
    raise ValueError(f"unknown cochain selector {text!r}")


# inversion ----------------------------------------------------------------


def _residues(fq: FqConfig, k: int):
    """All u in (pi)/(pi^k) as exact Laurent polynomials."""
    for coeffs in product(range(fq.q), repeat=max(k - 1, 0)):
        yield Laurent(fq, 1, coeffs)


def fourier_from_values(f: Callable[[Edge], Fraction], fq: FqConfig, k: int, m: Poly | None = None) -> Fraction:
    """Recover Fourier data from values on level-k edges.

    ``m is None``: the constant coefficient f^0(pi^k).
    Otherwise: the coefficient at the index (m, k - 2), which needs deg m <= k - 2.
    """
    q, p = fq.q, fq.p
    if k < 1:
        raise ValueError("edge level must be >= 1")
    if m is None:
        s = sum((f(Edge(k, u, 0)) for u in _residues(fq, k)), Fraction(0))
        return s * Fraction(q) ** (1 - k)
    j = k - 2
    if m.degree() > j:
        raise ValueError("index degree exceeds the edge level")
    # eta(-m u) only sees the pi^1 coefficient of -m u, so group values by its trace
    negm = [fq.neg(c) for c in m.coeffs]
    weights = [Fraction(0)] * p
    for u in _residues(fq, k):
        s = 0
        for i, c in enumerate(negm):
            s = fq.add(s, fq.mul(c, u[1 + i]))
        weights[fq.trace(s)] += f(Edge(k, u, 0))
    acc = CycRat.from_exponent_weights(p, enumerate(weights))
    return acc.to_rational() / Fraction(q) ** (1 + j)


# automorphy ---------------------------------------------------------------


def log_abs_linear(c: Poly, d: Poly, v) -> int:
    """log_q |c z + d| for z reducing to the vertex v = (k, y)."""
    fq = c.fq
    lin = Laurent.from_poly(c) * v.y + Laurent.from_poly(d)
    cands = []
    if not c.is_zero():
        cands.append(c.degree() - v.k)
    if not lin.known_zero():
        cands.append(-lin.valuation())
    if not cands:
        raise ValueError("singular linear form")
    return max(cands)


def automorphy_defect(c: Poly, d: Poly, e: Edge, q: int) -> int:
    """(q^2 - 1) * (log_q|cz+d| at o(e) - log_q|cz+d| at t(e)).

    For gamma = (a, b; c, d) in Gamma_0(n) and i <= r, the cochain of
    Delta_{p^i} satisfies f(gamma e) - f(e) = automorphy_defect(c, d, e, q).
    """
    from ..tree import origin, terminus

    return (q * q - 1) * (log_abs_linear(c, d, origin(e)) - log_abs_linear(c, d, terminus(e)))
