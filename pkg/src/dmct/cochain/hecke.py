"""Hecke operators T_m and U_p acting on cochain values through coset sums."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Union

from ..algebra.poly import Poly, all_polys, monic_polys
from ..level import Level
from ..tree import Edge, GMatrix, translate
from .fourier import FourierCochain, eval_cochain

ValueFn = Callable[[Edge], Fraction]


def _polys_below(fq, deg: int):
    yield Poly.zero(fq)
    if deg > 0:
        yield from all_polys(fq, deg - 1)


def hecke_cosets(L: Level, m: Poly) -> list[GMatrix]:
    """(a, b; 0, d) with ad = m, a and d monic, gcd(a, n) = 1, deg b < deg d."""
    fq = L.fq
    m = m.monic()
    out = []
    for da in range(m.degree() + 1):
        for a in monic_polys(fq, da):
            d, rem = divmod(m, a)
            if not rem.is_zero() or a.gcd(L.n).degree() > 0:
                continue
            for b in _polys_below(fq, d.degree()):
                out.append(GMatrix.of(fq, a, b, 0, d))
    return out


def up_cosets(L: Level) -> list[GMatrix]:
    fq = L.fq
    return [GMatrix.of(fq, 1, b, 0, L.p) for b in _polys_below(fq, L.deg)]


def _as_fn(f: Union[FourierCochain, ValueFn]) -> ValueFn:
    if isinstance(f, FourierCochain):
        return lambda e: eval_cochain(f, e)
    return f


def parse_op(L: Level, op) -> list[GMatrix]:
    """``("U", None)``, ``("T", m)`` or text such as ``"U"``, ``"T:T+1"``."""
    if isinstance(op, str):
        kind, _, arg = op.partition(":")
        op = (kind, Poly.parse(L.fq, arg) if arg else None)
    kind, m = op
    if kind == "U":
        return up_cosets(L)
    if kind == "T":
        return hecke_cosets(L, m)
    raise ValueError(f"unknown Hecke operator {op!r}")


def hecke_apply(f, L: Level, op, e: Edge) -> Fraction:
    """(f | op)(e) = sum over cosets g of f(g e)."""
    fn = _as_fn(f)
    return sum((fn(translate(g, e)) for g in parse_op(L, op)), Fraction(0))


def hecke_operator(f, L: Level, op) -> ValueFn:
    """f | op as a value function, so operators can be composed."""
    fn = _as_fn(f)
    cosets = parse_op(L, op)
    return lambda e: sum((fn(translate(g, e)) for g in cosets), Fraction(0))
