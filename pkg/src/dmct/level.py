"""Prime-power levels p^r over F_q[T] and the cusps of X_0(p^r)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .algebra.fq import FqConfig
from .algebra.poly import Poly, absolute_norm, all_polys, is_prime_poly


class LevelError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Level:
    fq: FqConfig
    p: Poly
    r: int

    @property
    def q(self) -> int:
        return self.fq.q

    @property
    def deg(self) -> int:
        return self.p.degree()

    @cached_property
    def norm(self) -> int:
        return absolute_norm(self.p)

    @cached_property
    def n(self) -> Poly:
        return self.p**self.r

    def with_r(self, r: int) -> "Level":
        # p was validated when this level was made
        if not isinstance(r, int) or r < 1:
            raise LevelError("bad exponent")
        return Level(self.fq, self.p, r)

    def key(self):
        return (self.fq.spec(), self.p.coeffs, self.r)

    def __eq__(self, other) -> bool:
        return isinstance(other, Level) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def serialize(self) -> str:
        return f"{self.fq.spec()};p={self.p};r={self.r}"

    def __repr__(self) -> str:
        return f"Level({self.serialize()})"

    @classmethod
    def parse(cls, text: str) -> "Level":
        fields = dict(part.split("=", 1) for part in text.replace(" ", "").split(";") if part)
        fq_text = f"q={fields['q']}" + (f";modulus={fields['modulus']}" if "modulus" in fields else "")
        fq = FqConfig.parse(fq_text)
        return make_level(fq, Poly.parse(fq, fields["p"]), int(fields["r"]))


def make_level(fq: FqConfig, p: Poly, r: int) -> Level:
    if not isinstance(r, int) or r < 1:
        raise LevelError("bad exponent")
    if p.is_zero() or not is_prime_poly(p):
        raise LevelError("not prime")
    return Level(fq, p.monic(), r)


def eisenstein_constants(L: Level) -> tuple[int, int]:
    """(M, N) with M = (|p|^2-1)/(q^2-1) and N = (|p|-1)/(q^2-1) or (|p|-1)/(q-1)."""
    q, P = L.q, L.norm
    M, rem = divmod(P * P - 1, q * q - 1)
    assert rem == 0
    nden = q * q - 1 if L.deg % 2 == 0 else q - 1
    N, rem = divmod(P - 1, nden)
    assert rem == 0
    return M, N


def _height_modulus_exp(L: Level, i: int) -> int:
    return min(i, L.r - i)


def cusp_count(L: Level, i: int) -> int:
    if not 0 <= i <= L.r:
        raise LevelError(f"height exponent {i} outside [0, {L.r}]")
    s = _height_modulus_exp(L, i)
    if s == 0:
        return 1
    P = L.norm
    return (P**s - P ** (s - 1)) // (L.q - 1)


@dataclass(frozen=True)
class Cusp:
    """The cusp [a; p^i] with ``a`` the canonical representative of its unit orbit."""

    a: Poly
    i: int

    def serialize(self) -> str:
        return f"a={self.a};i={self.i}"

    def __lt__(self, other: "Cusp") -> bool:
        return (self.i, self.a.sort_key()) < (other.i, other.a.sort_key())


def _canonical_residue(L: Level, a: Poly, i: int) -> Poly:
    s = _height_modulus_exp(L, i)
    if s == 0:
        return Poly.one(L.fq)
    mod = L.p**s
    if a.gcd(L.p).degree() != 0:
        raise LevelError(f"{a} is not coprime to {L.p}")
    return min(((a.scale(u)) % mod for u in L.fq.units), key=Poly.sort_key)


def make_cusp(L: Level, a: Poly, i: int) -> Cusp:
    if not 0 <= i <= L.r:
        raise LevelError(f"height exponent {i} outside [0, {L.r}]")
    return Cusp(_canonical_residue(L, a, i), i)


def cusp_equal(L: Level, c1: tuple, c2: tuple) -> bool:
    """Compare cusps given as (a, i) pairs."""
    (a, i), (b, j) = c1, c2
    if i != j:
        return False
    s = _height_modulus_exp(L, i)
    if s == 0:
        return True
    mod = L.p**s
    return any(((b.scale(u)) - a) % mod == Poly.zero(L.fq) for u in L.fq.units)


def enumerate_cusps(L: Level) -> list[Cusp]:
    out: list[Cusp] = []
    for i in range(L.r + 1):
        s = _height_modulus_exp(L, i)
        if s == 0:
            out.append(Cusp(Poly.one(L.fq), i))
            continue
        seen = set()
        for a in all_polys(L.fq, s * L.deg - 1):
            if a.gcd(L.p).degree() != 0:
                continue
            c = _canonical_residue(L, a, i)
            if c not in seen:
                seen.add(c)
        out.extend(Cusp(a, i) for a in sorted(seen, key=Poly.sort_key))
    return out


def parse_cusp(L: Level, text: str) -> Cusp:
    fields = dict(part.split("=", 1) for part in text.replace(" ", "").split(";") if part)
    return make_cusp(L, Poly.parse(L.fq, fields["a"]), int(fields["i"]))
