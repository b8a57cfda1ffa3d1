"""Height-aggregated cuspidal divisors on X_0(p^r) and the degeneracy maps.

A :class:`HeightDivisor` stores one rational coefficient per height p^i,
i = 0..r, the coefficient of the sum of all cusps of that height.  Height 1
is the cusp [0] and height p^r is [infinity].
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .algebra.snf import smith_normal_form
from .level import Level, LevelError, cusp_count


@dataclass(frozen=True)
class HeightDivisor:
    level: Level
    coeffs: tuple

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coeffs)
        if len(c) != self.level.r + 1:
            raise ValueError(f"expected {self.level.r + 1} coefficients, got {len(c)}")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, L: Level) -> "HeightDivisor":
        return cls(L, (0,) * (L.r + 1))

    @classmethod
    def basis(cls, L: Level, i: int) -> "HeightDivisor":
        c = [0] * (L.r + 1)
        c[i] = 1
        return cls(L, c)

    def _check(self, other: "HeightDivisor"):
        if self.level != other.level:
            raise LevelError("level mismatch")

    def __add__(self, other):
        self._check(other)
        return HeightDivisor(self.level, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return HeightDivisor(self.level, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return HeightDivisor(self.level, [-a for a in self.coeffs])

    def __mul__(self, c):
        c = Fraction(c)
        return HeightDivisor(self.level, [c * a for a in self.coeffs])

    __rmul__ = __mul__

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def to_json(self) -> str:
        return json.dumps([{"height_exp": i, "coeff": str(c)} for i, c in enumerate(self.coeffs)])

    @classmethod
    def from_json(cls, L: Level, text: str) -> "HeightDivisor":
        c = [Fraction(0)] * (L.r + 1)
        for item in json.loads(text):
            c[int(item["height_exp"])] = Fraction(item["coeff"])
        return cls(L, c)

    def __str__(self) -> str:
        terms = [f"{c}*P{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


def degree(D: HeightDivisor) -> Fraction:
    return sum((c * cusp_count(D.level, i) for i, c in enumerate(D.coeffs)), Fraction(0))


def alpha_pull(D: HeightDivisor) -> HeightDivisor:
    """Pullback along the forgetful degeneracy map X_0(p^r) -> X_0(p^(r-1))."""
    r = D.level.r + 1
    L = D.level.with_r(r)
    P, q = L.norm, L.q
    out = [Fraction(0)] * (r + 1)
    for j, c in enumerate(D.coeffs):
        if j == r - 1:
            out[j] += (q - 1) * c
            out[r] += c
        elif j <= (r - 1) // 2:
            out[j] += P * c
        else:
            out[j] += c
    return HeightDivisor(L, out)


def beta_push(D: HeightDivisor) -> HeightDivisor:
    """Pushforward along the quotient degeneracy map X_0(p^r) -> X_0(p^(r-1))."""
    r = D.level.r
    if r < 2:
        raise LevelError("beta_push needs r >= 2")
    L = D.level.with_r(r - 1)
    P, q = L.norm, L.q
    out = [Fraction(0)] * r
    for j, c in enumerate(D.coeffs):
        if j == 0:
            out[0] += c
        elif j == 1:
            out[0] += Fraction(P - 1, q - 1) * c
        elif j <= r // 2:
            out[j - 1] += P * c
        else:
            out[j - 1] += c
    return HeightDivisor(L, out)


def up_action(D: HeightDivisor) -> HeightDivisor:
    return alpha_pull(beta_push(D))


def height_flip(D: HeightDivisor) -> HeightDivisor:
    return HeightDivisor(D.level, tuple(reversed(D.coeffs)))


def _delta0(L: Level) -> HeightDivisor:
    r, P, q = L.r, L.norm, L.q
    c = [Fraction(0)] * (r + 1)
    c[0] = Fraction(P**r)
    for j in range(1, r):
        c[j] = Fraction((q - 1) * P ** (max(r + 1 - 2 * j, 1) - 1))
    c[r] = Fraction(1)
    return HeightDivisor(L, c)


def _delta1(L: Level) -> HeightDivisor:
    r, P, q = L.r, L.norm, L.q
    c = [Fraction(0)] * (r + 1)
    c[0] = Fraction(P ** (r - 1))
    for j in range(1, r + 1):
        rho = 1 if j < r else q - 1
        c[j] = Fraction(q - 1, rho) * P ** max(r - 2 * j + 1, 1)
    return HeightDivisor(L, c)


def _phi_divisor(L: Level) -> HeightDivisor:
    P, q = L.norm, L.q
    scale = (q - 1) * (P * P - 1) * P ** (L.r - 2)
    c = [Fraction(0)] * (L.r + 1)
    c[0] = Fraction(scale * (P - 1), q - 1)
    c[1] = Fraction(-scale)
    return HeightDivisor(L, c)


def _delta2_at_r2(L: Level) -> HeightDivisor:
    # solve div(phi) = |p|(D0 - D1) + (D2 - D1) for D2
    D0, D1 = _delta0(L), _delta1(L)
    D2 = _phi_divisor(L) - (D0 - D1) * L.norm + D1
    if D2 != height_flip(D0):
        raise ArithmeticError("height flip disagrees with the linear solve at r=2")
    return D2


def delta_divisor(i: int, L: Level) -> HeightDivisor:
    """Divisor of Delta_{p^i} on X_0(p^r)."""
    r = L.r
    if not 0 <= i <= r:
        raise LevelError(f"index {i} outside [0, {r}]")
    if i == 0:
        D = _delta0(L)
    elif i == 1 and r >= 2:
        D = _delta1(L)
    elif i == r:
        if r == 2:
            D = _delta2_at_r2(L)
        else:
            if r > 2:
                # keep the r=2 cross-check in force for this prime
                _delta2_at_r2(L.with_r(2))
            D = height_flip(_delta0(L))
    else:
        D = delta_divisor(i, L.with_r(i))
        while D.level.r < r:
            D = alpha_pull(D)
    if not (D.is_integral() and D.is_effective()):
        raise ArithmeticError(f"divisor of Delta_p^{i} is not a nonnegative integer divisor: {D}")
    return D


def standard_divisors(L: Level) -> tuple[list[HeightDivisor], HeightDivisor | None]:
    """(C_0, ..., C_{r-1}) and C' (None when r < 2)."""
    r = L.r
    Cs = []
    for i in range(r):
        c = [0] * (r + 1)
        c[i] = 1
        c[r] = -cusp_count(L, i)
        Cs.append(HeightDivisor(L, c))
    Cp = None
    if r >= 2:
        c = [0] * (r + 1)
        c[0] = Fraction(L.norm - 1, L.q - 1)
        c[1] = -1
        Cp = HeightDivisor(L, c)
        assert Cp.is_integral()
    return Cs, Cp


def beta_relation_matrix(L: Level) -> list[list[int]]:
    """Rows: beta_push(C_i) in the C basis one level down (coefficients of P_0..P_{r-2})."""
    Cs, _ = standard_divisors(L)
    rows = []
    for C in Cs:
        img = beta_push(C)
        assert degree(img) == 0 and img.is_integral()
        rows.append([int(x) for x in img.coeffs[: L.r - 1]])
    return rows


def beta_cokernel(L: Level) -> list[int]:
    """Nontrivial invariant factors of Div^0(p^(r-1)) / beta_push(Div^0(p^r))."""
    if L.r < 2:
        raise LevelError("beta_cokernel needs r >= 2")
    M = beta_relation_matrix(L)
    factors = smith_normal_form(M).factors
    from .classgroup import canonical_factors

    return canonical_factors([f for f in factors if f != 1])
