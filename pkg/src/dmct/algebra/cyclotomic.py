"""Exact arithmetic in Q(zeta_p).

Elements are stored by coordinates in the basis 1, zeta, ..., zeta^(p-2) of
Q[zeta]/(Phi_p), using zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)).
"""

from __future__ import annotations

from fractions import Fraction


class CycRat:
    __slots__ = ("p", "coords")

    def __init__(self, p: int, coords=None):
        self.p = p
        n = p - 1
        c = [Fraction(0)] * n if coords is None else [Fraction(x) for x in coords]
        if len(c) != n:
            raise ValueError(f"expected {n} coordinates for p={p}")
        self.coords = tuple(c)

    @classmethod
    def rational(cls, p: int, x) -> "CycRat":
        return cls(p, [Fraction(x)] + [0] * (p - 2))

    @classmethod
    def from_exponent_weights(cls, p: int, weights) -> "CycRat":
        """sum(w * zeta^k) for (k, w) pairs or a mapping k -> w; exponents taken mod p."""
        items = weights.items() if hasattr(weights, "items") else weights
        full = [Fraction(0)] * p
        for k, w in items:
            full[k % p] += Fraction(w)
        return cls._reduce(p, full)

    @classmethod
    def zeta_power(cls, p: int, k: int) -> "CycRat":
        return cls.from_exponent_weights(p, {k: 1})

    @staticmethod
    def _reduce(p: int, full):
        top = full[p - 1]
        return CycRat(p, [full[i] - top for i in range(p - 1)])

    def _full(self):
        return list(self.coords) + [Fraction(0)]

    def __add__(self, other):
        if not isinstance(other, CycRat):
            other = CycRat.rational(self.p, other)
        return CycRat(self.p, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycRat(self.p, [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-other if isinstance(other, CycRat) else -Fraction(other))

    def __mul__(self, other):
        p = self.p
        if not isinstance(other, CycRat):
            f = Fraction(other)
            return CycRat(p, [a * f for a in self.coords])
        full = [Fraction(0)] * p
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        full[(i + j) % p] += a * b
        return CycRat._reduce(p, full)

    __rmul__ = __mul__

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ArithmeticError(f"non-rational character sum {self.coords}")
        return self.coords[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, CycRat):
            return self.p == other.p and self.coords == other.coords
        try:
            return self.is_rational() and self.coords[0] == Fraction(other)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.coords))

    def __repr__(self) -> str:
        return f"CycRat(p={self.p}, {[str(c) for c in self.coords]})"
