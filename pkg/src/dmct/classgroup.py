"""Closed-form structure of the rational cuspidal divisor class group of X_0(p^r)."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .algebra.snf import smith_normal_form
from .level import Level, eisenstein_constants


def canonical_factors(orders) -> list[int]:
    """Invariant factors of a product of cyclic groups, largest first, 1s dropped.

    Each factor is divisible by the next one (e.g. [16, 8, 8], [21, 7]).
    A 0 entry stands for an infinite cyclic summand and sorts first.
    """
    orders = [int(o) for o in orders if int(o) != 1]
    if not orders:
        return []
    n = len(orders)
    diag = [[orders[i] if i == j else 0 for j in range(n)] for i in range(n)]
    factors = [abs(f) for f in smith_normal_form(diag).factors if abs(f) != 1]
    return sorted(factors, key=lambda f: (f != 0, -f))


@dataclass(frozen=True)
class AbelianStructure:
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(canonical_factors(self.factors)))

    @classmethod
    def cyclic(cls, *orders) -> "AbelianStructure":
        return cls(tuple(orders))

    @property
    def order(self) -> int:
        if 0 in self.factors:
            raise ValueError("infinite group")
        return prod(self.factors)

    def to_list(self) -> list[int]:
        return list(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "0"
        return " x ".join(f"Z/{f}" for f in self.factors)


def _ell_part(n: int, ell: int) -> int:
    out = 1
    while n % ell == 0:
        n //= ell
        out *= ell
    return out


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def class_group_structure(L: Level) -> AbelianStructure:
    M, N = eisenstein_constants(L)
    r, P = L.r, L.norm
    if r == 1:
        return AbelianStructure.cyclic(N)
    m = (r - 1) // 2
    orders = [P ** (r - i) * M for i in range(1, m + 1)]
    orders += [P**i * M for i in range(m + 1, r - 1)]
    orders += [M, N]
    return AbelianStructure(tuple(orders))


def ell_primary(S: AbelianStructure, ell: int) -> AbelianStructure:
    if not _is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    return AbelianStructure(tuple(_ell_part(f, ell) for f in S.factors))


class HypothesisError(ValueError):
    pass


def torsion_prediction(L: Level, ell: int) -> AbelianStructure:
    """ell-part of (Z/M)^(r-1) x Z/N, valid for ell not dividing q(q-1)."""
    if not _is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    q = L.q
    if (q * (q - 1)) % ell == 0:
        raise HypothesisError("outside Main Theorem hypothesis")
    if L.r < 2:
        raise ValueError("torsion prediction needs r >= 2")
    M, N = eisenstein_constants(L)
    return AbelianStructure(tuple([_ell_part(M, ell)] * (L.r - 1) + [_ell_part(N, ell)]))


def order_of_Cprime(L: Level) -> int:
    if L.r < 2:
        raise ValueError("C' needs r >= 2")
    M, _ = eisenstein_constants(L)
    return M * L.norm ** (L.r - 2)


def closed_form_order(L: Level) -> int:
    M, N = eisenstein_constants(L)
    r = L.r
    m = (r - 1) // 2
    e = sum(r - i for i in range(1, m + 1)) + sum(range(m + 1, r - 1))
    return N * M ** (r - 1) * L.norm**e


def admissible_primes(L: Level, bound: int = 50) -> list[int]:
    q = L.q
    return [ell for ell in range(2, bound + 1) if _is_prime(ell) and (q * (q - 1)) % ell]


def consistency_report(L: Level, bound: int = 50) -> dict:
    """Cross-checks between the structure theorem and the torsion prediction."""
    if L.r < 2:
        raise ValueError("consistency report needs r >= 2")
    S = class_group_structure(L)
    S_prev = class_group_structure(L.with_r(L.r - 1))
    M, _ = eisenstein_constants(L)
    ordC = order_of_Cprime(L)
    checks = []

    def add(name, params, expected, got):
        checks.append({"name": name, "params": params, "expected": expected, "got": got, "pass": expected == got})

    for ell in admissible_primes(L, bound):
        part = ell_primary(S, ell)
        add("ell_part_matches_prediction", {"ell": ell}, torsion_prediction(L, ell).to_list(), part.to_list())
        prev = ell_primary(S_prev, ell).order
        add("old_new_cardinality", {"ell": ell}, prev * _ell_part(M, ell), part.order)
        c = _ell_part(ordC, ell)
        add("cprime_order_divides", {"ell": ell}, 0, part.order % c)
    return {"level": L.serialize(), "checks": checks}
