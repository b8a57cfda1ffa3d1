"""Finite fields F_q, q = p^e, with elements encoded as small integers.

An element is the integer ``sum(c_i * p**i)`` where ``c_i`` are the
coordinates in the power basis 1, x, ..., x^(e-1) of F_p[x]/(modulus).
For e = 1 the code is just the residue mod p.
"""

from __future__ import annotations

import re
from functools import cached_property

import numpy as np


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _pmul_mod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """Multiply two F_p[x] coefficient lists and reduce by a monic modulus."""
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    e = len(mod) - 1
    for i in range(len(prod) - 1, e - 1, -1):
        c = prod[i]
        if c:
            for j in range(e + 1):
                prod[i - e + j] = (prod[i - e + j] - c * mod[j]) % p
    return (prod + [0] * e)[:e]


def _parse_small_poly(text: str, p: int) -> list[int]:
    """Parse ``x^2+x+1`` style text over F_p into a coefficient list."""
    text = text.replace(" ", "").replace("-", "+-")
    coeffs: dict[int, int] = {}
    for term in filter(None, text.split("+")):
        m = re.fullmatch(r"(-?\d*)\*?(?:([a-zA-Z])(?:\^(\d+))?)?", term)
        if not m or term in ("-",):
            raise ValueError(f"cannot parse modulus term {term!r}")
        c, var, exp = m.groups()
        if var is None:
            deg = 0
            cval = int(c)
        else:
            deg = int(exp) if exp else 1
            cval = -1 if c == "-" else (int(c) if c else 1)
        coeffs[deg] = (coeffs.get(deg, 0) + cval) % p
    n = max(coeffs) + 1 if coeffs else 0
    out = [coeffs.get(i, 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


class FqConfig:
    """The finite field with q = p^e elements.

    For e > 1 a monic irreducible ``modulus`` over F_p must be supplied as a
    coefficient list (constant term first) or as text like ``"x^2+x+1"``.
    """

    def __init__(self, p: int, e: int = 1, modulus=None):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.q = p**e
        if e == 1:
            self.modulus = (0, 1)
        else:
            if modulus is None:
                raise ValueError("a modulus polynomial is required when e > 1")
            if isinstance(modulus, str):
                modulus = _parse_small_poly(modulus, p)
            mod = [int(c) % p for c in modulus]
            while mod and mod[-1] == 0:
                mod.pop()
            if len(mod) - 1 != e or mod[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {e}")
            self.modulus = tuple(mod)
            if not self._modulus_irreducible():
                raise ValueError("modulus is reducible over F_p")
        self._build_tables()

    @classmethod
    def from_q(cls, q: int, modulus=None) -> "FqConfig":
        for p in range(2, q + 1):
            if q % p == 0:
                break
        e, t = 0, q
        while t % p == 0:
            t //= p
            e += 1
        if t != 1:
            raise ValueError(f"q={q} is not a prime power")
        return cls(p, e, modulus)

    @classmethod
    def parse(cls, text: str) -> "FqConfig":
        """Parse ``"q=4;modulus=x^2+x+1"`` or ``"q=3"``."""
        fields = dict(part.split("=", 1) for part in text.replace(" ", "").split(";") if part)
        if "q" not in fields:
            raise ValueError(f"missing q in field spec {text!r}")
        return cls.from_q(int(fields["q"]), fields.get("modulus"))

    def _modulus_irreducible(self) -> bool:
        # brute force: no monic factor of degree <= e/2
        p, e = self.p, self.e
        mod = list(self.modulus)
        for d in range(1, e // 2 + 1):
            for code in range(p**d):
                cand = [(code // p**i) % p for i in range(d)] + [1]
                r = mod[:]
                for i in range(len(r) - 1, d - 1, -1):
                    c = r[i]
                    if c:
                        for j in range(d + 1):
                            r[i - d + j] = (r[i - d + j] - c * cand[j]) % p
                if not any(r[:d]):
                    return False
        return True

    def _build_tables(self) -> None:
        q, p, e = self.q, self.p, self.e
        vecs = [[(c // p**i) % p for i in range(e)] for c in range(q)]

        def code(v):
            return sum(int(x) * p**i for i, x in enumerate(v))

        self.add_table = [[code([(a + b) % p for a, b in zip(vecs[x], vecs[y])]) for y in range(q)] for x in range(q)]
        self.neg_table = [code([(-a) % p for a in vecs[x]]) for x in range(q)]
        if e == 1:
            self.mul_table = [[(x * y) % p for y in range(q)] for x in range(q)]
        else:
            mod = list(self.modulus)
            self.mul_table = [[code(_pmul_mod(vecs[x], vecs[y], mod, p)) for y in range(q)] for x in range(q)]
        self.inv_table = [0] * q
        for x in range(1, q):
            for y in range(1, q):
                if self.mul_table[x][y] == 1:
                    self.inv_table[x] = y
                    break
        self.units = tuple(range(1, q))

    # scalar operations -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        return self.inv_table[a]

    def from_int(self, n: int) -> int:
        """Reduce an integer literal into F_q.

        For prime fields this is reduction mod p.  For e > 1 the integer must
        already be an element code in [0, q).
        """
        if self.e == 1:
            return n % self.p
        if not 0 <= n < self.q:
            raise ValueError(f"coefficient {n} is not an element code of F_{self.q}")
        return n

    def power(self, a: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self.mul_table[r][a]
            a = self.mul_table[a][a]
            n >>= 1
        return r

    def trace(self, a: int) -> int:
        """Absolute trace F_q -> F_p, returned as an integer in [0, p)."""
        t, x = 0, a
        for _ in range(self.e):
            t = self.add_table[t][x]
            x = self.power(x, self.p)
        if t >= self.p:
            raise ArithmeticError("trace left the prime field")
        return t

    # numpy mirrors used by the vectorized evaluator
    @cached_property
    def np_add(self) -> np.ndarray:
        return np.array(self.add_table, dtype=np.int64)

    @cached_property
    def np_mul(self) -> np.ndarray:
        return np.array(self.mul_table, dtype=np.int64)

    def __eq__(self, other) -> bool:
        return isinstance(other, FqConfig) and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __repr__(self) -> str:
        return f"FqConfig(q={self.q})" if self.e == 1 else f"FqConfig(q={self.q}, modulus={self.modulus})"

    def spec(self) -> str:
        if self.e == 1:
            return f"q={self.q}"
        terms = []
        for i in range(self.e, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 and i else (str(c) if i == 0 else f"{c}*{mono}"))
        return f"q={self.q};modulus={'+'.join(terms)}"


def trace_to_prime_field(fq: FqConfig, x: int) -> int:
    return fq.trace(x)
