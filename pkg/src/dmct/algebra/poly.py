"""Polynomials in A = F_q[T].

Coefficients are element codes of the owning :class:`FqConfig`, stored in a
tuple indexed by degree with no trailing zeros (the zero polynomial is ``()``).
"""

from __future__ import annotations

import re
from itertools import product

from .fq import FqConfig


class Poly:
    __slots__ = ("fq", "coeffs")

    def __init__(self, fq: FqConfig, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.fq = fq
        self.coeffs = tuple(c)

    # constructors ------------------------------------------------------

    @classmethod
    def zero(cls, fq):
        return cls(fq, ())

    @classmethod
    def one(cls, fq):
        return cls(fq, (1,))

    @classmethod
    def T(cls, fq):
        return cls(fq, (0, 1))

    @classmethod
    def constant(cls, fq, c: int):
        return cls(fq, (c,))

    @classmethod
    def parse(cls, fq: FqConfig, text: str) -> "Poly":
        """Parse a sparse sum such as ``"T^3+2*T+1"``.

        Integer coefficients are reduced into F_q with :meth:`FqConfig.from_int`.
        """
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial text")
        s = re.sub(r"(?<=[^\^*])-", "+-", s)
        acc: dict[int, int] = {}
        for term in filter(None, s.split("+")):
            m = re.fullmatch(r"(-?)(\d*)\*?(T(?:\^(\d+))?)?", term)
            if not m or (not m.group(2) and not m.group(3)):
                raise ValueError(f"cannot parse polynomial term {term!r}")
            sign, num, var, exp = m.groups()
            cval = int(num) if num else 1
            if sign:
                cval = -cval
            deg = (int(exp) if exp else 1) if var else 0
            c = fq.from_int(cval) if cval >= 0 or fq.e == 1 else fq.neg(fq.from_int(-cval))
            acc[deg] = fq.add(acc.get(deg, 0), c)
        n = max(acc) + 1
        return cls(fq, [acc.get(i, 0) for i in range(n)])

    # basic properties --------------------------------------------------

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs and self.fq == other.fq
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def sort_key(self):
        """Degree first, then coefficients from the leading one down."""
        return (self.degree(), tuple(reversed(self.coeffs)))

    def __lt__(self, other: "Poly") -> bool:
        return self.sort_key() < other.sort_key()

    # arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return Poly(self.fq, (self.fq.from_int(other),))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        add = self.fq.add_table
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly(self.fq, [add[a[i] if i < len(a) else 0][b[i] if i < len(b) else 0] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        neg = self.fq.neg_table
        return Poly(self.fq, [neg[c] for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.fq, ())
        add, mul = self.fq.add_table, self.fq.mul_table
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                row = mul[ai]
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = add[out[i + j]][row[bj]]
        return Poly(self.fq, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        row = self.fq.mul_table[c]
        return Poly(self.fq, [row[x] for x in self.coeffs])

    def __pow__(self, n: int) -> "Poly":
        result = Poly.one(self.fq)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        fq = self.fq
        r = list(self.coeffs)
        db = other.degree()
        inv_lead = fq.inv(other.lead())
        qcoeffs = [0] * max(len(r) - db, 0)
        b = other.coeffs
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c == 0:
                continue
            f = fq.mul(c, inv_lead)
            qcoeffs[i - db] = f
            for j in range(db + 1):
                r[i - db + j] = fq.sub(r[i - db + j], fq.mul(f, b[j]))
        return Poly(fq, qcoeffs), Poly(fq, r[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero()

    def monic(self) -> "Poly":
        """Monic associate; the zero polynomial is its own associate."""
        if self.is_zero():
            return self
        return self.scale(self.fq.inv(self.lead()))

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def powmod(self, n: int, m: "Poly") -> "Poly":
        result = Poly.one(self.fq) % m
        base = self % m
        while n:
            if n & 1:
                result = (result * base) % m
            base = (base * base) % m
            n >>= 1
        return result

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = self.fq.add(self.fq.mul(acc, x), c)
        return acc

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return "+".join(terms)


def absolute_norm(f: Poly) -> int:
    """|f| = q^deg f."""
    if f.is_zero():
        raise ValueError("zero input")
    return f.fq.q ** f.degree()


def monic_polys(fq: FqConfig, degree: int):
    """All monic polynomials of the given degree, in increasing order."""
    for tail in product(range(fq.q), repeat=degree):
        yield Poly(fq, tuple(reversed(tail)) + (1,))


def all_polys(fq: FqConfig, max_degree: int, *, nonzero: bool = True):
    """Every polynomial of degree <= max_degree."""
    for coeffs in product(range(fq.q), repeat=max_degree + 1):
        p = Poly(fq, coeffs)
        if nonzero and p.is_zero():
            continue
        yield p


def is_prime_poly(f: Poly) -> bool:
    """Irreducibility over F_q via Rabin's test.

    f is irreducible iff T^(q^n) = T mod f and gcd(T^(q^(n/s)) - T, f) = 1 for
    every prime s dividing n = deg f.
    """
    if f.is_zero():
        raise ValueError("zero input")
    n = f.degree()
    if n < 1:
        return False
    fq = f.fq
    f = f.monic()
    T = Poly.T(fq)

    def frob_power(k):
        x = T % f
        for _ in range(k):
            x = x.powmod(fq.q, f)
        return x

    if (frob_power(n) - T) % f != Poly.zero(fq):
        return False
    primes = [s for s in range(2, n + 1) if n % s == 0 and all(s % t for t in range(2, s))]
    for s in primes:
        g = (frob_power(n // s) - T).gcd(f)
        if g.degree() > 0:
            return False
    return True


def smallest_monic_factor(f: Poly) -> Poly:
    """Least-degree monic non-unit divisor (necessarily irreducible)."""
    fq = f.fq
    for d in range(1, f.degree() // 2 + 1):
        for g in monic_polys(fq, d):
            if g.divides(f):
                return g
    return f.monic()


def factor_monic(f: Poly) -> dict:
    """Factorization {irreducible: exponent} of a monic polynomial by trial division.

    Only used on small inputs (divisor sums of Fourier coefficients).
    """
    out: dict = {}
    f = f.monic()
    while f.degree() > 0:
        g = smallest_monic_factor(f)
        e = 0
        while g.divides(f):
            f = f // g
            e += 1
        out[g] = e
    return out


def divisor_sum(f: Poly) -> int:
    """sigma(f) = sum over monic divisors d of |d|."""
    q = f.fq.q
    total = 1
    for g, e in factor_monic(f).items():
        n = q ** g.degree()
        total *= (n ** (e + 1) - 1) // (n - 1)
    return total
