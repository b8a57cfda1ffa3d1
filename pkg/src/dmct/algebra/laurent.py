"""Truncated Laurent series over F_q in the uniformizer pi = 1/T.

A value is ``sum(coeffs[i] * pi**(lo + i))`` known modulo ``pi**prec``.
``prec=None`` marks an exact value (for instance the image of a polynomial).
Reading a coefficient at or beyond the precision raises :class:`PrecisionError`.
"""

from __future__ import annotations

import re

from .fq import FqConfig
from .poly import Poly


class PrecisionError(ArithmeticError):
    """A coefficient or valuation was requested beyond the known precision."""


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Laurent:
    __slots__ = ("fq", "lo", "coeffs", "prec")

    def __init__(self, fq: FqConfig, lo: int, coeffs, prec=None):
        c = list(coeffs)
        if prec is not None:
            c = c[: max(prec - lo, 0)]
        while c and c[-1] == 0:
            c.pop()
        start = 0
        while start < len(c) and c[start] == 0:
            start += 1
        c = c[start:]
        self.fq = fq
        self.lo = lo + start if c else 0
        self.coeffs = tuple(c)
        self.prec = prec

    # constructors ------------------------------------------------------

    @classmethod
    def zero(cls, fq, prec=None):
        return cls(fq, 0, (), prec)

    @classmethod
    def one(cls, fq):
        return cls(fq, 0, (1,))

    @classmethod
    def monomial(cls, fq, n: int, c: int = 1, prec=None):
        return cls(fq, n, (c,), prec)

    @classmethod
    def pi_power(cls, fq, n: int):
        return cls(fq, n, (1,))

    @classmethod
    def from_poly(cls, f: Poly) -> "Laurent":
        # T^i = pi^-i
        d = f.degree()
        if d < 0:
            return cls.zero(f.fq)
        return cls(f.fq, -d, tuple(reversed(f.coeffs)))

    @classmethod
    def from_terms(cls, fq, terms: dict, prec=None) -> "Laurent":
        if not terms:
            return cls.zero(fq, prec)
        lo, hi = min(terms), max(terms)
        return cls(fq, lo, [terms.get(i, 0) for i in range(lo, hi + 1)], prec)

    @classmethod
    def parse(cls, fq: FqConfig, text: str) -> "Laurent":
        """Parse ``"pi^-1+pi^2;prec=8"``; omit ``prec`` for an exact value."""
        body, _, tail = text.replace(" ", "").partition(";")
        prec = None
        if tail:
            key, _, val = tail.partition("=")
            if key != "prec":
                raise ValueError(f"unknown Laurent option {key!r}")
            prec = int(val)
        terms: dict[int, int] = {}
        if body not in ("", "0"):
            for term in body.split("+"):
                m = re.fullmatch(r"(\d+\*)?pi(?:\^(-?\d+))?|(\d+)", term)
                if not m:
                    raise ValueError(f"cannot parse Laurent term {term!r}")
                if m.group(3) is not None:
                    exp, c = 0, int(m.group(3))
                else:
                    c = int(m.group(1)[:-1]) if m.group(1) else 1
                    exp = int(m.group(2)) if m.group(2) is not None else 1
                terms[exp] = fq.add(terms.get(exp, 0), fq.from_int(c))
        return cls.from_terms(fq, terms, prec)

    # inspection --------------------------------------------------------

    def is_exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        """True for an exact zero; raises when the value is only known to be small."""
        if self.coeffs:
            return False
        if self.prec is None:
            return True
        raise PrecisionError("insufficient precision: cannot decide whether value is zero")

    def known_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> int:
        if self.coeffs:
            return self.lo
        if self.prec is None:
            raise ValueError("valuation of exact zero is infinite")
        raise PrecisionError("insufficient precision: valuation undetermined")

    def __getitem__(self, n: int) -> int:
        """Coefficient of pi^n."""
        if self.prec is not None and n >= self.prec:
            raise PrecisionError(f"insufficient precision: coefficient of pi^{n} unknown (prec={self.prec})")
        i = n - self.lo
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def terms(self) -> dict:
        return {self.lo + i: c for i, c in enumerate(self.coeffs) if c}

    def max_exponent(self):
        return self.lo + len(self.coeffs) - 1 if self.coeffs else None

    def with_prec(self, prec) -> "Laurent":
        """Forget terms at or beyond ``prec`` (which must not exceed the current precision)."""
        if prec is not None and self.prec is not None and prec > self.prec:
            raise PrecisionError(f"insufficient precision: cannot raise precision {self.prec} to {prec}")
        return Laurent(self.fq, self.lo, self.coeffs, prec if prec is not None else self.prec)

    def truncate(self, k: int) -> "Laurent":
        """Exact representative of self mod pi^k (terms of exponent < k)."""
        if self.prec is not None and self.prec < k:
            raise PrecisionError(f"insufficient precision: need residue mod pi^{k}, have prec={self.prec}")
        return Laurent(self.fq, self.lo, self.coeffs[: max(k - self.lo, 0)])

    def fractional_part(self, k: int) -> "Laurent":
        """Terms with exponent in [1, k), i.e. the class mod A + pi^k O."""
        t = self.truncate(k)
        return Laurent.from_terms(self.fq, {n: c for n, c in t.terms().items() if n >= 1})

    def coefficient_vector(self, start: int, stop: int) -> list[int]:
        return [self[n] for n in range(start, stop)]

    # arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Laurent):
            return other
        if isinstance(other, Poly):
            return Laurent.from_poly(other)
        if isinstance(other, int):
            return Laurent(self.fq, 0, (self.fq.from_int(other),))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = _min_prec(self.prec, other.prec)
        terms = self.terms()
        add = self.fq.add_table
        for n, c in other.terms().items():
            terms[n] = add[terms.get(n, 0)][c]
        return Laurent.from_terms(self.fq, terms, prec)

    __radd__ = __add__

    def __neg__(self):
        neg = self.fq.neg_table
        return Laurent(self.fq, self.lo, [neg[c] for c in self.coeffs], self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _lower_bound(self):
        # smallest exponent that might be nonzero
        if self.coeffs:
            return self.lo
        return self.prec

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        fq = self.fq
        # absolute precision of a product: min(v(a) + prec(b), v(b) + prec(a))
        va, vb = self._lower_bound(), other._lower_bound()
        cands = []
        if other.prec is not None and va is not None:
            cands.append(va + other.prec)
        if self.prec is not None and vb is not None:
            cands.append(vb + self.prec)
        prec = min(cands) if cands else None
        if self.prec is None and not self.coeffs or other.prec is None and not other.coeffs:
            return Laurent.zero(fq)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Laurent.zero(fq, prec)
        add, mul = fq.add_table, fq.mul_table
        limit = len(a) + len(b) - 1
        if prec is not None:
            limit = min(limit, max(prec - self.lo - other.lo, 0))
        out = [0] * limit
        for i, ai in enumerate(a):
            if not ai or i >= limit:
                continue
            row = mul[ai]
            for j in range(min(len(b), limit - i)):
                bj = b[j]
                if bj:
                    out[i + j] = add[out[i + j]][row[bj]]
        return Laurent(fq, self.lo + other.lo, out, prec)

    __rmul__ = __mul__

    def shift(self, n: int) -> "Laurent":
        """Multiply by pi^n."""
        return Laurent(self.fq, self.lo + n, self.coeffs, None if self.prec is None else self.prec + n)

    def scale(self, c: int) -> "Laurent":
        row = self.fq.mul_table[c]
        return Laurent(self.fq, self.lo, [row[x] for x in self.coeffs], self.prec)

    def inverse(self, prec=None) -> "Laurent":
        """Multiplicative inverse.

        For an exact input ``prec`` (absolute) must be given.  For an inexact
        input the result carries precision prec(self) - 2*v(self); a smaller
        requested ``prec`` truncates further.
        """
        v = self.valuation()
        fq = self.fq
        if self.prec is None:
            if prec is None:
                if len(self.coeffs) == 1:
                    return Laurent(fq, -v, (fq.inv(self.coeffs[0]),))
                raise PrecisionError("insufficient precision: target precision needed to invert a series")
            target = prec
        else:
            target = self.prec - 2 * v if prec is None else min(prec, self.prec - 2 * v)
        n = target + v  # number of unit coefficients required
        u = self.coeffs
        inv0 = fq.inv(u[0])
        out: list[int] = []
        for i in range(max(n, 0)):
            s = 0 if i else 1
            acc = 0
            for j in range(1, min(i, len(u) - 1) + 1):
                acc = fq.add(acc, fq.mul(u[j], out[i - j]))
            out.append(fq.mul(inv0, fq.sub(s, acc)))
        return Laurent(fq, -v, out, target)

    def div(self, other: "Laurent", prec: int) -> "Laurent":
        """self / other to absolute precision ``prec`` (exact operands only need ``prec``)."""
        other = self._coerce(other)
        if self.known_zero() and self.prec is None:
            return Laurent.zero(self.fq)
        va = self.valuation()
        q = self * other.inverse(prec - va)
        return q.with_prec(prec) if q.prec is None or q.prec >= prec else q

    def __eq__(self, other) -> bool:
        other = self._coerce(other) if not isinstance(other, Laurent) else other
        if other is NotImplemented:
            return NotImplemented
        return (self.lo, self.coeffs, self.prec) == (other.lo, other.coeffs, other.prec) and self.fq == other.fq

    def __hash__(self) -> int:
        return hash((self.lo, self.coeffs, self.prec))

    def __repr__(self) -> str:
        return f"Laurent({self})"

    def __str__(self) -> str:
        parts = []
        for n, c in sorted(self.terms().items()):
            mono = f"pi^{n}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        s = "+".join(parts) if parts else "0"
        return s if self.prec is None else f"{s};prec={self.prec}"
