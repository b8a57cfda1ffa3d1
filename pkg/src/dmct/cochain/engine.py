"""Values of the discriminant cochain on edges ``(k, y, 0)``.

With n = k - 2 the expansion reads

    f(k, y) = A q^-k + q^(2-k) * sum_{0 != m, deg m <= n} a(m) eta(m y)

where A = -(q-1)q and a(m) = C sigma(m), C = (q^2-1)(q-1)/q.  Summing eta
over the unit multiples of each monic m collapses the character sum to

    C * (q Z - S),   Z = sum_{monic m} sigma(m) [s_m(y) = 0],   S = sum_{monic m} sigma(m)

with s_m(y) the pi^1 coefficient of m y.  Writing m = d e and sigma(m) as a
sum of |d| turns Z into a count over pairs (d, e); the pairs are enumerated
from whichever factor has degree <= n // 2, so the cost is about q^(n/2).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from ..algebra.cyclotomic import CycRat
from ..algebra.fq import FqConfig
from ..algebra.poly import all_polys, divisor_sum


def delta_constants(q: int) -> tuple[Fraction, Fraction]:
    """(A, C): constant term numerator and the coefficient of sigma."""
    return Fraction(-(q - 1) * q), Fraction((q * q - 1) * (q - 1), q)


@lru_cache(maxsize=None)
def _monic_block(q: int, a: int) -> np.ndarray:
    rows = [tail + (1,) for tail in product(range(q), repeat=a)]
    return np.array(rows, dtype=np.int64).reshape(len(rows), a + 1)


def _sigma_total(q: int, n: int) -> int:
    return sum(q**j * (q ** (j + 1) - 1) // (q - 1) for j in range(n + 1))


def _n_count(q: int, j: int, z: int) -> int:
    # monic e of degree j with <e, w> = 0, where z is the first nonzero slot of w
    if z > j + 1:
        return q**j
    if z == j + 1:
        return 0
    return q ** (j - 1)


@lru_cache(maxsize=None)
def _check_unit_sums(fq: FqConfig) -> None:
    # sum over alpha in F_q^x of eta0(Tr(alpha s)) must equal q[s=0] - 1
    p = fq.p
    for s in range(fq.q):
        w = CycRat.from_exponent_weights(p, [(fq.trace(fq.mul(alpha, s)), 1) for alpha in fq.units])
        if not w.is_rational() or w.to_rational() != (fq.q if s == 0 else 0) - 1:
            raise ArithmeticError(f"unit character sum at s={s} is {w}")


def zero_pair_count(fq: FqConfig, yv: tuple) -> int:
    """Z for the slot vector yv = (y_1, ..., y_{n+1})."""
    q = fq.q
    n = len(yv) - 1
    if n < 0:
        return 0
    h = n // 2
    Y = np.asarray(yv, dtype=np.int64)
    add, mul = fq.np_add, fq.np_mul
    Z = 0
    for a in range(h + 1):
        G = _monic_block(q, a)
        width = n - a + 1
        acc = np.zeros((G.shape[0], width), dtype=np.int64)
        for i in range(a + 1):
            acc = add[acc, mul[G[:, i : i + 1], Y[i : i + width]]]
        nz = acc != 0
        z = np.where(nz.any(axis=1), nz.argmax(axis=1) + 1, width + 1)
        counts = np.bincount(z, minlength=width + 2)
        for zval in np.nonzero(counts)[0]:
            zval = int(zval)
            part = q**a * sum(_n_count(q, j, zval) for j in range(n - a + 1))
            if a <= n - h - 1:
                part += sum(q**i * _n_count(q, i, zval) for i in range(h + 1, n - a + 1))
            Z += int(counts[zval]) * part
    return Z


@lru_cache(maxsize=200_000)
def delta_value(fq: FqConfig, k: int, yv: tuple) -> Fraction:
    """Value of the discriminant cochain at (k, y, 0); yv holds y_1..y_{k-1}."""
    q = fq.q
    A, C = delta_constants(q)
    base = A / Fraction(q) ** k
    if k <= 1:
        return base
    _check_unit_sums(fq)
    if len(yv) != k - 1:
        raise ValueError(f"expected {k - 1} slots, got {len(yv)}")
    n = k - 2
    total = C * (q * zero_pair_count(fq, yv) - _sigma_total(q, n))
    return base + Fraction(q) ** (2 - k) * total


def delta_value_reference(fq: FqConfig, k: int, yv: tuple) -> Fraction:
    """The same value by summing the expansion term by term over all nonzero m in Q(zeta_p)."""
    q, p = fq.q, fq.p
    A, C = delta_constants(q)
    base = A / Fraction(q) ** k
    if k <= 1:
        return base
    n = k - 2
    acc = CycRat.rational(p, 0)
    for m in all_polys(fq, n):
        s = 0
        for i, mi in enumerate(m.coeffs):
            s = fq.add(s, fq.mul(mi, yv[i]))
        acc = acc + CycRat.zeta_power(p, fq.trace(s)) * (C * divisor_sum(m.monic()))
    return base + Fraction(q) ** (2 - k) * acc.to_rational()
