"""Oriented edges and vertices of the Bruhat-Tits tree of PGL(2, K_inf).

An edge is the coset ``[[pi^k, y], [0, 1]] * iota^eps * I * Z`` where I is the
Iwahori subgroup, Z the centre and ``iota = [[0, 1], [pi, 0]]``.  ``y`` is kept
modulo pi^k O_inf as an exact Laurent polynomial with all exponents below k.
The terminus of ``g I`` is the vertex ``g K`` and its origin is ``g iota K``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .algebra.fq import FqConfig
from .algebra.laurent import Laurent, PrecisionError
from .algebra.poly import Poly
from .level import Level


class SingularMatrixError(ValueError):
    pass


def _as_laurent(fq: FqConfig, x) -> Laurent:
    if isinstance(x, Laurent):
        return x
    if isinstance(x, Poly):
        return Laurent.from_poly(x)
    if isinstance(x, int):
        return Laurent(fq, 0, (fq.from_int(x),))
    raise TypeError(f"cannot use {type(x).__name__} as a matrix entry")


@dataclass(frozen=True)
class GMatrix:
    a: Laurent
    b: Laurent
    c: Laurent
    d: Laurent

    @classmethod
    def of(cls, fq: FqConfig, a, b, c, d) -> "GMatrix":
        return cls(*(_as_laurent(fq, x) for x in (a, b, c, d)))

    @classmethod
    def identity(cls, fq: FqConfig) -> "GMatrix":
        return cls.of(fq, 1, 0, 0, 1)

    @classmethod
    def iota(cls, fq: FqConfig) -> "GMatrix":
        return cls.of(fq, 0, 1, Laurent.pi_power(fq, 1), 0)

    @property
    def fq(self) -> FqConfig:
        return self.a.fq

    def __matmul__(self, o: "GMatrix") -> "GMatrix":
        return GMatrix(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def det(self) -> Laurent:
        return self.a * self.d - self.b * self.c


@dataclass(frozen=True)
class Vertex:
    k: int
    y: Laurent

    def __post_init__(self):
        object.__setattr__(self, "y", self.y.truncate(self.k))

    def key(self):
        return (self.k, self.y.lo, self.y.coeffs)

    def __eq__(self, other):
        return isinstance(other, Vertex) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __str__(self) -> str:
        return f"k={self.k};y={self.y}"


@dataclass(frozen=True)
class Edge:
    k: int
    y: Laurent
    eps: int

    def __post_init__(self):
        if self.eps not in (0, 1):
            raise ValueError("orientation bit must be 0 or 1")
        object.__setattr__(self, "y", self.y.truncate(self.k))

    @property
    def fq(self) -> FqConfig:
        return self.y.fq

    def key(self):
        return (self.k, self.y.lo, self.y.coeffs, self.eps)

    def __eq__(self, other):
        return isinstance(other, Edge) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __str__(self) -> str:
        return f"k={self.k};y={self.y};eps={self.eps}"

    __repr__ = __str__

    def representative(self) -> GMatrix:
        fq = self.fq
        g = GMatrix.of(fq, Laurent.pi_power(fq, self.k), self.y, 0, 1)
        return g @ GMatrix.iota(fq) if self.eps else g

    def base(self) -> "Edge":
        """The same (k, y) with eps = 0."""
        return Edge(self.k, self.y, 0)


def make_edge(fq: FqConfig, k: int, y=None, eps: int = 0) -> Edge:
    y = Laurent.zero(fq) if y is None else _as_laurent(fq, y)
    return Edge(k, y, eps)


def parse_edge(fq: FqConfig, text: str) -> Edge:
    """Parse ``"k=3;y=pi^1;eps=1"``."""
    m = re.fullmatch(r"\s*k=(-?\d+);y=(.*?);eps=([01])\s*", text)
    if not m:
        raise ValueError(f"cannot parse edge literal {text!r}")
    return Edge(int(m.group(1)), Laurent.parse(fq, m.group(2)), int(m.group(3)))


def _normal_form(a: Laurent, b: Laurent, c: Laurent, d: Laurent, eps: int) -> Edge:
    if c.known_zero() and c.is_exact() or (not d.known_zero() and c.valuation() > d.valuation()):
        det = a * d - b * c
        if det.known_zero() and det.is_exact():
            raise SingularMatrixError("singular")
        vd = d.valuation()
        k = det.valuation() - 2 * vd
        if b.known_zero() and b.is_exact():
            y = Laurent.zero(a.fq)
        elif b.valuation() - vd >= k:
            y = Laurent.zero(a.fq)
        else:
            y = b.div(d, k).truncate(k)
        return Edge(k, y, eps)
    if eps:
        raise ArithmeticError("normal form did not terminate")
    # right-multiply by iota^-1 = [[0, pi^-1], [1, 0]]
    return _normal_form(b, a.shift(-1), d, c.shift(-1), 1)


def edge_normal_form(g: GMatrix) -> Edge:
    try:
        return _normal_form(g.a, g.b, g.c, g.d, 0)
    except PrecisionError as exc:
        raise PrecisionError(f"insufficient precision: {exc}") from exc


def reverse(e: Edge) -> Edge:
    return Edge(e.k, e.y, 1 - e.eps)


def terminus(e: Edge) -> Vertex:
    if e.eps == 0:
        return Vertex(e.k, e.y)
    return Vertex(e.k - 1, e.y)


def origin(e: Edge) -> Vertex:
    return terminus(reverse(e))


def vertex_of(g: GMatrix) -> Vertex:
    return terminus(edge_normal_form(g))


def vertex_star(v: Vertex) -> list[Edge]:
    """The q+1 edges whose terminus is v."""
    fq = v.y.fq
    star = [Edge(v.k, v.y, 0)]
    for u in range(fq.q):
        star.append(reverse(Edge(v.k + 1, v.y + Laurent.monomial(fq, v.k, u), 0)))
    return star


def end_edge(L: Level, j: int) -> Edge:
    """e_j = [[1, 0], [p, 1]] [[pi^-j, 0], [0, 1]]."""
    if j < 0:
        raise ValueError("j must be >= 0")
    fq = L.fq
    g = GMatrix.of(fq, 1, 0, L.p, 1) @ GMatrix.of(fq, Laurent.pi_power(fq, -j), 0, 0, 1)
    return edge_normal_form(g)


def translate(gamma: GMatrix, e: Edge) -> Edge:
    return edge_normal_form(gamma @ e.representative())


# random sampling helpers ------------------------------------------------


def random_laurent(fq: FqConfig, rng: random.Random, lo: int, hi: int) -> Laurent:
    return Laurent.from_terms(fq, {n: rng.randrange(fq.q) for n in range(lo, hi)})


def random_unit_series(fq: FqConfig, rng: random.Random, length: int) -> Laurent:
    terms = {0: rng.randrange(1, fq.q)}
    terms.update({n: rng.randrange(fq.q) for n in range(1, length)})
    return Laurent.from_terms(fq, terms)


def random_edge(fq: FqConfig, rng: random.Random, max_k: int, min_k: int = 0) -> Edge:
    k = rng.randint(min_k, max_k)
    return Edge(k, random_laurent(fq, rng, min(-2, k), k), rng.randrange(2))


def random_vertex(fq: FqConfig, rng: random.Random, max_k: int, min_k: int = 0) -> Vertex:
    k = rng.randint(min_k, max_k)
    return Vertex(k, random_laurent(fq, rng, min(-2, k), k))


def random_iwahori(fq: FqConfig, rng: random.Random, length: int = 4) -> GMatrix:
    a = random_unit_series(fq, rng, length)
    d = random_unit_series(fq, rng, length)
    b = random_laurent(fq, rng, 0, length)
    c = random_laurent(fq, rng, 1, length + 1)
    return GMatrix(a, b, c, d)


def random_scalar(fq: FqConfig, rng: random.Random, length: int = 3) -> GMatrix:
    z = random_unit_series(fq, rng, length).shift(rng.randint(-3, 3))
    return GMatrix(z, Laurent.zero(fq), Laurent.zero(fq), z)


def random_poly(fq: FqConfig, rng: random.Random, max_deg: int) -> Poly:
    return Poly(fq, [rng.randrange(fq.q) for _ in range(max_deg + 1)])


def random_gamma0(L: Level, rng: random.Random, max_deg: int = 2, factors: int = 3) -> tuple[GMatrix, tuple]:
    """A product of elementary generators of Gamma_0(n): also returns its entries as polynomials."""
    fq = L.fq
    one, zero = Poly.one(fq), Poly.zero(fq)
    M = (one, zero, zero, one)

    def mul(X, Y):
        a, b, c, d = X
        e, f, g, h = Y
        return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    for _ in range(factors):
        kind = rng.randrange(3)
        if kind == 0:
            E = (one, random_poly(fq, rng, max_deg), zero, one)
        elif kind == 1:
            E = (one, zero, random_poly(fq, rng, max(max_deg - L.n.degree(), 0)) * L.n, one)
        else:
            E = (Poly.constant(fq, rng.randrange(1, fq.q)), zero, zero, Poly.constant(fq, rng.randrange(1, fq.q)))
        M = mul(M, E)
    return GMatrix.of(fq, *M), M
