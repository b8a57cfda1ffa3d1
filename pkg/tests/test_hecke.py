import random
from fractions import Fraction

import pytest

from conftest import GRID, level
from dmct.algebra import Laurent, Poly
from dmct.algebra.poly import is_prime_poly, monic_polys
from dmct.cochain import (
    b_shift,
    delta_cochain,
    eisenstein_En,
    eval_cochain,
    hecke_apply,
    hecke_cosets,
    hecke_operator,
    up_cosets,
)
from dmct.cochain.hecke import parse_op
from dmct.tree import Edge, random_edge


def small_primes(L, max_deg=2):
    return [m for d in range(1, max_deg + 1) for m in monic_polys(L.fq, d) if is_prime_poly(m) and m != L.p]


def test_U_anchor(F2):
    L = level("q=2", "T", 2)
    e = Edge(3, Laurent.pi_power(F2, 1), 0)
    got = hecke_apply(delta_cochain(1, L), L, "U", e)
    assert got == L.norm * eval_cochain(delta_cochain(0, L), e) == -2


def test_coset_counts():
    L = level("q=3", "T", 2)
    assert len(up_cosets(L)) == 3
    # T_m for m prime to n has sum over d | m of |d| cosets
    m = Poly.parse(L.fq, "T^2+1")
    assert len(hecke_cosets(L, m)) == 1 + 9
    assert len(hecke_cosets(L, L.p**2)) == 9


def test_parse_op_forms():
    L = level("q=2", "T", 2)
    assert parse_op(L, "U") == parse_op(L, ("U", None))
    assert parse_op(L, "T:T+1") == hecke_cosets(L, Poly.parse(L.fq, "T+1"))
    with pytest.raises(ValueError):
        parse_op(L, "X")


@pytest.mark.parametrize("f,p", GRID)
def test_eigen_identities(f, p):
    L = level(f, p, 3)
    rng = random.Random(f + p)
    edges = [random_edge(L.fq, rng, 6, -2) for _ in range(6)]
    D = [delta_cochain(i, L) for i in range(4)]
    for m in small_primes(L):
        Qm = L.q ** m.degree()
        for e in edges[:3]:
            assert hecke_apply(D[0], L, ("T", m), e) == (Qm + 1) * eval_cochain(D[0], e)
    for k in range(1, 4):
        for e in edges:
            assert hecke_apply(D[k], L, "U", e) == L.norm * eval_cochain(D[k - 1], e)


@pytest.mark.parametrize("f,p", GRID)
def test_T_p_squared_is_U_twice(f, p):
    L = level(f, p, 2)
    rng = random.Random(p)
    UU = hecke_operator(hecke_operator(delta_cochain(0, L), L, "U"), L, "U")
    for _ in range(3):
        e = random_edge(L.fq, rng, 5, -1)
        assert hecke_apply(delta_cochain(0, L), L, ("T", L.p**2), e) == UU(e)


@pytest.mark.parametrize("f,p", GRID)
def test_eisenstein_annihilation(f, p):
    L = level(f, p, 2)
    E = eisenstein_En(L)
    rng = random.Random(f + p + "E")
    edges = [random_edge(L.fq, rng, 6, -2) for _ in range(5)]
    for e in edges:
        assert hecke_apply(E, L, "U", e) == 0
        for m in small_primes(L):
            assert hecke_apply(E, L, ("T", m), e) == (L.q ** m.degree() + 1) * eval_cochain(E, e)


@pytest.mark.parametrize("f,p", GRID)
def test_B_shift_degeneration(f, p):
    L = level(f, p, 2)
    rng = random.Random(f + p + "B")
    for h in (delta_cochain(0, L), eisenstein_En(L)):
        hb = b_shift(h, L.p)
        for _ in range(4):
            e = random_edge(L.fq, rng, 6, -2)
            assert hecke_apply(hb, L, "U", e) == L.norm * eval_cochain(h, e)


def test_callables_are_accepted():
    L = level("q=2", "T", 2)
    D = delta_cochain(0, L)
    e = Edge(4, Laurent.pi_power(L.fq, 2), 1)
    assert hecke_apply(lambda x: eval_cochain(D, x), L, "U", e) == hecke_apply(D, L, "U", e)
    assert isinstance(hecke_apply(D, L, "U", e), Fraction)
