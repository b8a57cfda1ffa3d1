from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import level
from dmct.algebra import FqConfig, Poly
from dmct.algebra.poly import all_polys
from dmct.level import (
    Cusp,
    Level,
    LevelError,
    cusp_count,
    cusp_equal,
    eisenstein_constants,
    enumerate_cusps,
    make_cusp,
    make_level,
    parse_cusp,
)
from oracles import cusp_orbits, monic_of_degree, irreducible_by_trial_division


def test_make_level_examples(F2, F3):
    assert make_level(F2, Poly.parse(F2, "T^2+T+1"), 2).norm == 4
    assert make_level(F3, Poly.T(F3), 5).norm == 3
    with pytest.raises(LevelError, match="not prime"):
        make_level(F2, Poly.parse(F2, "T^2+1"), 2)
    with pytest.raises(LevelError, match="bad exponent"):
        make_level(F2, Poly.T(F2), 0)


def test_non_monic_prime_is_normalized(F3):
    L = make_level(F3, Poly.parse(F3, "2*T^2+2"), 1)
    assert L.p == Poly.parse(F3, "T^2+1")


def test_eisenstein_constants_examples():
    assert eisenstein_constants(level("q=2", "T^2+T+1", 2)) == (5, 1)
    assert eisenstein_constants(level("q=2", "T^3+T+1", 2)) == (21, 7)
    assert eisenstein_constants(level("q=3", "T", 2)) == (1, 1)


@pytest.mark.parametrize("q,maxdeg", [(2, 4), (3, 3)])
def test_M_is_one_exactly_in_degree_one(q, maxdeg):
    fq = FqConfig(q)
    for d in range(1, maxdeg + 1):
        for p in monic_of_degree(fq, d):
            if irreducible_by_trial_division(p):
                M, N = eisenstein_constants(make_level(fq, p, 2))
                assert (M == 1) == (d == 1)
                assert N >= 1


def test_cusp_count_examples():
    assert cusp_count(level("q=2", "T", 4), 2) == 2
    assert cusp_count(level("q=3", "T", 2), 1) == 1
    for r in (1, 3, 5):
        assert cusp_count(level("q=3", "T^2+1", r), 0) == 1
    with pytest.raises(LevelError):
        cusp_count(level("q=2", "T", 2), 3)


def _small_levels():
    for fq_text, ps in (("q=2", ["T", "T+1", "T^2+T+1", "T^3+T+1"]), ("q=3", ["T", "T^2+1"]), ("q=4;modulus=x^2+x+1", ["T"])):
        for p in ps:
            for r in range(1, 9):
                L = level(fq_text, p, r)
                if L.norm**r <= 243:
                    yield L


@pytest.mark.parametrize("L", list(_small_levels()), ids=repr)
def test_cusp_counts_match_orbit_oracle(L):
    counts = [cusp_count(L, i) for i in range(L.r + 1)]
    assert counts == [cusp_orbits(L.fq, L.p, L.r, i) for i in range(L.r + 1)]
    assert sum(counts) == len(enumerate_cusps(L))


def test_enumerate_examples():
    cs = enumerate_cusps(level("q=2", "T", 1))
    assert [c.i for c in cs] == [0, 1]
    cs = enumerate_cusps(level("q=2", "T", 4))
    assert len(cs) == 6
    assert [sum(1 for c in cs if c.i == i) for i in range(5)] == [1, 1, 2, 1, 1]
    cs = enumerate_cusps(level("q=2", "T^2+T+1", 2))
    assert [c.i for c in cs] == [0, 1, 1, 1, 2]


def test_cusp_equal_examples(F2, F3):
    L2 = make_level(F2, Poly.T(F2), 2)
    assert cusp_equal(L2, (Poly.one(F2), 1), (Poly.parse(F2, "T+1"), 1))
    assert not cusp_equal(L2, (Poly.one(F2), 1), (Poly.one(F2), 2))
    L3 = make_level(F3, Poly.T(F3), 2)
    assert cusp_equal(L3, (Poly.one(F3), 1), (Poly.constant(F3, 2), 1))


@pytest.mark.parametrize("L", [L for L in _small_levels() if L.norm**L.r <= 81], ids=repr)
def test_cusp_equality_is_an_equivalence_matching_canonical_forms(L):
    for i in range(L.r + 1):
        s = min(i, L.r - i)
        reps = [a for a in all_polys(L.fq, max(s * L.deg, 1) - 1) if a.gcd(L.p).degree() == 0]
        canon = {a: make_cusp(L, a, i) for a in reps}
        for a, b in product(reps, repeat=2):
            eq = cusp_equal(L, (a, i), (b, i))
            assert eq == cusp_equal(L, (b, i), (a, i))
            assert eq == (canon[a] == canon[b])
        assert all(cusp_equal(L, (a, i), (a, i)) for a in reps)


def test_canonical_representative_is_idempotent():
    L = level("q=3", "T^2+1", 3)
    for c in enumerate_cusps(L):
        assert make_cusp(L, c.a, c.i) == c


def test_cusp_rejects_nonunit(F2):
    L = make_level(F2, Poly.T(F2), 2)
    with pytest.raises(LevelError):
        make_cusp(L, Poly.T(F2), 1)


@given(st.sampled_from(["q=2;p=T^2+T+1;r=3", "q=3;p=T;r=1", "q=4;modulus=x^2+x+1;p=T+1;r=2"]))
def test_level_serialization_roundtrip(text):
    L = Level.parse(text)
    assert Level.parse(L.serialize()) == L
    assert L.serialize() == text


def test_cusp_serialization_roundtrip():
    L = level("q=3", "T", 4)
    for c in enumerate_cusps(L):
        assert parse_cusp(L, c.serialize()) == c
    assert isinstance(parse_cusp(L, "a=2;i=2"), Cusp)
