import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import GRID, level
from dmct.divisors import (
    HeightDivisor,
    alpha_pull,
    beta_cokernel,
    beta_push,
    degree,
    delta_divisor,
    height_flip,
    standard_divisors,
    up_action,
)
from dmct.level import LevelError

LEVELS = [level(f, p, r) for f, p in GRID for r in range(1, 7)]


def P(L, *pairs):
    c = [0] * (L.r + 1)
    for i, v in pairs:
        c[i] = v
    return HeightDivisor(L, c)


def test_degree_examples():
    L = level("q=2", "T^2+T+1", 2)
    assert degree(HeightDivisor.basis(L, 1)) == 3
    assert degree(HeightDivisor.basis(L, 0)) == 1
    _, Cp = standard_divisors(L)
    assert degree(Cp) == 0
    for f, p in GRID:
        L1 = level(f, p, 1)
        assert degree(delta_divisor(0, L1)) == L1.norm + 1


def test_alpha_examples():
    L = level("q=3", "T^2+1", 1)
    P2 = L.with_r(2)
    assert alpha_pull(HeightDivisor.basis(L, 1)) == P(P2, (1, 2), (2, 1))
    assert alpha_pull(HeightDivisor.basis(L, 0)) == P(P2, (0, 9))
    L4 = level("q=2", "T", 4)
    assert alpha_pull(HeightDivisor.basis(L4, 3)) == P(L4.with_r(5), (3, 1))


def test_beta_examples():
    L = level("q=3", "T^2+1", 2)
    assert beta_push(HeightDivisor.basis(L, 1)) == P(L.with_r(1), (0, 4))
    assert beta_push(HeightDivisor.basis(L, 2)) == P(L.with_r(1), (1, 1))
    with pytest.raises(LevelError):
        beta_push(HeightDivisor.basis(L.with_r(1), 0))


def test_up_examples():
    L = level("q=2", "T^2+T+1", 2)
    Pn = L.norm
    assert up_action(HeightDivisor.basis(L, 0)) == P(L, (0, Pn))
    assert up_action(HeightDivisor.basis(L, 1)) == P(L, (0, Pn * (Pn - 1) // (L.q - 1)))


@pytest.mark.parametrize("L", [L for L in LEVELS if L.r >= 2], ids=repr)
def test_Cprime_is_killed_by_U(L):
    _, Cp = standard_divisors(L)
    assert beta_push(Cp) == HeightDivisor.zero(L.with_r(L.r - 1))
    assert up_action(Cp) == HeightDivisor.zero(L)


@given(st.sampled_from(LEVELS), st.lists(st.integers(-20, 20), min_size=8, max_size=8))
def test_degree_laws(L, raw):
    D = HeightDivisor(L, raw[: L.r + 1])
    assert degree(alpha_pull(D)) == L.norm * degree(D)
    if L.r >= 2:
        assert degree(beta_push(D)) == degree(D)


def test_delta_divisor_r2_example():
    L = level("q=2", "T", 2)
    assert delta_divisor(2, L) == P(L, (0, 1), (1, 1), (2, 4))
    assert height_flip(delta_divisor(0, L)) == delta_divisor(2, L)


@pytest.mark.parametrize("L", LEVELS, ids=repr)
def test_delta_divisors_are_effective_with_equal_degrees(L):
    ds = [delta_divisor(i, L) for i in range(L.r + 1)]
    assert all(D.is_integral() and D.is_effective() for D in ds)
    assert len({degree(D) for D in ds}) == 1


@pytest.mark.parametrize("L", [L for L in LEVELS if L.r >= 2], ids=repr)
def test_beta_is_compatible_with_delta_divisors(L):
    lower = L.with_r(L.r - 1)
    for i in range(1, L.r + 1):
        assert beta_push(delta_divisor(i, L)) == delta_divisor(i - 1, lower) * L.norm


def test_flip_examples():
    L = level("q=3", "T", 3)
    assert height_flip(HeightDivisor.basis(L, 0)) == HeightDivisor.basis(L, 3)
    D = HeightDivisor(L, [1, 2, 3, 4])
    assert height_flip(height_flip(D)) == D


def test_standard_divisors():
    L = level("q=2", "T^2+T+1", 2)
    Cs, Cp = standard_divisors(L)
    assert Cs[0] == P(L, (0, 1), (2, -1))
    assert Cp == P(L, (0, 3), (1, -1))
    assert all(degree(C) == 0 for C in Cs)
    assert standard_divisors(L.with_r(1))[1] is None


@pytest.mark.parametrize("f,p", GRID)
@pytest.mark.parametrize("r", range(2, 9))
def test_beta_cokernel_shape(f, p, r):
    L = level(f, p, r)
    assert beta_cokernel(L) == [L.norm] * (r // 2 - 1)


def test_beta_cokernel_examples():
    L = level("q=2", "T", 2)
    assert beta_cokernel(L) == []
    assert beta_cokernel(L.with_r(4)) == [2]
    with pytest.raises(LevelError):
        beta_cokernel(L.with_r(1))


def test_json_roundtrip():
    L = level("q=3", "T", 3)
    D = HeightDivisor(L, [Fraction(1, 2), -3, 0, 7])
    text = D.to_json()
    assert json.loads(text)[0] == {"height_exp": 0, "coeff": "1/2"}
    assert HeightDivisor.from_json(L, text) == D


def test_level_mismatch():
    a = HeightDivisor.basis(level("q=2", "T", 2), 0)
    b = HeightDivisor.basis(level("q=3", "T", 2), 0)
    with pytest.raises(LevelError):
        a + b
    with pytest.raises(ValueError):
        HeightDivisor(level("q=2", "T", 2), [1, 2])
