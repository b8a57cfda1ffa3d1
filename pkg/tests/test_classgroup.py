from math import prod

import pytest

from conftest import GRID, level
from dmct.classgroup import (
    AbelianStructure,
    HypothesisError,
    admissible_primes,
    canonical_factors,
    class_group_structure,
    closed_form_order,
    consistency_report,
    ell_primary,
    order_of_Cprime,
    torsion_prediction,
)
from dmct.divisors import standard_divisors
from dmct.level import eisenstein_constants
from oracles import invariant_factors_by_minors


def test_structure_examples():
    assert class_group_structure(level("q=2", "T^2+T+1", 2)).to_list() == [5]
    assert class_group_structure(level("q=2", "T", 5)).to_list() == [16, 8, 8]
    assert class_group_structure(level("q=3", "T", 2)).to_list() == []
    assert class_group_structure(level("q=2", "T^3+T+1", 2)).to_list() == [21, 7]


def test_prime_level_is_cyclic_of_order_N():
    L = level("q=2", "T^3+T+1", 1)
    assert class_group_structure(L).to_list() == [7]


def test_canonical_factors_against_minors():
    for orders in ([4, 6], [2, 3, 5], [8, 8, 16], [12, 18, 1], [9]):
        diag = [[orders[i] if i == j else 0 for j in range(len(orders))] for i in range(len(orders))]
        want = sorted((f for f in invariant_factors_by_minors(diag) if f != 1), reverse=True)
        assert canonical_factors(orders) == want
    assert canonical_factors([0, 2]) == [0, 2]


def test_ell_primary_examples():
    S = AbelianStructure((21, 7))
    assert ell_primary(S, 7).to_list() == [7, 7]
    assert ell_primary(S, 3).to_list() == [3]
    assert ell_primary(AbelianStructure((16, 8, 8)), 3).to_list() == []
    with pytest.raises(ValueError):
        ell_primary(S, 6)


def test_torsion_prediction_examples():
    L = level("q=2", "T^3+T+1", 2)
    assert torsion_prediction(L, 7).to_list() == [7, 7]
    with pytest.raises(HypothesisError, match="outside Main Theorem hypothesis"):
        torsion_prediction(L, 2)
    assert torsion_prediction(level("q=3", "T", 4), 5).to_list() == []


@pytest.mark.parametrize("f,p", GRID + [("q=2", "T^3+T+1"), ("q=3", "T^2+T+2")])
@pytest.mark.parametrize("r", range(2, 7))
def test_prediction_matches_structure(f, p, r):
    L = level(f, p, r)
    S = class_group_structure(L)
    assert S.order == closed_form_order(L)
    for ell in admissible_primes(L):
        assert ell_primary(S, ell) == torsion_prediction(L, ell)


@pytest.mark.parametrize("f,p", GRID)
@pytest.mark.parametrize("r", range(2, 6))
def test_consistency_report_passes(f, p, r):
    rep = consistency_report(level(f, p, r))
    assert rep["checks"] and all(c["pass"] for c in rep["checks"])


def test_order_of_Cprime():
    for f, p in GRID:
        for r in range(2, 6):
            L = level(f, p, r)
            M, _ = eisenstein_constants(L)
            assert order_of_Cprime(L) == M * L.norm ** (r - 2)
    assert order_of_Cprime(level("q=2", "T^2+T+1", 2)) == 5


def test_Cprime_example():
    L = level("q=2", "T^2+T+1", 2)
    _, Cp = standard_divisors(L)
    assert Cp.coeffs == (3, -1, 0)


def test_abelian_structure_order():
    assert AbelianStructure.cyclic(4, 6).order == 24
    assert AbelianStructure.cyclic(4, 6).to_list() == [12, 2]
    assert str(AbelianStructure(())) == "0"
    assert prod(AbelianStructure((16, 8, 8)).factors) == 1024
