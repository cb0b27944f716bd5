import math

import pytest

from northcott.dsl import parse_ideal, parse_ideal_tuple
from northcott.multiplicity import (
    BinomialPoly,
    InstabilityError,
    bhatt_function,
    bhatt_polynomial,
    binom,
    fit_stable,
    fit_univariate,
    hs_function,
    hs_polynomial,
    mixed_E,
)
from northcott.staircase import Ring


def mixed(n):
    return 4 * math.comb(n + 2, 3) - math.comb(n + 1, 2)


def test_binom_is_a_polynomial_in_x():
    assert binom(2, 3) == 0
    assert binom(-1, 2) == 1
    assert binom(-2, 1) == -2
    assert binom(3, -1) == 0
    assert binom(5, 2) == 10


def test_binomial_poly_evaluation():
    P = BinomialPoly((4, 1, 0, 0))
    assert [P(n) for n in range(1, 5)] == [3, 13, 34, 70]
    assert P.degree == 3 and P[1] == 1


def test_fit_examples():
    assert fit_univariate([(n, mixed(n)) for n in range(3, 7)], 3).coeffs == (4, 1, 0, 0)
    assert fit_univariate([(4, 5)], 0).coeffs == (5,)
    vals = [(n, (n + 1) * (2 * n - 1)) for n in range(2, 5)]
    assert fit_univariate(vals, 2).coeffs == (4, 1, -1)


def test_fit_needs_enough_points():
    with pytest.raises(ValueError):
        fit_univariate([(1, 1)], 2)


def test_fit_requires_consecutive_samples():
    with pytest.raises(ValueError):
        fit_univariate([(1, 0), (3, 1)], 1)


def test_fit_stable_reports_instability():
    with pytest.raises(InstabilityError) as info:
        fit_stable(lambda n: 2 ** n, 2, n_max=10)
    assert not info.value.diagnostics.stable


def test_hs_examples(R2, stair, m2):
    assert hs_polynomial(stair)[0].coeffs == (21, 6, 1)
    assert hs_polynomial(m2)[0].coeffs == (1, 0, 0)
    R = Ring(2, relations=((2, 0),))
    P, diag = hs_polynomial(parse_ideal("x,y", R))
    assert P.coeffs == (2, 1) and diag.stable
    assert hs_function(stair, 1) == 16


def test_bhatt_function(R2):
    T = parse_ideal_tuple("x,y | x^2,y", R2)
    assert bhatt_function(T, (1, 1)) == 4
    assert bhatt_function(T, (0, 0)) == 0
    assert bhatt_function(T, (2, 0)) == 3


def test_bhatt_polynomial(R2):
    T = parse_ideal_tuple("x,y | x^2,y", R2)
    P, diag = bhatt_polynomial(T)
    assert (P[(2, 0)], P[(1, 1)], P[(0, 2)]) == (1, 1, 2)
    assert (P[(1, 0)], P[(0, 1)]) == (1, 2)
    assert diag.stable
    Q, _ = bhatt_polynomial(parse_ideal_tuple("x,y | x,y", R2))
    assert (Q[(2, 0)], Q[(1, 1)], Q[(0, 2)]) == (1, 1, 1)


def test_mixed_E(R2):
    P, _ = bhatt_polynomial(parse_ideal_tuple("x,y | x^2,y", R2))
    assert mixed_E(P, 2) == 4
    assert mixed_E(P, 1) == 3
    assert mixed_E(P, 0) == 0
