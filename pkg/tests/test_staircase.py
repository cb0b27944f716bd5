import math

import pytest

from northcott.dsl import parse_ideal
from northcott.staircase import (
    AmbientMismatchError,
    InfiniteColengthError,
    MonomialIdeal,
    Ring,
    colength,
    colength_pivot,
    contains_monomial,
    ideal,
    ideal_multipower,
    ideal_power,
    ideal_product,
    ideal_sum,
    is_finite_colength,
    minimalize,
)


def gens(I):
    return set(I.gens)


def test_minimalize_drops_multiples():
    I = minimalize([(3, 0), (2, 4), (1, 5), (0, 7), (3, 1)])
    assert gens(I) == {(3, 0), (2, 4), (1, 5), (0, 7)}
    assert gens(minimalize([(1, 0), (0, 1)])) == {(1, 0), (0, 1)}
    assert minimalize([(2, 0), (1, 0)]).gens == ((1, 0),)


def test_minimalize_is_deglex_sorted():
    I = minimalize([(0, 7), (3, 0), (1, 5), (2, 4)])
    assert I.gens == ((3, 0), (2, 4), (1, 5), (0, 7))


def test_minimalize_rejects_mixed_dimensions():
    with pytest.raises(ValueError):
        minimalize([(1, 0), (1, 0, 0)])


def test_minimalize_flags_zero_ideal():
    with pytest.warns(UserWarning):
        I = minimalize([(2, 0)], relations=[(1, 0)])
    assert I.is_zero


def test_relations_drop_generators(R2):
    R = Ring(2, relations=((2, 0),))
    I = ideal(R, [(2, 0), (0, 1)])
    assert I.gens == ((0, 1),)


def test_sum_examples(R2):
    x2 = parse_ideal("x^2", R2)
    m = parse_ideal("x,y", R2)
    assert gens(ideal_sum(x2, ideal_power(m, 3))) == {(2, 0), (1, 2), (0, 3)}
    assert ideal_sum(m, m) == m
    assert ideal_sum(parse_ideal("x", R2), parse_ideal("y", R2)) == m


def test_product_examples(R2):
    m = parse_ideal("x,y", R2)
    assert gens(ideal_product(m, parse_ideal("x^2,y", R2))) == {(3, 0), (1, 1), (0, 2)}
    assert gens(m * m) == {(2, 0), (1, 1), (0, 2)}
    J = parse_ideal("x^3,y^7", R2)
    assert gens(J * J) == {(6, 0), (3, 7), (0, 14)}


def test_power_examples(R2):
    m = parse_ideal("x,y", R2)
    assert gens(m ** 3) == {(3, 0), (2, 1), (1, 2), (0, 3)}
    assert gens(parse_ideal("x^2,y", R2) ** 2) == {(4, 0), (2, 1), (0, 2)}
    assert (m ** 0).is_unit
    with pytest.raises(ValueError):
        ideal_power(m, -1)


def test_multipower(R2):
    I, J = parse_ideal("x,y", R2), parse_ideal("x^2,y", R2)
    assert ideal_multipower([I, J], (1, 1)) == I * J
    assert ideal_multipower([I, J], (0, 0)).is_unit


def test_ambient_mismatch(R2):
    with pytest.raises(AmbientMismatchError):
        ideal_sum(parse_ideal("x,y", R2), MonomialIdeal.maximal(Ring(3)))


def test_contains(R2):
    I = parse_ideal("x^3,xy,y^2", R2)
    assert contains_monomial(I, (2, 1))  # xy divides x^2y
    assert not contains_monomial(I, (2, 0))
    assert contains_monomial(I, (3, 1))
    assert (0, 0) not in parse_ideal("x,y", R2)
    with pytest.raises(ValueError):
        contains_monomial(I, (1, 1, 1))


def test_finite_colength(R2, stair):
    assert is_finite_colength(stair)
    assert not is_finite_colength(parse_ideal("x", R2))
    assert is_finite_colength(parse_ideal("x,y", R2))
    with pytest.raises(InfiniteColengthError):
        colength(parse_ideal("x", R2))


def test_colength_values(R2, stair):
    m = parse_ideal("x,y", R2)
    for n in range(1, 8):
        assert colength(m ** n) == math.comb(n + 1, 2)
    assert colength(stair) == 16
    assert colength(parse_ideal("x^2,y^3", R2)) == 6
    assert colength(m ** 0) == 0


def test_colength_with_relations():
    R = Ring(2, relations=((2, 0),))
    m = parse_ideal("x,y", R)
    assert [colength(m ** n) for n in range(1, 11)] == [2 * n - 1 for n in range(1, 11)]
    # x together with the relation x^2 still leaves k[y]
    assert not is_finite_colength(ideal(R, [(1, 0)]))


def test_pivot_matches_box(R3):
    I = parse_ideal("x^3,x^2y^2,y^3,z^4", R3)
    assert colength(I) == colength_pivot(I) == 32


def test_krull_dimension():
    assert Ring(2).krull_dim == 2
    assert Ring(2, relations=((2, 0),)).krull_dim == 1
