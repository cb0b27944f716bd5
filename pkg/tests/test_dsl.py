from fractions import Fraction

import pytest

from northcott.dsl import (
    DSLError,
    format_tuple,
    parse_ideal,
    parse_ideal_tuple,
    parse_matrix,
    parse_monomial,
    parse_polynomial,
    parse_ring,
)
from northcott.staircase import Ring


def test_monomials(R2):
    assert parse_monomial("x^2y^3", R2) == (2, 3)
    assert parse_monomial("1", R2) == (0, 0)
    assert parse_monomial("x1^2*x4", Ring(4)) == (2, 0, 0, 1)


def test_unknown_variable_has_position(R2):
    with pytest.raises(DSLError) as info:
        parse_ideal("x,w", R2)
    assert info.value.line == 1 and info.value.column == 3


def test_ring_relations():
    R = parse_ring(2, "x^2")
    assert R.relations == ((2, 0),)
    assert parse_ring(3).relations == ()


def test_tuple_round_trip(R2):
    T = parse_ideal_tuple("x,y | x^2,y", R2)
    assert len(T) == 2
    assert parse_ideal_tuple(format_tuple(T), R2) == T


def test_polynomial_coefficients(R2):
    f = parse_polynomial("3x^2y - 1/2 y^3 + 2", R2)
    assert f.terms == {(2, 1): 3, (0, 3): Fraction(-1, 2), (0, 0): 2}
    assert parse_polynomial("x - x", R2).is_zero


@pytest.mark.parametrize("bad", ["x+", "(x,y", "x^", "2//3"])
def test_polynomial_errors(R2, bad):
    with pytest.raises(DSLError):
        parse_polynomial(bad, R2)


def test_matrix_forms_agree(R2):
    A = parse_matrix("[[x, y, 0], [0, x, y]]", R2)
    B = parse_matrix('{"rank": 2, "entries": [["x", "y", "0"], ["0", "x", "y"]]}', R2)
    assert A == B
    assert A.shape == (2, 3)
    assert str(A) == "[[x,y,0],[0,x,y]]"


def test_matrix_from_file(R2, tmp_path):
    path = tmp_path / "n.json"
    path.write_text('{"entries": [["x^3", "y^7"]]}')
    assert parse_matrix(str(path), R2).shape == (1, 2)


def test_ragged_matrix(R2):
    with pytest.raises(DSLError) as info:
        parse_matrix("[[x,y],[x]]", R2)
    assert info.value.line == 2


def test_bad_json_matrix(R2):
    with pytest.raises(DSLError):
        parse_matrix('{"entries": [["x"]', R2)
    with pytest.raises(DSLError):
        parse_matrix('{"rank": 3, "entries": [["x"]]}', R2)
