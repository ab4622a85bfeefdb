"""Tests for squares, shapes, cores and signed permutations."""

import pytest

from dcy.core_model import (
    Shape,
    SignedPermutation,
    Square,
    between,
    core_shape,
    enumerate_group,
    group_order,
    invert,
)
from dcy.errors import WordParseError


def test_core_shape_is_staircase():
    """The rank-r core has r(r+1)/2 squares below the anti-diagonal i + j = r + 2."""
    assert core_shape(0) == frozenset()
    assert core_shape(1) == {Square(1, 1)}
    assert core_shape(2) == {Square(1, 1), Square(1, 2), Square(2, 1)}
    assert len(core_shape(4)) == 10
    with pytest.raises(ValueError):
        core_shape(-1)


def test_shape_trims_and_validates():
    assert Shape((3, 1, 0, 0)).rows == (3, 1)
    assert Shape((2, 2)).size == 4
    with pytest.raises(ValueError):
        Shape((1, 2))


def test_shape_from_squares():
    shape = Shape.from_squares([Square(1, 1), Square(1, 2), Square(2, 1)])
    assert shape.rows == (2, 1)
    assert Square(2, 1) in shape
    assert Square(2, 2) not in shape
    assert shape.column_length(1) == 2
    with pytest.raises(ValueError):
        Shape.from_squares([Square(1, 1), Square(2, 2)])


def test_between_is_inclusive_rectangle():
    assert between(Square(2, 3), Square(1, 5), Square(4, 2))
    assert between(Square(1, 5), Square(1, 5), Square(4, 2))
    assert not between(Square(5, 3), Square(1, 5), Square(4, 2))


def test_parse_signed_word():
    w = SignedPermutation.parse("3 -1 2")
    assert w.word == (3, -1, 2)
    assert w.n == 3
    assert w.triples() == [(3, 1, 1), (1, 2, -1), (2, 3, 1)]
    assert str(w) == "3 -1 2"
    assert SignedPermutation.parse("").n == 0


@pytest.mark.parametrize(
    "text,position",
    [("1 0", 2), ("1 1", 2), ("1 4 2", 2), ("2 x", 2)],
)
def test_parse_rejects_bad_words(text, position):
    """Errors carry the position of the offending token."""
    with pytest.raises(WordParseError) as excinfo:
        SignedPermutation.parse(text)
    assert excinfo.value.position == position
    assert excinfo.value.exit_code == 1


def test_invert():
    w = SignedPermutation((3, -1, 2))
    assert invert(w).word == (-2, 3, 1)
    assert invert(invert(w)) == w
    assert invert(SignedPermutation((2, 3, 1))).word == (3, 1, 2)
    assert SignedPermutation((-1, 2)).is_involution()
    assert not w.is_involution()


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_enumerate_group_order(n):
    elements = list(enumerate_group(n))
    assert len(elements) == group_order(n) == len(set(elements))


def test_enumerate_group_is_lexicographic():
    elements = list(enumerate_group(2))
    assert [w.word for w in elements] == [
        (-2, -1),
        (-2, 1),
        (-1, -2),
        (-1, 2),
        (1, -2),
        (1, 2),
        (2, -1),
        (2, 1),
    ]
    assert elements == sorted(elements)
