"""Tests for domino tableaux, their formats and the bitableau identification."""

import math

import pytest

from dcy.core_model import Square
from dcy.errors import (
    InvalidTableauError,
    LabelNotFoundError,
    RankTooSmallError,
    TableauFormatError,
)
from dcy.tableau import (
    Bitableau,
    DominoTableau,
    SquareKind,
    boundary_sets,
    classify_square,
    deserialize,
    enumerate_tableaux,
    from_bitableau,
    holes_and_corners,
    load_tableau,
    parse,
    parse_markup,
    read_markup,
    render,
    serialize,
    to_bitableau,
    validate,
)


def test_markup_example_is_valid(three_cycles):
    assert validate(three_cycles)
    assert three_cycles.rank == 2
    assert three_cycles.n == 18
    assert three_cycles.shape.rows == (8, 7, 6, 6, 4, 3, 3, 2)
    assert three_cycles.domino(17) == (Square(6, 3), Square(7, 3))


def test_label_of_extension(t_start):
    assert t_start.label_of((1, 1)) == 0
    assert t_start.label_of((0, 4)) == 0
    assert t_start.label_of((3, 0)) == 0
    assert t_start.label_of((4, 2)) == 8
    assert t_start.label_of((1, 6)) == math.inf
    with pytest.raises(LabelNotFoundError):
        t_start.domino(9)


def test_classify_square():
    tableau = DominoTableau.empty(0)
    assert classify_square(tableau, Square(1, 1)) is SquareKind.VARIABLE_X
    assert classify_square(tableau, Square(1, 2)) is SquareKind.FIXED
    assert classify_square(tableau, Square(2, 2)) is SquareKind.VARIABLE_W


def test_validate_names_the_violation():
    """Each invariant failure is reported, never raised."""
    decreasing = DominoTableau(0, {1: [(1, 3), (1, 4)], 2: [(1, 1), (1, 2)]})
    result = validate(decreasing)
    assert not result
    assert "decrease" in result.message

    gap = DominoTableau(0, {2: [(1, 1), (1, 2)]})
    assert "labels" in validate(gap).message

    detached = DominoTableau(0, {1: [(1, 1), (1, 3)]})
    assert not validate(detached)

    assert validate(DominoTableau.empty(3))


def test_constructor_rejects_overlap():
    with pytest.raises(TableauFormatError):
        DominoTableau(1, {1: [(1, 1), (1, 2)]})


def test_boundary_sets_of_empty_diagram():
    boundary, rim, diagonal = boundary_sets(DominoTableau.empty(0))
    assert boundary == frozenset()
    assert rim == {Square(1, 1)}
    assert diagonal == frozenset()


def test_boundary_sets(t_start):
    boundary, rim, diagonal = boundary_sets(t_start)
    assert Square(1, 5) in boundary
    assert Square(1, 6) in rim
    assert Square(6, 1) in rim
    assert diagonal == {Square(1, 2), Square(2, 1)}


def test_holes_and_corners(t_start):
    holes, corners = holes_and_corners(t_start)
    assert all(s.row % 2 == 0 for s in holes)
    assert all(s.row % 2 == 1 for s in corners)
    assert Square(1, 6) in corners
    assert Square(6, 1) in holes


def test_render_parse_round_trip(three_cycles):
    text = render(three_cycles)
    assert text.splitlines()[0].split() == ["0", "0", "1", "1", "2", "2", "3", "3"]
    assert parse(text) == three_cycles
    assert load_tableau(text) == three_cycles


def test_parse_rejects_corrupt_text():
    with pytest.raises(TableauFormatError):
        parse("1 1 2\n2")
    with pytest.raises(TableauFormatError):
        parse("0 0\n1 1")


def test_serialize_is_canonical(t_middle):
    text = serialize(t_middle)
    assert deserialize(text) == t_middle
    assert load_tableau(text) == t_middle
    assert '"rank": 1' in text
    assert text == serialize(deserialize(text))


def test_deserialize_rejects_shape_mismatch(t_middle):
    text = serialize(t_middle).replace('"shape": [\n    5', '"shape": [\n    6')
    with pytest.raises(TableauFormatError):
        deserialize(text)
    with pytest.raises(TableauFormatError):
        deserialize("{not json")


@pytest.mark.parametrize(
    "text",
    [
        '{"rank": 0, "dominos": []}',
        '{"rank": 0, "dominos": {"1": [[1, "a"], [1, 2]]}}',
        '{"rank": 0, "dominos": {"1": [[1, 1]]}}',
        '{"rank": 0, "dominos": {"1": [1, 2]}}',
        '{"rank": 0, "dominos": {"1": [[1, 1], [1, 2]]}, "shape": 2}',
        '{"dominos": {}}',
        "[1, 2]",
    ],
)
def test_deserialize_reports_malformed_json(text):
    with pytest.raises(TableauFormatError):
        deserialize(text)


def test_shape_of_a_gapped_tableau_is_invalid():
    gapped = DominoTableau(1, {1: [(1, 2), (1, 3)], 2: [(2, 2), (2, 3)]})
    with pytest.raises(InvalidTableauError):
        gapped.shape
    assert not validate(gapped)


def test_read_markup_skew_diagram(skew_diagram):
    dominos, singles = read_markup(skew_diagram)
    assert set(singles) == {Square(1, 1), Square(1, 2), Square(2, 1)}
    assert len(dominos) == 7
    tags = dict((tag, d) for tag, d in dominos if tag)
    assert tags["e"] == (Square(1, 5), Square(2, 5))


@pytest.mark.parametrize(
    "n,rank,count",
    [(0, 0, 1), (1, 0, 2), (1, 1, 2), (2, 0, 6), (2, 1, 6)],
)
def test_enumerate_tableaux_counts(n, rank, count):
    tableaux = list(enumerate_tableaux(n, rank))
    assert len(tableaux) == count
    assert all(validate(t) for t in tableaux)


def test_bitableau_identification():
    horizontal = DominoTableau(1, {1: [(1, 2), (1, 3)]})
    assert to_bitableau(horizontal) == Bitableau(((1,),), ())
    vertical = DominoTableau(1, {1: [(2, 1), (3, 1)]})
    assert to_bitableau(vertical) == Bitableau((), ((1,),))


@pytest.mark.parametrize("n,rank", [(2, 1), (2, 2), (3, 2), (3, 3)])
def test_bitableau_round_trip(n, rank):
    seen = set()
    for tableau in enumerate_tableaux(n, rank):
        bitableau = to_bitableau(tableau)
        assert bitableau.n == n
        assert from_bitableau(bitableau, rank) == tableau
        seen.add(bitableau)
    assert len(seen) == len(list(enumerate_tableaux(n, rank)))


def test_bitableau_needs_large_rank(t_start):
    with pytest.raises(RankTooSmallError):
        to_bitableau(t_start)
    with pytest.raises(InvalidTableauError):
        from_bitableau(Bitableau(((2, 1),), ()), 1)
