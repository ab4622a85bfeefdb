"""The generalized Robinson-Schensted maps G_r and their inverses."""

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Set, Tuple

from .core_model import SignedPermutation, Square
from .errors import DuplicateLabelError, InvalidTableauError, ShapeMismatchError
from .tableau import (
    Bitableau,
    Domino,
    DominoTableau,
    is_horizontal,
    make_domino,
    to_bitableau,
    validate,
)


@dataclass(frozen=True)
class TableauPair:
    """A pair (S, T) of domino tableaux, S on the left and T on the right."""

    left: DominoTableau
    right: DominoTableau

    @property
    def rank(self) -> int:
        return self.right.rank

    @property
    def n(self) -> int:
        return self.right.n

    def same_shape(self) -> bool:
        return (
            self.left.rank == self.right.rank
            and self.left.squares == self.right.squares
        )

    def swapped(self) -> "TableauPair":
        return TableauPair(self.right, self.left)

    def key(self) -> tuple:
        return self.left.key(), self.right.key()


def require_same_shape(pair: TableauPair) -> None:
    if pair.left.rank != pair.right.rank:
        raise ShapeMismatchError(
            f"ranks differ: {pair.left.rank} and {pair.right.rank}"
        )
    if pair.left.squares != pair.right.squares:
        raise ShapeMismatchError(
            f"shapes differ: {pair.left.shape} and {pair.right.shape}"
        )


def _row_length(placed: Set[Square], row: int) -> int:
    return sum(1 for s in placed if s.row == row)


def _col_length(placed: Set[Square], col: int) -> int:
    return sum(1 for s in placed if s.col == col)


def _seed(placed: Set[Square], sign: int) -> Domino:
    if sign > 0:
        length = _row_length(placed, 1)
        return Square(1, length + 1), Square(1, length + 2)
    height = _col_length(placed, 1)
    return Square(height + 1, 1), Square(height + 2, 1)


def _bump(domino: Domino, placed: Set[Square]) -> Domino:
    a, b = domino
    if a not in placed:
        if b in placed:
            raise InvalidTableauError(f"domino {a},{b} is not supported from above")
        return domino
    if is_horizontal(domino):
        if b in placed:
            # re-enters the next row after its last placed square
            row = a.row + 1
            length = _row_length(placed, row)
            return Square(row, length + 1), Square(row, length + 2)
        return b, b.below
    if b in placed:
        col = a.col + 1
        height = _col_length(placed, col)
        return Square(height + 1, col), Square(height + 2, col)
    return b, b.right


def insert_domino(value: int, sign: int, tableau: DominoTableau) -> DominoTableau:
    """Insert a domino labelled value: horizontal into row 1 for +, vertical into column 1 for -.

    Larger dominos are then re-placed in increasing order against the diagram
    of everything smaller. A domino clear of that diagram stays put; a
    covered one re-enters the next row (or column) at its first free squares;
    a half-covered one twists.

    Raises:
        DuplicateLabelError: if value is already a label of the tableau.
    """
    dominos = tableau.dominos
    if value in dominos:
        raise DuplicateLabelError(f"label {value} is already in the tableau")
    placed: Set[Square] = set(tableau.core)
    for label, domino in dominos.items():
        if label < value:
            placed.update(domino)
    result: Dict[int, Domino] = {value: _seed(placed, sign)}
    placed.update(result[value])
    for label in sorted(k for k in dominos if k > value):
        moved = _bump(dominos[label], placed)
        result[label] = moved
        placed.update(moved)
    return tableau.replace(result)


def rs(w: SignedPermutation, rank: int) -> TableauPair:
    """G_r(w): insert the signed values of w in order, tracking shape growth.

    The left tableau holds the values w_k; the right tableau labels by k the
    two squares added at step k.
    """
    left = DominoTableau.empty(rank)
    right = DominoTableau.empty(rank)
    for k, (value, _, sign) in enumerate(w.triples(), start=1):
        grown = insert_domino(value, sign, left)
        added = grown.squares - left.squares
        right = right.replace({k: make_domino(added)})
        left = grown
    return TableauPair(left, right)


def _removable(domino: Domino, smaller: Set[Square]) -> Domino:
    """Where a domino bumped into its present place sat before the bump."""
    a, _ = domino
    if is_horizontal(domino):
        row = a.row - 1
        length = _row_length(smaller, row)
        return Square(row, length - 1), Square(row, length)
    col = a.col - 1
    height = _col_length(smaller, col)
    return Square(height - 1, col), Square(height, col)


def _unbump(
    dominos: Dict[int, Domino], core: FrozenSet[Square], hole: Set[Square]
) -> Tuple[int, int]:
    """Walk the bumping path backwards from the vacated squares.

    hole holds the squares covered after the insertion but not before it,
    restricted to labels no larger than the one being looked at.

    Returns:
        (value, sign) of the domino that was originally inserted.
    """
    for label in sorted(dominos, reverse=True):
        domino = dominos[label]
        squares = set(domino)
        common = squares & hole
        if not common:
            continue
        a, b = domino
        if squares == hole:
            if is_horizontal(domino) and a.row == 1:
                del dominos[label]
                return label, 1
            if not is_horizontal(domino) and a.col == 1:
                del dominos[label]
                return label, -1
            smaller = set(core)
            for other, placed in dominos.items():
                if other < label:
                    smaller.update(placed)
            old = _removable(domino, smaller)
            if not set(old) <= smaller:
                raise InvalidTableauError(f"cannot reverse the bump of {label}")
            dominos[label] = old
            hole = set(old)
            continue
        if len(common) == 1 and b in common:
            rest = hole - squares
            if is_horizontal(domino):
                old = (Square(a.row - 1, a.col), a)
            else:
                old = (Square(a.row, a.col - 1), a)
            dominos[label] = old
            hole = {old[0]} | rest
            continue
        raise InvalidTableauError(f"cannot reverse the bump of {label}")
    raise InvalidTableauError("reverse bumping ran off the first row and column")


def rs_inverse(pair: TableauPair) -> SignedPermutation:
    """Recover w from G_r(w) = (S, T) by reverse bumping.

    Raises:
        ShapeMismatchError: if the two tableaux differ in rank or shape.
        InvalidTableauError: if either tableau is not standard.
    """
    require_same_shape(pair)
    for side in (pair.left, pair.right):
        result = validate(side)
        if not result:
            raise InvalidTableauError(result.message)
    left = pair.left.dominos
    right = pair.right.dominos
    word: List[int] = [0] * len(right)
    for k in range(len(right), 0, -1):
        hole = set(right.pop(k))
        value, sign = _unbump(left, pair.left.core, hole)
        word[k - 1] = sign * value
    return SignedPermutation(tuple(word))


def rs_bitableau(w: SignedPermutation) -> Tuple[Bitableau, Bitableau]:
    """H(w): G_{n-1}(w) read through the large-rank bitableau identification."""
    pair = rs(w, max(w.n - 1, 0))
    return to_bitableau(pair.left), to_bitableau(pair.right)
