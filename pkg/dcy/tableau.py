"""Rank-r standard domino tableaux and standard bitableaux."""

import json
import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Set,
    Tuple,
    Union,
)

from .core_model import Shape, Square, core_shape
from .errors import (
    InvalidTableauError,
    LabelNotFoundError,
    RankTooSmallError,
    TableauFormatError,
)

INFINITY = math.inf

Domino = Tuple[Square, Square]
Label = Union[int, float]


def make_domino(squares: Iterable[Tuple[int, int]]) -> Domino:
    """Normalise two squares into a domino ordered top-left first."""
    cells = sorted(Square(*s) for s in squares)
    if len(cells) != 2 or cells[0] == cells[1]:
        raise TableauFormatError(f"a domino needs two distinct squares, got {cells}")
    return cells[0], cells[1]


def is_horizontal(domino: Domino) -> bool:
    return domino[0].row == domino[1].row


def is_adjacent(a: Square, b: Square) -> bool:
    return abs(a.row - b.row) + abs(a.col - b.col) == 1


class SquareKind(str, Enum):
    FIXED = "fixed"
    VARIABLE_X = "variable-X"
    VARIABLE_W = "variable-W"


def is_fixed(square: Square, rank: int) -> bool:
    """Fixed squares have i + j of the opposite parity to r."""
    return (square.row + square.col) % 2 != rank % 2


def square_kind(square: Square, rank: int) -> SquareKind:
    if is_fixed(square, rank):
        return SquareKind.FIXED
    return SquareKind.VARIABLE_X if square.row % 2 == 1 else SquareKind.VARIABLE_W


class DominoTableau:
    """A domino tableau of rank r: a core of 0-labelled squares plus labelled dominos.

    Instances are immutable. The core defaults to the rank-r staircase; a larger
    core only appears transiently when cycles through the diagonal are moved.
    """

    def __init__(
        self,
        rank: int,
        dominos: Optional[Mapping[int, Iterable[Tuple[int, int]]]] = None,
        core: Optional[Iterable[Square]] = None,
    ):
        if rank < 0:
            raise TableauFormatError("rank must be non-negative")
        self._rank = rank
        self._core = frozenset(Square(*s) for s in core) if core is not None else core_shape(rank)
        self._dominos: Dict[int, Domino] = {}
        self._grid: Dict[Square, int] = {s: 0 for s in self._core}
        for label in sorted(dominos or {}):
            if label <= 0:
                raise TableauFormatError(f"domino labels must be positive, got {label}")
            domino = make_domino(dominos[label])
            for s in domino:
                if s in self._grid:
                    raise TableauFormatError(f"square {s} is labelled twice")
                self._grid[s] = label
            self._dominos[label] = domino
        self._key = (
            self._rank,
            None if core is None or self._core == core_shape(rank) else tuple(sorted(self._core)),
            tuple(self._dominos.items()),
        )

    @classmethod
    def empty(cls, rank: int = 0) -> "DominoTableau":
        return cls(rank)

    @property
    def rank(self) -> int:
        return self._rank

    @property
    def core(self) -> FrozenSet[Square]:
        return self._core

    @property
    def dominos(self) -> Dict[int, Domino]:
        return dict(self._dominos)

    @property
    def labels(self) -> List[int]:
        return list(self._dominos)

    @property
    def n(self) -> int:
        return len(self._dominos)

    @property
    def squares(self) -> FrozenSet[Square]:
        return frozenset(self._grid)

    @property
    def grid(self) -> Dict[Square, int]:
        return dict(self._grid)

    @property
    def shape(self) -> Shape:
        try:
            return Shape.from_squares(self._grid)
        except ValueError as e:
            raise InvalidTableauError(f"squares do not form a Young diagram: {e}")

    def has_standard_core(self) -> bool:
        return self._core == core_shape(self._rank)

    def domino(self, label: int) -> Domino:
        try:
            return self._dominos[label]
        except KeyError:
            raise LabelNotFoundError(f"label {label} is not in the tableau")

    def __contains__(self, square: Square) -> bool:
        return square in self._grid

    def label_of(self, square: Tuple[int, int]) -> Label:
        """Label of a square, extended by 0 off the diagram and infinity outside it."""
        square = Square(*square)
        if square.row <= 0 or square.col <= 0:
            return 0
        return self._grid.get(square, INFINITY)

    def replace(
        self,
        updates: Optional[Mapping[int, Domino]] = None,
        remove: Iterable[int] = (),
        rank: Optional[int] = None,
        core: Optional[Iterable[Square]] = None,
    ) -> "DominoTableau":
        """Return a copy with some dominos moved, added or removed."""
        dominos = dict(self._dominos)
        for label in remove:
            dominos.pop(label, None)
        dominos.update(updates or {})
        new_rank = self._rank if rank is None else rank
        if core is None and rank is None and not self.has_standard_core():
            core = self._core
        return DominoTableau(new_rank, dominos, core)

    def key(self) -> tuple:
        """Canonical hashable identity (rank, non-default core, dominos by label)."""
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, DominoTableau) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"DominoTableau(rank={self._rank}, n={self.n}, shape={self.shape})"

    def __str__(self) -> str:
        return render(self)


class ValidationResult(NamedTuple):
    ok: bool
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate(tableau: DominoTableau) -> ValidationResult:
    """Check every standard domino tableau invariant, reporting the first failure."""
    if not tableau.has_standard_core():
        return ValidationResult(False, f"core is not the rank-{tableau.rank} staircase")
    labels = tableau.labels
    if labels != list(range(1, len(labels) + 1)):
        return ValidationResult(False, f"labels {labels} are not 1..{len(labels)}")
    try:
        tableau.shape
    except ValueError:
        return ValidationResult(False, "squares do not form a Young diagram")
    for label, (a, b) in tableau.dominos.items():
        if not is_adjacent(a, b):
            return ValidationResult(False, f"domino {label} squares {a}, {b} are not adjacent")
        if is_fixed(a, tableau.rank) == is_fixed(b, tableau.rank):
            return ValidationResult(False, f"domino {label} lacks a fixed square")
    grid = tableau.grid
    for square, label in grid.items():
        for neighbour, direction in ((square.right, "row"), (square.below, "column")):
            other = grid.get(neighbour)
            if other is not None and other < label:
                line = square.row if direction == "row" else square.col
                return ValidationResult(
                    False,
                    f"labels decrease along {direction} {line}: {label} before {other}",
                )
    return ValidationResult(True, "")


def classify_square(tableau: DominoTableau, square: Square) -> SquareKind:
    return square_kind(Square(*square), tableau.rank)


def delta(tableau: DominoTableau) -> FrozenSet[Square]:
    """delta(T): squares of T on the anti-diagonal i + j = r + 2."""
    target = tableau.rank + 2
    return frozenset(
        s for s in tableau.squares if s.row + s.col == target and s not in tableau.core
    )


def boundary_sets(
    tableau: DominoTableau,
) -> Tuple[FrozenSet[Square], FrozenSet[Square], FrozenSet[Square]]:
    """Return (boundary, rim, diagonal) = (d(T), rho(T), delta(T)).

    For the empty diagram the rim is taken to be {(1,1)}.
    """
    squares = tableau.squares
    if not squares:
        return frozenset(), frozenset({Square(1, 1)}), frozenset()
    boundary = set()
    rim = set()
    for s in squares:
        missing = [t for t in (s.right, s.below) if t not in squares]
        if missing:
            boundary.add(s)
            rim.update(missing)
    return frozenset(boundary), frozenset(rim), delta(tableau)


def holes_and_corners(
    tableau: DominoTableau,
) -> Tuple[FrozenSet[Square], FrozenSet[Square]]:
    """Variable squares of d(T) u rho(T) with no right or lower neighbour in T."""
    boundary, rim, _ = boundary_sets(tableau)
    squares = tableau.squares
    holes, corners = set(), set()
    for s in boundary | rim:
        if s.right in squares or s.below in squares:
            continue
        kind = square_kind(s, tableau.rank)
        if kind is SquareKind.VARIABLE_W:
            holes.add(s)
        elif kind is SquareKind.VARIABLE_X:
            corners.add(s)
    return frozenset(holes), frozenset(corners)


def row_lengths(squares: Iterable[Square]) -> List[int]:
    return list(Shape.from_squares(squares).rows)


def addable_dominos(squares: Iterable[Square]) -> List[Domino]:
    """All dominos whose addition keeps the diagram a Young diagram."""
    lengths = row_lengths(squares) + [0, 0]
    found: List[Domino] = []
    for i in range(1, len(lengths)):
        length = lengths[i - 1]
        above = lengths[i - 2] if i > 1 else math.inf
        if above >= length + 2:
            found.append((Square(i, length + 1), Square(i, length + 2)))
        if lengths[i] == length and above >= length + 1:
            found.append((Square(i, length + 1), Square(i + 1, length + 1)))
    return found


def enumerate_tableaux(n: int, rank: int) -> Iterator[DominoTableau]:
    """Yield every standard domino tableau of rank r with n dominos."""

    def grow(tableau: DominoTableau, label: int) -> Iterator[DominoTableau]:
        if label > n:
            yield tableau
            return
        for domino in addable_dominos(tableau.squares):
            yield from grow(tableau.replace({label: domino}), label + 1)

    yield from grow(DominoTableau.empty(rank), 1)


# -- bitableaux ---------------------------------------------------------------

Rows = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class Bitableau:
    """A pair of standard Young tableaux whose labels partition {1..n}."""

    left: Rows = ()
    right: Rows = ()

    @property
    def left_shape(self) -> Shape:
        return Shape(tuple(len(r) for r in self.left))

    @property
    def right_shape(self) -> Shape:
        return Shape(tuple(len(r) for r in self.right))

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.left) + sum(len(r) for r in self.right)

    def same_shape(self, other: "Bitableau") -> bool:
        return (self.left_shape, self.right_shape) == (other.left_shape, other.right_shape)

    def to_json(self) -> dict:
        return {"left": [list(r) for r in self.left], "right": [list(r) for r in self.right]}


def _core_arm(rank: int, line: int) -> int:
    return max(rank + 1 - line, 0)


def _rows_from_cells(cells: Dict[Tuple[int, int], int]) -> Rows:
    rows: List[Tuple[int, ...]] = []
    i = 1
    while (i, 1) in cells:
        row = []
        j = 1
        while (i, j) in cells:
            row.append(cells[(i, j)])
            j += 1
        rows.append(tuple(row))
        i += 1
    if sum(len(r) for r in rows) != len(cells):
        raise InvalidTableauError("dominos are not in large-rank position")
    return tuple(rows)


def _is_standard_young(rows: Rows) -> bool:
    for i, row in enumerate(rows):
        if any(a >= b for a, b in zip(row, row[1:])):
            return False
        if i > 0 and (len(row) > len(rows[i - 1]) or any(
            above >= here for above, here in zip(rows[i - 1], row)
        )):
            return False
    return True


def to_bitableau(tableau: DominoTableau) -> Bitableau:
    """Split a tableau of rank r >= n - 1 into its standard bitableau.

    The k-th horizontal domino to the right of the core in row i becomes cell
    (i, k) of the left tableau; the k-th vertical domino below the core in
    column j becomes cell (k, j) of the right tableau.

    Raises:
        RankTooSmallError: if rank < n - 1.
        InvalidTableauError: if a domino is not in large-rank position.
    """
    if tableau.rank < tableau.n - 1:
        raise RankTooSmallError(
            f"rank {tableau.rank} is below n - 1 = {tableau.n - 1}"
        )
    left: Dict[Tuple[int, int], int] = {}
    right: Dict[Tuple[int, int], int] = {}
    for label, domino in tableau.dominos.items():
        a = domino[0]
        if is_horizontal(domino):
            offset = a.col - _core_arm(tableau.rank, a.row) - 1
            target, cell = left, (a.row, offset // 2 + 1)
        else:
            offset = a.row - _core_arm(tableau.rank, a.col) - 1
            target, cell = right, (offset // 2 + 1, a.col)
        if offset % 2:
            raise InvalidTableauError(f"domino {label} is not in large-rank position")
        target[cell] = label
    result = Bitableau(_rows_from_cells(left), _rows_from_cells(right))
    if not (_is_standard_young(result.left) and _is_standard_young(result.right)):
        raise InvalidTableauError("identified bitableau is not standard")
    return result


def from_bitableau(bitableau: Bitableau, rank: int) -> DominoTableau:
    """Inverse of to_bitableau for a given rank r >= n - 1."""
    if rank < bitableau.n - 1:
        raise RankTooSmallError(f"rank {rank} is below n - 1 = {bitableau.n - 1}")
    dominos: Dict[int, Domino] = {}
    for i, row in enumerate(bitableau.left, start=1):
        for k, label in enumerate(row, start=1):
            col = _core_arm(rank, i) + 2 * k - 1
            dominos[label] = (Square(i, col), Square(i, col + 1))
    for k, row in enumerate(bitableau.right, start=1):
        for j, label in enumerate(row, start=1):
            top = _core_arm(rank, j) + 2 * k - 1
            dominos[label] = (Square(top, j), Square(top + 1, j))
    tableau = DominoTableau(rank, dominos)
    result = validate(tableau)
    if not result:
        raise InvalidTableauError(result.message)
    return tableau


# -- text and JSON formats ----------------------------------------------------


def render(tableau: DominoTableau) -> str:
    """Rows of right-aligned labels, core squares shown as 0.

    The two squares of a domino carry the same label, so a horizontal domino
    spans two columns and a vertical one two rows.
    """
    grid = tableau.grid
    if not grid:
        return ""
    width = max(len(str(label)) for label in grid.values())
    lines = []
    for i, length in enumerate(tableau.shape.rows, start=1):
        cells = [str(grid[Square(i, j)]).rjust(width) for j in range(1, length + 1)]
        lines.append(" ".join(cells))
    return "\n".join(lines)


def _rank_from_core_size(size: int) -> int:
    rank = 0
    while rank * (rank + 1) // 2 < size:
        rank += 1
    if rank * (rank + 1) // 2 != size:
        raise TableauFormatError(f"{size} core squares do not form a staircase")
    return rank


def _tableau_from_cells(cells: Dict[Square, int], rank: Optional[int]) -> DominoTableau:
    zeros = [s for s, label in cells.items() if label == 0]
    if rank is None:
        rank = _rank_from_core_size(len(zeros))
    by_label: Dict[int, List[Square]] = {}
    for s, label in cells.items():
        if label:
            by_label.setdefault(label, []).append(s)
    for label, squares in by_label.items():
        if len(squares) != 2:
            raise TableauFormatError(f"label {label} covers {len(squares)} squares")
    tableau = DominoTableau(rank, by_label, core=zeros)
    result = validate(tableau)
    if not result:
        raise TableauFormatError(f"invalid tableau: {result.message}")
    return DominoTableau(rank, by_label)


def parse(text: str, rank: Optional[int] = None) -> DominoTableau:
    """Parse the output of render back into a tableau."""
    cells: Dict[Square, int] = {}
    lines = [line for line in text.strip("\n").splitlines()]
    for i, line in enumerate(lines, start=1):
        for j, token in enumerate(line.split(), start=1):
            try:
                cells[Square(i, j)] = int(token)
            except ValueError:
                raise TableauFormatError(f"'{token}' at row {i} is not a label")
    return _tableau_from_cells(cells, rank)


_MARKUP_TOKEN = re.compile(r"([.>^;])(\{[^}]*\}|\d+|[A-Za-z])?")


def read_markup(text: str) -> Tuple[List[Tuple[str, Domino]], Dict[Square, str]]:
    """Read the compact row notation of the worked examples.

    ``.x`` is a single cell, ``>x`` a horizontal domino, ``^x`` a vertical
    domino hanging down from this row, ``;`` a filler for a covered cell.
    Cells already covered from above are skipped automatically.

    Returns:
        (dominos as (tag, domino) pairs, single cells as square -> tag)
    """
    dominos: List[Tuple[str, Domino]] = []
    singles: Dict[Square, str] = {}
    occupied: Set[Square] = set()
    for i, raw in enumerate(text.strip().splitlines(), start=1):
        line = raw.strip().lstrip(":").rstrip("\\").strip()
        col = 1
        for kind, tag in _MARKUP_TOKEN.findall(line):
            if kind == ";":
                continue
            while Square(i, col) in occupied:
                col += 1
            tag = (tag or "").strip("{}")
            here = Square(i, col)
            if kind == ".":
                singles[here] = tag
                occupied.add(here)
                col += 1
                continue
            other = here.right if kind == ">" else here.below
            dominos.append((tag, (here, other)))
            occupied.update((here, other))
            col += 1
    return dominos, singles


def parse_markup(text: str, rank: Optional[int] = None) -> DominoTableau:
    dominos, singles = read_markup(text)
    cells: Dict[Square, int] = {}
    for s, tag in singles.items():
        cells[s] = int(tag)
    for tag, (a, b) in dominos:
        cells[a] = cells[b] = int(tag)
    return _tableau_from_cells(cells, rank)


def to_json(tableau: DominoTableau) -> dict:
    return {
        "rank": tableau.rank,
        "shape": list(tableau.shape.rows),
        "dominos": {
            str(label): [[a.row, a.col], [b.row, b.col]]
            for label, (a, b) in tableau.dominos.items()
        },
    }


def serialize(tableau: DominoTableau) -> str:
    """Canonical JSON: rank, shape and dominos in increasing label order."""
    return json.dumps(to_json(tableau), indent=2)


def _json_square(value) -> Tuple[int, int]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise TableauFormatError(f"square {value!r} is not a [row, col] pair")
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise TableauFormatError(f"square {value!r} has non-integer coordinates")
    return value[0], value[1]


def from_json(data: dict) -> DominoTableau:
    if not isinstance(data, dict):
        raise TableauFormatError("tableau JSON must be an object")
    try:
        rank = int(data["rank"])
        entries = data["dominos"]
        if not isinstance(entries, dict):
            raise TableauFormatError("'dominos' must map labels to square pairs")
        dominos = {}
        for k, v in entries.items():
            if not isinstance(v, (list, tuple)) or len(v) != 2:
                raise TableauFormatError(f"domino {k} needs exactly two squares")
            dominos[int(k)] = [_json_square(s) for s in v]
    except (AttributeError, KeyError, TypeError, ValueError) as e:
        raise TableauFormatError(f"malformed tableau JSON: {e}")
    tableau = DominoTableau(rank, dominos)
    result = validate(tableau)
    if not result:
        raise TableauFormatError(f"invalid tableau: {result.message}")
    declared = data.get("shape")
    if declared is not None and declared != list(tableau.shape.rows):
        raise TableauFormatError(
            f"declared shape {declared} does not match {list(tableau.shape.rows)}"
        )
    return tableau


def deserialize(text: str) -> DominoTableau:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise TableauFormatError(f"not valid JSON: {e}")
    return from_json(data)


def load_tableau(text: str) -> DominoTableau:
    """Read either canonical JSON or the plain text rendering."""
    if text.lstrip().startswith("{"):
        return deserialize(text)
    return parse(text)
