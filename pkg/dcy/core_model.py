"""Foundational value types: squares, shapes, cores and signed permutations."""

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, NamedTuple, Tuple

from .errors import WordParseError


class Square(NamedTuple):
    """A square s_ij of a Young diagram, 1-indexed (row i, column j).

    Coordinates may be non-positive when a square is used as a virtual
    neighbour; such squares carry label 0 in every tableau.
    """

    row: int
    col: int

    def __str__(self) -> str:
        return f"({self.row},{self.col})"

    @property
    def right(self) -> "Square":
        return Square(self.row, self.col + 1)

    @property
    def below(self) -> "Square":
        return Square(self.row + 1, self.col)

    def is_above(self, other: "Square") -> bool:
        return self.row < other.row


@dataclass(frozen=True)
class Shape:
    """A partition given by its row lengths, trailing zeros trimmed."""

    rows: Tuple[int, ...] = ()

    def __post_init__(self):
        rows = tuple(self.rows)
        while rows and rows[-1] == 0:
            rows = rows[:-1]
        if any(r < 0 for r in rows):
            raise ValueError(f"negative row length in {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"row lengths {rows} are not weakly decreasing")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_squares(cls, squares: Iterable[Square]) -> "Shape":
        """Build a shape from a set of squares, which must form a Young diagram."""
        squares = set(squares)
        lengths: List[int] = []
        row = 1
        while True:
            length = 0
            while Square(row, length + 1) in squares:
                length += 1
            if length == 0:
                break
            lengths.append(length)
            row += 1
        shape = cls(tuple(lengths))
        if shape.size != len(squares):
            raise ValueError("squares do not form a left-justified Young diagram")
        return shape

    @property
    def size(self) -> int:
        return sum(self.rows)

    def row_length(self, row: int) -> int:
        if 1 <= row <= len(self.rows):
            return self.rows[row - 1]
        return 0

    def column_length(self, col: int) -> int:
        return sum(1 for length in self.rows if length >= col)

    def __contains__(self, square: Square) -> bool:
        return square.row >= 1 and 1 <= square.col <= self.row_length(square.row)

    def squares(self) -> Iterator[Square]:
        for i, length in enumerate(self.rows, start=1):
            for j in range(1, length + 1):
                yield Square(i, j)

    def __str__(self) -> str:
        return "(" + ",".join(str(r) for r in self.rows) + ")"


def core_shape(rank: int) -> FrozenSet[Square]:
    """Return the rank-r core: the staircase {s_ij : i + j < r + 2}."""
    if rank < 0:
        raise ValueError("rank must be non-negative")
    return frozenset(
        Square(i, j) for i in range(1, rank + 1) for j in range(1, rank + 2 - i)
    )


def between(m: Square, a: Square, b: Square) -> bool:
    """True iff m lies in the rectangle spanned by a and b, endpoints included."""
    rows_ok = min(a.row, b.row) <= m.row <= max(a.row, b.row)
    cols_ok = min(a.col, b.col) <= m.col <= max(a.col, b.col)
    return rows_ok and cols_ok


@dataclass(frozen=True, order=True)
class SignedPermutation:
    """An element of H_n in one-line signed-word form (eps_1 w_1, ..., eps_n w_n)."""

    word: Tuple[int, ...] = ()

    def __post_init__(self):
        word = tuple(int(x) for x in self.word)
        n = len(word)
        if any(x == 0 for x in word):
            raise ValueError("signed permutation entries must be nonzero")
        if sorted(abs(x) for x in word) != list(range(1, n + 1)):
            raise ValueError(f"absolute values of {word} are not a permutation")
        object.__setattr__(self, "word", word)

    @classmethod
    def parse(cls, text: str) -> "SignedPermutation":
        """Parse whitespace-separated signed integers such as ``"3 -1 2"``.

        Raises:
            WordParseError: on zeros, repeats, out-of-range or non-integer tokens.
        """
        tokens = text.replace(",", " ").split()
        n = len(tokens)
        seen = set()
        word = []
        for position, token in enumerate(tokens, start=1):
            try:
                value = int(token)
            except ValueError:
                raise WordParseError(f"'{token}' is not an integer", position)
            if value == 0:
                raise WordParseError("zero is not a signed value", position)
            if abs(value) > n:
                raise WordParseError(f"|{value}| exceeds n = {n}", position)
            if abs(value) in seen:
                raise WordParseError(f"value {abs(value)} repeated", position)
            seen.add(abs(value))
            word.append(value)
        return cls(tuple(word))

    @property
    def n(self) -> int:
        return len(self.word)

    def triples(self) -> List[Tuple[int, int, int]]:
        """The triple form (w_k, k, eps_k) for k = 1..n."""
        return [(abs(x), k, 1 if x > 0 else -1) for k, x in enumerate(self.word, 1)]

    def inverse(self) -> "SignedPermutation":
        return invert(self)

    def is_involution(self) -> bool:
        return invert(self) == self

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.word)

    def __len__(self) -> int:
        return len(self.word)


def invert(w: SignedPermutation) -> SignedPermutation:
    """Inverse in H_n: if w sends k to eps*w_k then the inverse sends w_k to eps*k."""
    result = [0] * w.n
    for k, x in enumerate(w.word, start=1):
        result[abs(x) - 1] = k if x > 0 else -k
    return SignedPermutation(tuple(result))


def enumerate_group(n: int) -> Iterator[SignedPermutation]:
    """Yield all 2^n * n! elements of H_n in lexicographic order of signed words."""
    if n < 0:
        raise ValueError("n must be non-negative")
    candidates = sorted([-v for v in range(1, n + 1)] + list(range(1, n + 1)))
    prefix: List[int] = []
    used = set()

    def extend() -> Iterator[SignedPermutation]:
        if len(prefix) == n:
            yield SignedPermutation(tuple(prefix))
            return
        for value in candidates:
            if abs(value) in used:
                continue
            used.add(abs(value))
            prefix.append(value)
            yield from extend()
            prefix.pop()
            used.discard(abs(value))

    yield from extend()


def group_order(n: int) -> int:
    order = 1
    for k in range(1, n + 1):
        order *= 2 * k
    return order
