"""Cycle calculus on domino tableaux: D' moves, cycles, moving through, and MMT."""

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

from .core_model import Square, core_shape
from .errors import (
    ExtendedCycleError,
    InvalidCycleSetError,
    InvalidTableauError,
    StaleCycleError,
)
from .insertion import TableauPair, require_same_shape
from .tableau import Domino, DominoTableau, delta, is_fixed, make_domino
from .utils.unionfind import UnionFind


def moved_domino(label: int, tableau: DominoTableau) -> Domino:
    """D'(k): the domino k pivoted about its fixed square.

    With fixed square s = (i, j), when the other square lies below or left of
    s the new domino extends up if k is smaller than the label at (i-1, j+1),
    otherwise right. When it lies above or right of s the new domino extends
    left if k is smaller than the label at (i+1, j-1), otherwise down.

    Raises:
        LabelNotFoundError: if label is not in the tableau.
    """
    a, b = tableau.domino(label)
    if is_fixed(a, tableau.rank) == is_fixed(b, tableau.rank):
        raise InvalidTableauError(f"domino {label} has no unique fixed square")
    fixed, other = (a, b) if is_fixed(a, tableau.rank) else (b, a)
    i, j = fixed
    if other in ((i + 1, j), (i, j - 1)):
        if label < tableau.label_of((i - 1, j + 1)):
            return make_domino((fixed, (i - 1, j)))
        return make_domino((fixed, (i, j + 1)))
    if label < tableau.label_of((i + 1, j - 1)):
        return make_domino((fixed, (i, j - 1)))
    return make_domino((fixed, (i + 1, j)))


@dataclass(frozen=True)
class Cycle:
    """A cycle of a tableau, identified by its label set."""

    labels: FrozenSet[int]
    home: DominoTableau = field(compare=False, repr=False)

    def __contains__(self, label: int) -> bool:
        return label in self.labels

    def __iter__(self):
        return iter(sorted(self.labels))

    def __len__(self) -> int:
        return len(self.labels)

    def __str__(self) -> str:
        return "{" + ",".join(str(k) for k in self) + "}"


class CycleKind(str, Enum):
    CORE = "core"
    UP = "up"
    DOWN = "down"
    CLOSED = "closed"


@dataclass(frozen=True)
class CycleInfo:
    """A cycle with its classification and, when open, its endpoints S_b and S_f."""

    cycle: Cycle
    kind: CycleKind
    s_b: Optional[Square] = None
    s_f: Optional[Square] = None

    @property
    def is_open(self) -> bool:
        return self.kind is not CycleKind.CLOSED

    @property
    def is_core(self) -> bool:
        return self.kind is CycleKind.CORE

    @property
    def is_noncore(self) -> bool:
        return self.kind in (CycleKind.UP, CycleKind.DOWN)

    @property
    def labels(self) -> FrozenSet[int]:
        return self.cycle.labels

    @property
    def tau_label(self) -> int:
        """Forest label: 1 for a down cycle, 0 for an up cycle."""
        if not self.is_noncore:
            raise ValueError(f"{self.kind.value} cycle {self.cycle} has no forest label")
        return 1 if self.kind is CycleKind.DOWN else 0

    def to_json(self) -> dict:
        return {
            "labels": sorted(self.labels),
            "kind": self.kind.value,
            "s_b": list(self.s_b) if self.s_b else None,
            "s_f": list(self.s_f) if self.s_f else None,
        }


def _moves(tableau: DominoTableau) -> Dict[int, Domino]:
    return {label: moved_domino(label, tableau) for label in tableau.labels}


def _closure(
    label: int, tableau: DominoTableau, moves: Dict[int, Domino]
) -> FrozenSet[int]:
    grid = tableau.grid
    moved_at: Dict[Square, List[int]] = {}
    for m, domino in moves.items():
        for s in domino:
            moved_at.setdefault(s, []).append(m)
    seen = {label}
    queue = deque([label])
    while queue:
        current = queue.popleft()
        neighbours: Set[int] = set()
        for s in moves[current]:
            if grid.get(s, 0) > 0:
                neighbours.add(grid[s])
        for s in tableau.domino(current):
            neighbours.update(moved_at.get(s, ()))
        for m in neighbours - seen:
            seen.add(m)
            queue.append(m)
    return frozenset(seen)


def cycle_through(label: int, tableau: DominoTableau) -> Cycle:
    """c(k, T): the least label set containing k closed under D/D' overlap."""
    tableau.domino(label)
    return Cycle(_closure(label, tableau, _moves(tableau)), tableau)


def _classify(
    labels: FrozenSet[int],
    tableau: DominoTableau,
    moves: Dict[int, Domino],
    diagonal: FrozenSet[Square],
) -> CycleInfo:
    old = {s for k in labels for s in tableau.domino(k)}
    new = {s for k in labels for s in moves[k]}
    cycle = Cycle(labels, tableau)
    removed, added = old - new, new - old
    if not removed and not added:
        return CycleInfo(cycle, CycleKind.CLOSED)
    if len(removed) != 1 or len(added) != 1:
        raise InvalidTableauError(f"cycle {cycle} does not move exactly one square")
    (s_b,), (s_f,) = removed, added
    if old & diagonal:
        kind = CycleKind.CORE
    elif s_b.row < s_f.row:
        kind = CycleKind.DOWN
    else:
        kind = CycleKind.UP
    return CycleInfo(cycle, kind, s_b, s_f)


@lru_cache(maxsize=4096)
def _all_cycles(tableau: DominoTableau) -> Tuple[CycleInfo, ...]:
    moves = _moves(tableau)
    diagonal = delta(tableau)
    found: List[CycleInfo] = []
    assigned: Set[int] = set()
    for label in tableau.labels:
        if label in assigned:
            continue
        labels = _closure(label, tableau, moves)
        assigned |= labels
        found.append(_classify(labels, tableau, moves, diagonal))
    return tuple(found)


def all_cycles(tableau: DominoTableau) -> List[CycleInfo]:
    """Partition the labels of T into cycles, ordered by smallest label.

    Endpoints come from diffing the squares before and after the move: S_b is
    the square given up (to the outside or to the core), S_f the square gained.
    """
    return list(_all_cycles(tableau))


def open_cycles(tableau: DominoTableau) -> List[CycleInfo]:
    return [info for info in _all_cycles(tableau) if info.is_open]


def core_cycles(tableau: DominoTableau) -> List[CycleInfo]:
    """Delta(T): open cycles through the diagonal."""
    return [info for info in _all_cycles(tableau) if info.is_core]


def noncore_cycles(tableau: DominoTableau) -> List[CycleInfo]:
    """OC*(T): open cycles missing the diagonal."""
    return [info for info in _all_cycles(tableau) if info.is_noncore]


def cycle_info(labels: Iterable[int], tableau: DominoTableau) -> CycleInfo:
    """Look up the cycle of T with exactly this label set."""
    wanted = frozenset(labels)
    for info in _all_cycles(tableau):
        if info.labels == wanted:
            return info
    raise InvalidCycleSetError(f"{sorted(wanted)} is not a cycle of the tableau")


CycleLike = Union[Cycle, CycleInfo, Iterable[int]]


def _label_set(item: CycleLike) -> FrozenSet[int]:
    if isinstance(item, (Cycle, CycleInfo)):
        return item.labels
    return frozenset(item)


def move_through(tableau: DominoTableau, cycles: Iterable[CycleLike]) -> DominoTableau:
    """MT(T, U): replace D(l) by D'(l) for every label of every cycle in U.

    Every D' is computed from T itself, so the result does not depend on the
    order of U. Squares given up by core cycles join the core.

    Raises:
        InvalidCycleSetError: if U repeats a cycle or names a non-cycle.
    """
    chosen: List[CycleInfo] = []
    seen: Set[FrozenSet[int]] = set()
    for item in cycles:
        labels = _label_set(item)
        if labels in seen:
            raise InvalidCycleSetError(f"cycle {sorted(labels)} listed twice")
        seen.add(labels)
        chosen.append(cycle_info(labels, tableau))
    if not chosen:
        return tableau
    updates: Dict[int, Domino] = {}
    core = set(tableau.core)
    for info in chosen:
        for label in info.labels:
            updates[label] = moved_domino(label, tableau)
        if info.is_core:
            core.add(info.s_b)
    return tableau.replace(updates, core=core)


@dataclass(frozen=True)
class ExtendedCyclePair:
    """Matching cycle sets: in_right is the extended cycle in T, in_left its partner in S."""

    in_left: Tuple[CycleInfo, ...]
    in_right: Tuple[CycleInfo, ...]
    source: tuple = field(default=(), compare=False, repr=False)

    @property
    def is_open(self) -> bool:
        return any(info.is_open for info in self.in_left + self.in_right)

    @property
    def meets_core(self) -> bool:
        return any(info.is_core for info in self.in_left + self.in_right)


def _check_chain(left: List[CycleInfo], right: List[CycleInfo]) -> None:
    if (
        len(left) != len(right)
        or {c.s_b for c in left} != {c.s_b for c in right}
        or {c.s_f for c in left} != {c.s_f for c in right}
    ):
        raise ExtendedCycleError(
            "extended cycle endpoints do not chain: "
            f"left {[str(c.cycle) for c in left]}, right {[str(c.cycle) for c in right]}"
        )


def extended_cycle_pairs(pair: TableauPair) -> List[ExtendedCyclePair]:
    """Group the cycles of S and T into corresponding extended cycles.

    Open cycles are linked across sides when they share S_b or S_f; each
    connected component must satisfy the chain condition. Closed cycles form
    one-sided singletons.

    Raises:
        ShapeMismatchError: if S and T differ in rank or shape.
        ExtendedCycleError: if a component fails the chain condition.
    """
    require_same_shape(pair)
    sides = {"L": all_cycles(pair.left), "R": all_cycles(pair.right)}
    nodes = [(side, i) for side, infos in sides.items() for i, info in enumerate(infos)]
    uf = UnionFind(nodes)
    by_endpoint: Dict[Tuple[str, Square], List[Tuple[str, int]]] = {}
    for side, i in nodes:
        info = sides[side][i]
        if info.is_open:
            by_endpoint.setdefault(("b", info.s_b), []).append((side, i))
            by_endpoint.setdefault(("f", info.s_f), []).append((side, i))
    for members in by_endpoint.values():
        for other in members[1:]:
            uf.union(members[0], other)
    result: List[ExtendedCyclePair] = []
    source = pair.key()
    for group in uf.groups():
        left = sorted((sides["L"][i] for side, i in group if side == "L"), key=_order)
        right = sorted((sides["R"][i] for side, i in group if side == "R"), key=_order)
        if any(info.is_open for info in left + right):
            _check_chain(left, right)
        result.append(ExtendedCyclePair(tuple(left), tuple(right), source))
    return result


def _order(info: CycleInfo) -> int:
    return min(info.labels)


def move_through_pair(pair: TableauPair, extended: ExtendedCyclePair) -> TableauPair:
    """MT((S, T), b) = (MT(S, d~), MT(T, c~)).

    Raises:
        StaleCycleError: if the extended pair was computed from a different pair.
    """
    if extended.source != pair.key():
        raise StaleCycleError("extended cycle pair was not computed from this pair")
    left = move_through(pair.left, extended.in_left)
    right = move_through(pair.right, extended.in_right)
    return TableauPair(left, right)


def _promote(tableau: DominoTableau, rank: int) -> DominoTableau:
    core = core_shape(rank)
    occupied = {s for domino in tableau.dominos.values() for s in domino}
    clash = core & occupied
    if clash:
        raise ExtendedCycleError(
            f"diagonal squares {sorted(map(str, clash))} still covered after moving"
        )
    return DominoTableau(rank, tableau.dominos)


def mmt(pair: TableauPair) -> TableauPair:
    """MMT(S, T): move through every extended cycle meeting the diagonal, then raise the rank.

    Raises:
        ShapeMismatchError: if S and T differ in rank or shape.
        ExtendedCycleError: if the diagonal is not cleared on both sides.
    """
    extended = [b for b in extended_cycle_pairs(pair) if b.meets_core]
    left = move_through(pair.left, [c for b in extended for c in b.in_left])
    right = move_through(pair.right, [c for b in extended for c in b.in_right])
    rank = pair.rank + 1
    return TableauPair(_promote(left, rank), _promote(right, rank))
