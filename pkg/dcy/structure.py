"""Cycle-structure combinatorics: the non-core cycle poset, labeled forests, cs(T) and Gamma."""

import itertools
from dataclasses import dataclass, field
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
)

from .core_model import Shape, Square, between, core_shape
from .cycles import (
    CycleInfo,
    all_cycles,
    core_cycles,
    move_through,
    noncore_cycles,
    open_cycles,
)
from .errors import (
    GammaInconsistencyError,
    NoCoreCycleError,
    SkeletonMismatchError,
    TableauFormatError,
)
from .tableau import Domino, DominoTableau, is_fixed, is_horizontal, make_domino, validate

Path = Tuple[int, ...]


@dataclass(frozen=True)
class LabeledTree:
    """An embedded rooted tree with {0,1} vertex labels.

    Vertices are addressed by their path of child indices from the root.
    ``vertex`` optionally records the cycle a vertex stands for; it does not
    take part in comparisons.
    """

    label: int
    children: Tuple["LabeledTree", ...] = ()
    vertex: Optional[FrozenSet[int]] = field(default=None, compare=False)

    def skeleton(self) -> tuple:
        return tuple(child.skeleton() for child in self.children)

    def positions(self) -> List[Path]:
        """Vertex paths in preorder."""
        found: List[Path] = [()]
        for i, child in enumerate(self.children):
            found.extend((i,) + p for p in child.positions())
        return found

    def at(self, path: Path) -> "LabeledTree":
        node = self
        for i in path:
            node = node.children[i]
        return node

    def labels(self) -> Dict[Path, int]:
        return {p: self.at(p).label for p in self.positions()}

    def relabel(self, labels: Dict[Path, int], prefix: Path = ()) -> "LabeledTree":
        return LabeledTree(
            labels.get(prefix, self.label),
            tuple(c.relabel(labels, prefix + (i,)) for i, c in enumerate(self.children)),
            self.vertex,
        )

    def height(self) -> int:
        return max((len(p) for p in self.positions()), default=0)

    def to_json(self) -> list:
        return [self.label, [child.to_json() for child in self.children]]

    @classmethod
    def from_json(cls, data: Sequence) -> "LabeledTree":
        label, children = data
        return cls(int(label), tuple(cls.from_json(c) for c in children))

    def __str__(self) -> str:
        if not self.children:
            return str(self.label)
        return f"{self.label}(" + ",".join(str(c) for c in self.children) + ")"


@dataclass(frozen=True)
class CycleForest:
    """The ordered forest tau(T); tree roots are the maximal cycles mu(T)."""

    trees: Tuple[LabeledTree, ...] = ()

    def skeleton(self) -> tuple:
        return tuple(t.skeleton() for t in self.trees)

    @property
    def roots(self) -> List[Optional[FrozenSet[int]]]:
        return [t.vertex for t in self.trees]

    def size(self) -> int:
        return sum(len(t.positions()) for t in self.trees)

    def to_json(self) -> list:
        return [t.to_json() for t in self.trees]

    def __str__(self) -> str:
        return " ".join(str(t) for t in self.trees) or "(empty)"


@dataclass(frozen=True)
class CycleStructureSet:
    """cs(T): the (S_b, S_f) endpoint pairs of all open cycles."""

    pairs: FrozenSet[Tuple[Square, Square]] = frozenset()

    def __iter__(self) -> Iterator[Tuple[Square, Square]]:
        return iter(sorted(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def to_json(self) -> list:
        return [[list(b), list(f)] for b, f in self]


def is_above(c: CycleInfo, d: CycleInfo) -> bool:
    """c >= d in the poset: S_f(d) lies between S_b(c) and S_f(c)."""
    return between(d.s_f, c.s_b, c.s_f)


def noncore_poset(tableau: DominoTableau) -> Dict[FrozenSet[int], FrozenSet[FrozenSet[int]]]:
    """Map each non-core open cycle to the set of cycles it dominates (itself included)."""
    infos = noncore_cycles(tableau)
    return {
        c.labels: frozenset(d.labels for d in infos if is_above(c, d)) for c in infos
    }


def maximal_cycles(tableau: DominoTableau) -> List[CycleInfo]:
    """mu(T), ordered by the row of S_b."""
    infos = noncore_cycles(tableau)
    roots = [
        c for c in infos if not any(d is not c and is_above(d, c) for d in infos)
    ]
    return sorted(roots, key=_start_position)


def _start_position(info: CycleInfo) -> Square:
    return info.s_b


def forest(tableau: DominoTableau) -> CycleForest:
    """tau(T): Hasse trees of the non-core poset, labeled 1 for down and 0 for up."""
    infos = noncore_cycles(tableau)
    ancestors = {
        c.labels: [d for d in infos if d is not c and is_above(d, c)] for c in infos
    }
    children: Dict[Optional[FrozenSet[int]], List[CycleInfo]] = {}
    for c in infos:
        above = ancestors[c.labels]
        parent = max(above, key=lambda d: len(ancestors[d.labels])).labels if above else None
        children.setdefault(parent, []).append(c)

    def build(info: CycleInfo) -> LabeledTree:
        kids = sorted(children.get(info.labels, []), key=_start_position)
        return LabeledTree(info.tau_label, tuple(build(k) for k in kids), info.labels)

    roots = sorted(children.get(None, []), key=_start_position)
    return CycleForest(tuple(build(r) for r in roots))


def cycle_structure_set(tableau: DominoTableau) -> CycleStructureSet:
    return CycleStructureSet(frozenset((c.s_b, c.s_f) for c in open_cycles(tableau)))


def tableau_from_labels(tableau: DominoTableau, target: CycleForest) -> DominoTableau:
    """Move through exactly the cycles whose forest label differs from target.

    Raises:
        SkeletonMismatchError: if target is not a relabeling of forest(T).
    """
    current = forest(tableau)
    if current.skeleton() != target.skeleton():
        raise SkeletonMismatchError(
            f"forest {target} does not have the shape of {current}"
        )
    flips = []
    for here, there in zip(current.trees, target.trees):
        for path in here.positions():
            if here.at(path).label != there.at(path).label:
                flips.append(here.at(path).vertex)
    return move_through(tableau, flips)


def adjacent_core_cycle(cycle: CycleInfo, tableau: DominoTableau) -> CycleInfo:
    """A core cycle d with no other core cycle whose S_f lies between S_f(d) and S_f(c).

    Ties go to the candidate whose S_f has the smallest row.

    Raises:
        NoCoreCycleError: if T has no open cycle through its diagonal.
    """
    cores = core_cycles(tableau)
    if not cores:
        raise NoCoreCycleError("the tableau has no core cycles")
    admissible = [
        d
        for d in cores
        if not any(e is not d and between(e.s_f, d.s_f, cycle.s_f) for e in cores)
    ]
    return min(admissible or cores, key=lambda d: d.s_f)


def is_hook_shaped(tableau: DominoTableau, cycle: CycleInfo) -> bool:
    """True when the cycle's dominos lie in the union of one row and one column."""
    squares = {s for k in cycle.labels for s in tableau.domino(k)}
    for row in {s.row for s in squares}:
        if len({s.col for s in squares if s.row != row}) <= 1:
            return True
    return len({s.col for s in squares}) == 1


# -- Gamma ----------------------------------------------------------------------


@dataclass(frozen=True)
class Hook:
    """A hook-shaped run of dominos realising one endpoint pair."""

    dominos: Tuple[Domino, ...]
    corner: Square
    core: bool

    @property
    def squares(self) -> FrozenSet[Square]:
        return frozenset(s for d in self.dominos for s in d)


def _walk(start: Square, end: Square) -> List[Square]:
    """Squares from start to end along a row or a column, both inclusive."""
    if start.row == end.row:
        step = 1 if end.col >= start.col else -1
        return [Square(start.row, c) for c in range(start.col, end.col + step, step)]
    step = 1 if end.row >= start.row else -1
    return [Square(r, start.col) for r in range(start.row, end.row + step, step)]


def _hook_path(s_b: Square, s_f: Square, corner: Square) -> Optional[List[Square]]:
    path = _walk(s_b, corner) + _walk(corner, s_f)[1:]
    if path[-1] != s_f or s_f in path[:-1]:
        return None
    path = path[:-1]
    if len(path) != len(set(path)) or len(path) % 2:
        return None
    return path


def _hook_candidates(
    s_b: Square, s_f: Square, allowed: FrozenSet[Square], core: bool
) -> List[Hook]:
    found: List[Hook] = []
    seen: Set[Tuple[Square, ...]] = set()
    for corner in (Square(s_f.row, s_b.col), Square(s_b.row, s_f.col)):
        path = _hook_path(s_b, s_f, corner)
        if not path or not set(path) <= allowed or tuple(path) in seen:
            continue
        seen.add(tuple(path))
        dominos = tuple(make_domino(path[i : i + 2]) for i in range(0, len(path), 2))
        found.append(Hook(dominos, corner, core))
    return found


def _fill_blocks(free: Set[Square]) -> Optional[List[Domino]]:
    """Tile free squares by 2x2 blocks, each a pair of vertical dominos."""
    free = set(free)
    dominos: List[Domino] = []
    while free:
        s = min(free)
        block = {s, s.right, s.below, s.below.right}
        if not block <= free:
            return None
        dominos.append((s, s.below))
        dominos.append((s.right, s.below.right))
        free -= block
    return dominos


def _top(domino: Domino) -> Square:
    return min(domino)


def insertion_tree_numbering(
    dominos: Iterable[Domino],
    inner: Iterable[Square] = (),
    rank: int = 0,
    hooks: Sequence[Hook] = (),
    start: int = 1,
) -> Dict[int, Domino]:
    """Number a domino tiling of a skew diagram by postfix traversal of insertion trees.

    Each tree is rooted at the domino holding the rightmost free square of the
    topmost row that still has free squares. The children of a domino f are the
    unnumbered dominos touching f from the left, together with the domino
    holding (i+1, j-1) when f is a horizontal domino at the corner (i, j) of a
    non-core hook, or a vertical hook domino whose lower square (i, j) is fixed.
    Children are visited top-most first. The process repeats on what is left,
    continuing the numbering.

    Raises:
        TableauFormatError: if the dominos overlap each other or the inner shape.
    """
    tiles = [make_domino(d) for d in dominos]
    inner = set(inner)
    owner: Dict[Square, Domino] = {}
    for d in tiles:
        for s in d:
            if s in owner or s in inner:
                raise TableauFormatError(f"square {s} is covered twice")
            owner[s] = d
    hook_of: Dict[Domino, Hook] = {d: h for h in hooks for d in h.dominos}

    def extra_child(f: Domino) -> Optional[Domino]:
        hook = hook_of.get(f)
        if hook is None:
            return None
        if is_horizontal(f):
            if hook.core or hook.corner not in f:
                return None
            i, j = hook.corner
        else:
            i, j = f[1]
            if not is_fixed(f[1], rank):
                return None
        return owner.get(Square(i + 1, j - 1))

    numbered: Dict[Domino, int] = {}
    visited: Set[Domino] = set()
    counter = start

    def visit(f: Domino) -> None:
        nonlocal counter
        visited.add(f)
        kids = {owner[Square(s.row, s.col - 1)] for s in f if Square(s.row, s.col - 1) in owner}
        tilde = extra_child(f)
        if tilde is not None:
            kids.add(tilde)
        for kid in sorted(kids - {f}, key=_top):
            if kid not in visited:
                visit(kid)
        numbered[f] = counter
        counter += 1

    while len(numbered) < len(tiles):
        free = [s for s in owner if owner[s] not in numbered]
        top_row = min(s.row for s in free)
        root = owner[max(s for s in free if s.row == top_row)]
        visit(root)
    return {label: d for d, label in numbered.items()}


def _realises(tableau: DominoTableau, cs: CycleStructureSet) -> bool:
    if not validate(tableau):
        return False
    if cycle_structure_set(tableau) != cs:
        return False
    return all(is_hook_shaped(tableau, c) for c in all_cycles(tableau) if c.is_open)


def gamma(shape: Shape, rank: int, cs: CycleStructureSet) -> DominoTableau:
    """Gamma: a tableau of the given shape whose open cycles are hooks realising cs.

    Each endpoint pair gets a hook through the corner in the row of S_f and the
    column of S_b, or failing that the opposite corner. The rest of the shape is
    tiled by 2x2 blocks and the whole tiling is numbered by insertion trees.
    Every candidate is checked before it is returned.

    Raises:
        GammaInconsistencyError: if no choice of hooks yields a valid result.
    """
    core = core_shape(rank)
    allowed = frozenset(shape.squares()) - core
    if not core <= set(shape.squares()):
        raise GammaInconsistencyError(f"shape {shape} does not contain the rank-{rank} core")
    pairs = sorted(cs, key=lambda p: p[0])
    options = []
    for s_b, s_f in pairs:
        on_diagonal = s_b.row + s_b.col == rank + 2
        hooks = _hook_candidates(s_b, s_f, allowed, on_diagonal)
        if not hooks:
            raise GammaInconsistencyError(f"no hook joins {s_b} to {s_f} inside {shape}")
        options.append(hooks)
    for choice in itertools.product(*options):
        used: Set[Square] = set()
        clash = False
        for hook in choice:
            if used & hook.squares:
                clash = True
                break
            used |= hook.squares
        if clash:
            continue
        filler = _fill_blocks(set(allowed) - used)
        if filler is None:
            continue
        tiles = [d for hook in choice for d in hook.dominos] + filler
        numbered = insertion_tree_numbering(tiles, core, rank, choice)
        candidate = DominoTableau(rank, numbered)
        if _realises(candidate, cs):
            return candidate
    raise GammaInconsistencyError(
        f"no hook tiling of {shape} at rank {rank} realises {len(cs)} endpoint pairs"
    )
