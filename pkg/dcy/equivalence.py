"""The relations ~r and <~>r, tree relabeling sequences, witness chains and the exhaustive verifier."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from .core_model import SignedPermutation, enumerate_group
from .cycles import (
    CycleInfo,
    CycleKind,
    cycle_info,
    mmt,
    move_through,
    noncore_cycles,
)
from .errors import (
    DcyError,
    NotEquivalentError,
    ResourceBoundError,
    SkeletonMismatchError,
    WitnessVerificationError,
)
from .insertion import TableauPair, rs
from .structure import (
    CycleForest,
    CycleStructureSet,
    LabeledTree,
    Path,
    adjacent_core_cycle,
    cycle_structure_set,
    forest,
    gamma,
    tableau_from_labels,
)
from .tableau import DominoTableau, to_json
from .utils.unionfind import UnionFind

DEFAULT_BOUND = 6

Partition = List[List[SignedPermutation]]


# -- ~r ---------------------------------------------------------------------------


def sim_key(tableau: DominoTableau) -> tuple:
    """Key of the all-up member of the ~r class of T."""
    down = [c for c in noncore_cycles(tableau) if c.kind is CycleKind.DOWN]
    return move_through(tableau, down).key()


def sim_witness(target: DominoTableau, source: DominoTableau) -> Optional[List[CycleInfo]]:
    """Return U with target = MT(source, U), U a set of non-core open cycles, or None.

    Moving through open cycles changes the shape, so only the rank, the size and
    the forest skeleton have to agree before the labels are compared.
    """
    if target.rank != source.rank or target.n != source.n:
        return None
    here, there = forest(source), forest(target)
    if here.skeleton() != there.skeleton():
        return None
    flips = []
    for a, b in zip(here.trees, there.trees):
        for path in a.positions():
            if a.at(path).label != b.at(path).label:
                flips.append(cycle_info(a.at(path).vertex, source))
    if move_through(source, flips) != target:
        return None
    return flips


def sim_tableaux(target: DominoTableau, source: DominoTableau) -> bool:
    return sim_witness(target, source) is not None


def sim_elements(w: SignedPermutation, y: SignedPermutation, rank: int) -> bool:
    if w.n != y.n:
        return False
    return sim_tableaux(rs(w, rank).right, rs(y, rank).right)


# -- partitions of H_n ----------------------------------------------------------


@dataclass(frozen=True)
class ElementKeys:
    word: SignedPermutation
    sim: tuple
    right: tuple
    right_next: tuple
    shape: Tuple[int, ...]
    noncore: int


def element_keys(w: SignedPermutation, rank: int) -> ElementKeys:
    right = rs(w, rank).right
    return ElementKeys(
        word=w,
        sim=sim_key(right),
        right=right.key(),
        right_next=rs(w, rank + 1).right.key(),
        shape=right.shape.rows,
        noncore=len(noncore_cycles(right)),
    )


def _keys_for_chunk(args: Tuple[List[Tuple[int, ...]], int]) -> List[ElementKeys]:
    words, rank = args
    return [element_keys(SignedPermutation(word), rank) for word in words]


def collect_keys(
    n: int,
    rank: int,
    workers: int = 1,
    on_progress: Optional[Callable[[int], None]] = None,
) -> List[ElementKeys]:
    """Keys for every element of H_n in enumeration order, optionally across processes."""
    words = [w.word for w in enumerate_group(n)]
    chunk = max(1, len(words) // (max(workers, 1) * 8) or 1)
    chunks = [(words[i : i + chunk], rank) for i in range(0, len(words), chunk)]
    results: List[ElementKeys] = []
    if workers <= 1:
        for part in chunks:
            results.extend(_keys_for_chunk(part))
            if on_progress:
                on_progress(len(part[0]))
        return results
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part, keys in zip(chunks, pool.map(_keys_for_chunk, chunks)):
            results.extend(keys)
            if on_progress:
                on_progress(len(part[0]))
    return results


def _group(keys: Sequence[ElementKeys], key: Callable[[ElementKeys], object]) -> Partition:
    classes: Dict[object, List[SignedPermutation]] = {}
    for k in keys:
        classes.setdefault(key(k), []).append(k.word)
    return list(classes.values())


def sim_partition(n: int, rank: int, keys: Optional[Sequence[ElementKeys]] = None) -> Partition:
    """Classes of ~r on H_n, in order of first member."""
    keys = keys if keys is not None else collect_keys(n, rank)
    return _group(keys, lambda k: k.sim)


def squig_partition(n: int, rank: int, keys: Optional[Sequence[ElementKeys]] = None) -> Partition:
    """Classes of <~>r: the closure of equal right tableaux at rank r or at rank r + 1."""
    keys = keys if keys is not None else collect_keys(n, rank)
    uf = UnionFind()
    for k in keys:
        uf.add(("r", k.right))
        uf.add(("r+1", k.right_next))
        uf.union(("r", k.right), ("r+1", k.right_next))
    return _group(keys, lambda k: uf.find(("r", k.right)))


def same_partition(a: Partition, b: Partition) -> bool:
    return {frozenset(c) for c in a} == {frozenset(c) for c in b}


# -- tree relabeling --------------------------------------------------------------


def _alternating(tree: LabeledTree, epsilon: int) -> Dict[Path, int]:
    return {p: epsilon if len(p) % 2 == 0 else 1 - epsilon for p in tree.positions()}


def _sweep(tree: LabeledTree, target: Dict[Path, int]) -> List[LabeledTree]:
    """Single-label steps from tree to the alternating labelling, deepest vertices first."""
    labels = tree.labels()
    steps = [tree]
    for depth in range(tree.height(), -1, -1):
        for vertex in (p for p in tree.positions() if len(p) == depth):
            for end in range(len(vertex) + 1):
                p = vertex[:end]
                if labels[p] != target[p]:
                    labels[p] = target[p]
                    steps.append(tree.relabel(labels))
    return steps


def tree_step_sequence(
    start: LabeledTree, end: LabeledTree, epsilon: int
) -> List[LabeledTree]:
    """Relabel start into end one vertex at a time, passing through the alternating tree.

    Raises:
        SkeletonMismatchError: if the trees differ as unlabeled trees.
    """
    if start.skeleton() != end.skeleton():
        raise SkeletonMismatchError(f"trees {start} and {end} have different shapes")
    if start == end:
        return [start]
    target = _alternating(start, epsilon)
    forward = _sweep(start, target)
    backward = _sweep(end, target)
    sequence: List[LabeledTree] = []
    for tree in forward + backward[::-1][1:]:
        if not sequence or sequence[-1] != tree:
            sequence.append(tree)
    return sequence


def is_tree_step(a: LabeledTree, b: LabeledTree, epsilon: int) -> bool:
    """a and b differ at one vertex v and the path above v alternates from epsilon at the root."""
    if a.skeleton() != b.skeleton():
        return False
    diff = [p for p in a.positions() if a.at(p).label != b.at(p).label]
    if len(diff) != 1:
        return False
    vertex = diff[0]
    expected = _alternating(a, epsilon)
    return all(a.at(vertex[:k]).label == expected[vertex[:k]] for k in range(len(vertex)))


# -- witness chains ---------------------------------------------------------------


def _endpoints(labels: FrozenSet[int], tableau: DominoTableau) -> CycleInfo:
    try:
        return cycle_info(labels, tableau)
    except DcyError as e:
        raise WitnessVerificationError(f"cycle {sorted(labels)} lost along the chain: {e}")


def cycle_structure_step(
    tableau: DominoTableau, chain: Sequence[FrozenSet[int]], k: int
) -> CycleStructureSet:
    """D_k(X) for the chain c_0 = d, c_1, ..., c_l of cycles identified by labels.

    Pairs of c_0..c_k are dropped from cs(X) and replaced by the shifted
    endpoint pairs linking consecutive cycles of the chain.
    """
    full = cycle_structure_set(tableau)
    if k == 0:
        return full
    infos = [_endpoints(labels, tableau) for labels in chain[: k + 1]]
    b = [c.s_b for c in infos]
    f = [c.s_f for c in infos]
    pairs = set(full.pairs) - {(c.s_b, c.s_f) for c in infos}
    pairs.add((b[0], f[1]))
    for j in range(1, k // 2 + 1):
        pairs.add((b[2 * j], f[2 * j - 2]))
    for j in range(1, (k + 1) // 2):
        pairs.add((b[2 * j - 1], f[2 * j + 1]))
    if k % 2:
        pairs.add((b[k], f[k - 1]))
    else:
        pairs.add((b[k - 1], f[k]))
    return CycleStructureSet(frozenset(pairs))


@dataclass(frozen=True)
class WitnessStep:
    """One certified <~>' step: mmt(left, before) and mmt(left_next, after) share a right tableau."""

    before: DominoTableau
    after: DominoTableau
    left: DominoTableau
    left_next: DominoTableau
    merged: DominoTableau
    changed: FrozenSet[int]
    alternating: bool

    def to_json(self) -> dict:
        return {
            "changed_cycle": sorted(self.changed),
            "case": "alternating" if self.alternating else "repeated",
            "before": to_json(self.before),
            "after": to_json(self.after),
            "left": to_json(self.left),
            "left_next": to_json(self.left_next),
            "mmt_right": to_json(self.merged),
        }


@dataclass(frozen=True)
class WitnessChain:
    tableaux: Tuple[DominoTableau, ...]
    steps: Tuple[WitnessStep, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.tableaux)

    def to_json(self) -> dict:
        return {
            "tableaux": [to_json(t) for t in self.tableaux],
            "steps": [s.to_json() for s in self.steps],
        }


def _alternates_from(labels: Sequence[int], epsilon: int) -> bool:
    return all(label == (epsilon + depth) % 2 for depth, label in enumerate(labels))


def _witness_pair(
    x: DominoTableau, y: DominoTableau, chain: Sequence[FrozenSet[int]]
) -> Tuple[DominoTableau, DominoTableau, DominoTableau]:
    """Gamma-built left tableaux for x (D_l) and y (D_{l-1}) and their common mmt right tableau."""
    length = len(chain) - 1
    try:
        left_x = gamma(x.shape, x.rank, cycle_structure_step(x, chain, length))
        left_y = gamma(y.shape, y.rank, cycle_structure_step(y, chain, length - 1))
        merged = mmt(TableauPair(left_x, x)).right
        other = mmt(TableauPair(left_y, y)).right
    except WitnessVerificationError:
        raise
    except DcyError as e:
        raise WitnessVerificationError(f"witness construction failed: {e}")
    if merged != other:
        raise WitnessVerificationError(
            f"mmt right tableaux differ for the step moving cycle {sorted(chain[-1])}"
        )
    return left_x, left_y, merged


def _certify(
    before: DominoTableau,
    after: DominoTableau,
    chain: Sequence[FrozenSet[int]],
    before_path: Sequence[int],
    epsilon: int,
) -> WitnessStep:
    """Certify before <~>' after.

    The side whose path from the root to the changed vertex alternates from
    epsilon takes D_l, the other D_{l-1}. If that assignment does not close
    up, the opposite one is tried.
    """
    alternating = _alternates_from(before_path, epsilon)
    error: Optional[WitnessVerificationError] = None
    for before_first in (alternating, not alternating):
        try:
            if before_first:
                left, left_next, merged = _witness_pair(before, after, chain)
            else:
                left_next, left, merged = _witness_pair(after, before, chain)
        except WitnessVerificationError as e:
            error = error or e
            continue
        return WitnessStep(before, after, left, left_next, merged, chain[-1], before_first)
    raise error


def witness_chain(start: DominoTableau, end: DominoTableau) -> WitnessChain:
    """Certify start <~>r end by a chain of single-cycle relabelings.

    Trees of tau are handled one at a time. For each, the adjacent core cycle d
    of the root fixes epsilon (1 when S_f(d) is above S_f of the root), the
    labels are walked by tree_step_sequence, and every step is checked through
    mmt with Gamma-built left tableaux.

    Raises:
        NotEquivalentError: if end is not MT(start, U) for non-core open cycles U.
        WitnessVerificationError: if a constructed step fails its mmt check.
    """
    if sim_witness(end, start) is None:
        raise NotEquivalentError("the tableaux are not related by non-core cycles")
    target = forest(end)
    current = start
    tableaux = [start]
    steps: List[WitnessStep] = []
    for index, goal in enumerate(target.trees):
        here = forest(current)
        tree = here.trees[index]
        if tree == goal:
            continue
        root = _endpoints(tree.vertex, current)
        d = adjacent_core_cycle(root, current)
        epsilon = 1 if d.s_f.row < root.s_f.row else 0
        for nxt in tree_step_sequence(tree, goal, epsilon)[1:]:
            here = forest(current)
            tree = here.trees[index]
            (vertex,) = [p for p in tree.positions() if tree.at(p).label != nxt.at(p).label]
            chain = [d.labels] + [tree.at(vertex[:k]).vertex for k in range(len(vertex) + 1)]
            path_labels = [tree.at(vertex[:k]).label for k in range(len(vertex) + 1)]
            trees = list(here.trees)
            trees[index] = nxt
            after = tableau_from_labels(current, CycleForest(tuple(trees)))
            steps.append(_certify(current, after, chain, path_labels, epsilon))
            tableaux.append(after)
            current = after
    if current != end:
        raise WitnessVerificationError("relabeling did not arrive at the target tableau")
    return WitnessChain(tuple(tableaux), tuple(steps))


# -- the verifier -----------------------------------------------------------------


@dataclass(frozen=True)
class ClassStatistics:
    size: int
    shape: Tuple[int, ...]
    noncore_cycles: int
    fibers: int
    involutions: int = 0

    @property
    def involution_count_matches(self) -> bool:
        """A class with c non-core open cycles holds 2^c involutions."""
        return self.involutions == 2 ** self.noncore_cycles

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "shape": list(self.shape),
            "noncore_cycles": self.noncore_cycles,
            "right_tableaux": self.fibers,
            "involutions": self.involutions,
        }


@dataclass
class EquivalenceReport:
    n: int
    rank: int
    classes_sim: Partition
    classes_squig: Partition
    equal: bool
    statistics: List[ClassStatistics] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rank": self.rank,
            "equal": self.equal,
            "sim_classes": len(self.classes_sim),
            "squig_classes": len(self.classes_squig),
            "classes": [
                {"members": [str(w) for w in members], **stats.to_json()}
                for members, stats in zip(self.classes_sim, self.statistics)
            ],
        }


def class_statistics(keys: Sequence[ElementKeys], classes: Partition) -> List[ClassStatistics]:
    by_word = {k.word: k for k in keys}
    stats = []
    for members in classes:
        first = by_word[members[0]]
        stats.append(
            ClassStatistics(
                size=len(members),
                shape=first.shape,
                noncore_cycles=first.noncore,
                fibers=len({by_word[w].right for w in members}),
                involutions=sum(1 for w in members if w.is_involution()),
            )
        )
    return stats


def involution_class_sizes(n: int, rank: int) -> List[Tuple[int, int]]:
    """(class size, non-core cycle count) for every ~r class of involutions in H_n."""
    keys = [element_keys(w, rank) for w in enumerate_group(n) if w.is_involution()]
    return [(s.size, s.noncore_cycles) for s in class_statistics(keys, _group(keys, lambda k: k.sim))]


def verify_theorem(
    n: int,
    rank: int,
    workers: int = 1,
    bound: int = DEFAULT_BOUND,
    on_progress: Optional[Callable[[int], None]] = None,
) -> EquivalenceReport:
    """Compute both partitions of H_n and compare them.

    Raises:
        ResourceBoundError: if n exceeds the bound.
    """
    if n > bound:
        raise ResourceBoundError(f"n = {n} exceeds the verification bound {bound}")
    keys = collect_keys(n, rank, workers, on_progress)
    sim = sim_partition(n, rank, keys)
    squig = squig_partition(n, rank, keys)
    return EquivalenceReport(
        n=n,
        rank=rank,
        classes_sim=sim,
        classes_squig=squig,
        equal=same_partition(sim, squig),
        statistics=class_statistics(keys, sim),
    )
