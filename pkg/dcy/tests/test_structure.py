"""Tests for cycle forests, cycle structure sets and the Gamma construction."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dcy.core_model import Shape, SignedPermutation, Square
from dcy.cycles import cycle_info, open_cycles
from dcy.errors import GammaInconsistencyError, SkeletonMismatchError
from dcy.insertion import rs
from dcy.structure import (
    CycleForest,
    CycleStructureSet,
    LabeledTree,
    adjacent_core_cycle,
    cycle_structure_set,
    forest,
    gamma,
    insertion_tree_numbering,
    is_hook_shaped,
    maximal_cycles,
    noncore_poset,
    tableau_from_labels,
)
from dcy.tableau import enumerate_tableaux, read_markup, validate

BIG = frozenset({9, 10, 11, 12, 14})


def test_forest_of_three_cycles(three_cycles):
    """The long up cycle dominates both single-domino cycles."""
    tau = forest(three_cycles)
    assert str(tau) == "0(1,0)"
    assert tau.roots == [BIG]
    assert tau.size() == 3
    assert [c.labels for c in maximal_cycles(three_cycles)] == [BIG]
    assert noncore_poset(three_cycles)[BIG] == {BIG, frozenset({17}), frozenset({18})}
    assert noncore_poset(three_cycles)[frozenset({17})] == {frozenset({17})}


def test_forest_labels_follow_direction(t_start, t_end):
    assert str(forest(t_start)) == "1(1)"
    assert str(forest(t_end)) == "0(0)"
    assert forest(t_start).skeleton() == forest(t_end).skeleton()


def test_labeled_tree_paths():
    tree = LabeledTree(1, (LabeledTree(0), LabeledTree(1, (LabeledTree(0),))))
    assert tree.positions() == [(), (0,), (1,), (1, 0)]
    assert tree.at((1, 0)).label == 0
    assert tree.height() == 2
    assert str(tree.relabel({(1,): 0})) == "1(0,0(0))"
    assert LabeledTree.from_json(tree.to_json()) == tree


def test_tableau_from_labels(t_start, t_middle, t_end):
    tree = forest(t_start).trees[0]
    target = CycleForest((tree.relabel({(0,): 0}),))
    assert tableau_from_labels(t_start, target) == t_middle
    assert tableau_from_labels(t_start, forest(t_end)) == t_end
    assert tableau_from_labels(t_start, forest(t_start)) == t_start


def test_tableau_from_labels_rejects_other_skeletons(t_start):
    with pytest.raises(SkeletonMismatchError):
        tableau_from_labels(t_start, CycleForest((LabeledTree(1),)))


def test_adjacent_core_cycle(t_start):
    root = cycle_info({5, 6, 7}, t_start)
    adjacent = adjacent_core_cycle(root, t_start)
    assert adjacent.labels == {3, 4}
    assert adjacent.s_f.row < root.s_f.row


def test_hook_shaped_cycles(three_cycles):
    assert is_hook_shaped(three_cycles, cycle_info(BIG, three_cycles))
    assert is_hook_shaped(three_cycles, cycle_info({17}, three_cycles))


def test_cycle_structure_set(t_start):
    cs = cycle_structure_set(t_start)
    assert len(cs) == len(open_cycles(t_start))
    info = cycle_info({3, 4}, t_start)
    assert (info.s_b, info.s_f) in cs
    assert cs.to_json()[0] == [list(p) for p in next(iter(cs))]


def test_insertion_tree_numbering(skew_diagram):
    dominos, singles = read_markup(skew_diagram)
    numbered = insertion_tree_numbering([d for _, d in dominos], singles)
    assert numbered == {
        1: (Square(1, 3), Square(1, 4)),
        2: (Square(2, 2), Square(2, 3)),
        3: (Square(3, 1), Square(3, 2)),
        4: (Square(4, 1), Square(4, 2)),
        5: (Square(3, 3), Square(4, 3)),
        6: (Square(2, 4), Square(3, 4)),
        7: (Square(1, 5), Square(2, 5)),
    }


def test_gamma_reproduces_hook_tableau(t_end):
    assert gamma(t_end.shape, 1, cycle_structure_set(t_end)) == t_end


def test_gamma_without_open_cycles_is_inconsistent():
    with pytest.raises(GammaInconsistencyError):
        gamma(Shape((2, 2)), 0, CycleStructureSet())


def test_gamma_rejects_missing_core():
    with pytest.raises(GammaInconsistencyError):
        gamma(Shape((2,)), 2, CycleStructureSet())


def _check_gamma(tableau):
    cs = cycle_structure_set(tableau)
    result = gamma(tableau.shape, tableau.rank, cs)
    assert validate(result)
    assert result.squares == tableau.squares
    assert cycle_structure_set(result) == cs
    assert all(is_hook_shaped(result, c) for c in open_cycles(result))


@pytest.mark.parametrize("n,rank", [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)])
def test_gamma_realises_every_tableau(n, rank):
    """Gamma answers for every standard tableau, with its shape and endpoints and hook cycles."""
    for tableau in enumerate_tableaux(n, rank):
        _check_gamma(tableau)


@given(
    st.permutations(list(range(1, 6))),
    st.lists(st.booleans(), min_size=5, max_size=5),
    st.integers(min_value=0, max_value=2),
)
@settings(max_examples=1000, deadline=None)
def test_gamma_on_random_right_tableaux(values, signs, rank):
    w = SignedPermutation(tuple(v if s else -v for v, s in zip(values, signs)))
    _check_gamma(rs(w, rank).right)
