import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import A, B_, C, D, E, F, example_state, states
from oracles import bfs_reach_pairs, max_intra_by_enumeration, undirected_pair_counts

from refactorsearch.graph import (
    Action,
    ActionError,
    ActionKind,
    DependencyClosure,
    Edge,
    EdgeKind,
    GraphError,
    ModulePartition,
    ProjectState,
    apply_action,
    classify_edge,
    count_inter_between,
    max_intra_edges,
    transitive_closure,
    validity_violations,
)


def test_classify_edge_examples(example):
    assert classify_edge(example, (C, D)) is EdgeKind.INTER
    assert classify_edge(example, (A, B_)) is EdgeKind.INTRA
    single = ProjectState.from_edges(ModulePartition((0, 0, 0), 1), [(0, 1), (2, 0)])
    assert all(classify_edge(single, e) is EdgeKind.INTRA for e in single.edges())


def test_classify_edge_out_of_range(example):
    with pytest.raises(GraphError):
        classify_edge(example, (0, 6))


def test_count_inter_between(example, example_back):
    # inter-edges of the fixture are (c,d) and (b,f)
    assert count_inter_between(example, 0, 1) == 2
    assert count_inter_between(example, 1, 0) == 2
    assert count_inter_between(example_back, 0, 1) == 3
    three = ProjectState.from_edges(ModulePartition((0, 1, 2), 3), [(0, 1)])
    assert count_inter_between(three, 0, 2) == 0
    with pytest.raises(GraphError):
        count_inter_between(example, 1, 1)


def test_max_intra_edges():
    two_by_three = ProjectState(ModulePartition((0, 0, 0, 1, 1, 1), 2), 0)
    assert max_intra_edges(two_by_three) == 12 == max_intra_by_enumeration((0, 0, 0, 1, 1, 1))
    singletons = ProjectState(ModulePartition(tuple(range(5)), 5), 0)
    assert max_intra_edges(singletons) == 0
    one_big = ProjectState(ModulePartition((0,) * 25, 1), 0)
    assert max_intra_edges(one_big) == 600


def test_transitive_closure_examples():
    p = ModulePartition((0, 0, 0, 0), 1)
    chain = ProjectState.from_edges(p, [(1, 2), (2, 3)])
    assert transitive_closure(chain).reaches(1, 3)
    assert len(transitive_closure(ProjectState(p, 0))) == 0
    cycle = ProjectState.from_edges(ModulePartition((0, 0), 1), [(0, 1), (1, 0)])
    closure = transitive_closure(cycle)
    assert not closure.reaches(0, 0)
    assert closure.reaches(0, 1) and closure.reaches(1, 0)
    assert set(closure.pairs()) == bfs_reach_pairs(2, {(0, 1), (1, 0)})


@settings(max_examples=200, deadline=None)
@given(states())
def test_closure_matches_bfs(state):
    assert set(transitive_closure(state).pairs()) == bfs_reach_pairs(state.n, set(state.edges()))


@settings(max_examples=200, deadline=None)
@given(states())
def test_closure_is_transitive_and_irreflexive(state):
    pairs = set(transitive_closure(state).pairs())
    assert all(x != y for x, y in pairs)
    for x, y in pairs:
        for y2, z in pairs:
            if y == y2 and x != z:
                assert (x, z) in pairs


@settings(max_examples=200, deadline=None)
@given(states())
def test_edge_partition_exhaustive(state):
    assert state.intra_count + state.inter_count == state.edge_count
    assert set(state.intra_edges()).isdisjoint(state.inter_edges())
    assert set(state.intra_edges()) | set(state.inter_edges()) == set(state.edges())


@settings(max_examples=200, deadline=None)
@given(states())
def test_pair_counts_match_oracle(state):
    expected = undirected_pair_counts(state.partition.module_of, state.edges())
    k = state.partition.module_count
    for a in range(k):
        for b in range(a + 1, k):
            assert count_inter_between(state, a, b) == expected.get(frozenset((a, b)), 0)
    assert state.coupling_excess == sum(c - 1 for c in expected.values() if c > 1)


@settings(max_examples=150, deadline=None)
@given(states(), states())
def test_validity_violations_matches_pairwise_oracle(original, other):
    if other.n != original.n:
        return
    state = ProjectState(original.partition, other.bits)
    want = bfs_reach_pairs(original.n, set(original.edges()))
    have = bfs_reach_pairs(state.n, set(state.edges()))
    count = validity_violations(transitive_closure(original), state)
    assert count == len(want - have)
    assert (count == 0) == want.issubset(have)


def test_validity_violations_examples(example_back):
    closure = transitive_closure(example_back)
    assert validity_violations(closure, example_back) == 0
    broken = example_back.without_edge((C, D)).without_edge((F, B_))
    assert validity_violations(closure, broken) == 17  # pairwise BFS oracle
    # both modules fully connected, one edge each way between them: nothing is lost
    p = example_back.partition
    clique = [(u, v) for g in p.members for u in g for v in g if u != v]
    full = ProjectState.from_edges(p, clique + [(C, D), (F, B_)], example_back.names)
    assert validity_violations(closure, full) == 0


def test_validity_violations_vertex_mismatch(example):
    with pytest.raises(GraphError):
        validity_violations(DependencyClosure(5, 0), example)


def test_apply_action_commutes(example):
    ac = Action(ActionKind.ADD_INTRA, Edge(A, C))
    de = Action(ActionKind.ADD_INTRA, Edge(D, F))
    one = apply_action(apply_action(example, ac), de)
    two = apply_action(apply_action(example, de), ac)
    assert one == two


def test_apply_action_inverse_and_errors(example):
    delete = Action(ActionKind.DELETE_INTER, Edge(C, D))
    after = apply_action(example, delete)
    assert after.with_edge((C, D)) == example
    assert example.has_edge((C, D))  # input untouched
    with pytest.raises(ActionError):
        apply_action(example, Action(ActionKind.ADD_INTRA, Edge(A, B_)))
    with pytest.raises(ActionError):
        apply_action(example, Action(ActionKind.ADD_INTRA, Edge(A, D)))
    with pytest.raises(ActionError):
        apply_action(example, Action(ActionKind.DELETE_INTER, Edge(A, B_)))
    with pytest.raises(ActionError):
        apply_action(after, delete)


@settings(max_examples=100, deadline=None)
@given(states(max_n=8), st.data())
def test_apply_action_commutativity_property(state, data):
    from refactorsearch.problem import RefactorProblem, full_actions

    actions = full_actions(RefactorProblem(state, 0), state)
    if len(actions) < 2:
        return
    a1, a2 = data.draw(st.lists(st.sampled_from(actions), min_size=2, max_size=2, unique=True))
    assert apply_action(apply_action(state, a1), a2) == apply_action(apply_action(state, a2), a1)


@settings(max_examples=100, deadline=None)
@given(states(max_n=8), st.data())
def test_incremental_counts_match_fresh(state, data):
    from refactorsearch.problem import RefactorProblem, full_actions

    state.coupling_excess, state.intra_count  # prime caches so the child inherits them
    actions = full_actions(RefactorProblem(state, 0), state)
    if not actions:
        return
    child = apply_action(state, data.draw(st.sampled_from(actions)))
    fresh = ProjectState(child.partition, child.bits, child.names)
    assert child.intra_count == fresh.intra_count
    assert child.coupling_excess == fresh.coupling_excess


def test_state_validation():
    p = ModulePartition((0, 1), 2)
    with pytest.raises(GraphError):
        ProjectState.from_edges(p, [(0, 0)])
    with pytest.raises(GraphError):
        ProjectState.from_edges(p, [(0, 2)])
    with pytest.raises(GraphError):
        ModulePartition((0, 3), 2)
    with pytest.raises(GraphError):
        ModulePartition.from_groups([[0, 1], [1]])


def test_partition_allows_empty_modules():
    p = ModulePartition((0, 0, 2), 3)
    assert p.members == ((0, 1), (), (2,))
    assert p.max_intra_edges == 2
