import pytest
from hypothesis import given
from hypothesis import strategies as st

from eqcol.coloring import (
    EquitableColoring,
    PartialColoring,
    check_p1,
    check_p2,
    extend,
    initial_partial,
    p1_condition,
    p2_condition,
    validate_equitable,
)
from eqcol.graph import complete_bipartite, complete_graph, cycle_graph, empty_graph, greedy_maximal_clique, path_graph, star_graph

from .conftest import graphs


def recomputed_feasible(pc, u):
    """F(u) straight from the definition: colors 1..n not held by a neighbor."""
    used = {pc.color[w] for w in pc.graph.adjacency[u]}
    return frozenset(j for j in range(1, pc.n + 1) if j not in used)


def assert_consistent(pc):
    g = pc.graph
    sizes = [0] * (pc.n + 1)
    for c in pc.color:
        if c:
            sizes[c] += 1
    for j in range(1, pc.n + 1):
        assert (sizes[j] > 0) == (j <= pc.k)
        assert pc.size[j] == sizes[j]
    for u, v in g.edges():
        assert not (pc.color[u] and pc.color[u] == pc.color[v])
    unc = [v for v in range(pc.n) if not pc.color[v]]
    assert pc.uncolored_vertices == frozenset(unc)
    assert len(unc) + sum(sizes) == pc.n
    assert pc.M == max(sizes[1 : pc.k + 1], default=0)
    for u in unc:
        assert pc.feasible(u) == recomputed_feasible(pc, u)
        assert pc.saturation(u) == len({pc.color[w] for w in g.adjacency[u]} - {0})


# initial partial coloring


def test_initial_partial_path():
    pc = initial_partial(path_graph(3), {0, 1})
    assert pc.k == 2
    assert pc.color_class(1) == {0} and pc.color_class(2) == {1}
    assert pc.uncolored_vertices == {2}
    assert pc.feasible(2) == {1, 3}


def test_initial_partial_full_clique():
    pc = initial_partial(complete_graph(3), {0, 1, 2})
    assert pc.k == 3 and pc.is_complete()


def test_initial_partial_c5():
    pc = initial_partial(cycle_graph(5), {0, 1})
    assert 2 not in pc.feasible(2) and 1 in pc.feasible(2)
    assert 1 not in pc.feasible(4) and 2 in pc.feasible(4)
    assert {1, 2} <= pc.feasible(3)
    assert_consistent(pc)


def test_initial_partial_rejects_non_clique():
    with pytest.raises(ValueError):
        initial_partial(path_graph(3), {0, 2})


# extension


def test_extend_path_merges_into_class():
    pc = initial_partial(path_graph(3), {0, 1})
    child = extend(pc, 2, 1)
    assert child.k == 2 and child.color_class(1) == {0, 2} and child.is_complete()
    # value semantics: the parent is untouched
    assert pc.uncolored_vertices == {2}


def test_extend_c5_neighbor_update():
    pc = initial_partial(cycle_graph(5), {0, 1})
    child = extend(pc, 3, 1)
    assert child.feasible(2) == {3, 4, 5}
    # vertex 4 already lacked color 1 (neighbor 0), so it keeps color 2
    assert child.feasible(4) == {2, 3, 4, 5}
    assert_consistent(child)


def test_extend_new_class():
    pc = initial_partial(path_graph(3), {0, 1})
    before = {u: pc.feasible(u) for u in pc.uncolored_vertices}
    child = extend(pc, 2, 3)
    assert child.k == 3
    for u in child.uncolored_vertices:
        assert child.feasible(u) <= before[u]


def test_extend_errors():
    pc = initial_partial(path_graph(3), {0, 1})
    with pytest.raises(ValueError):
        extend(pc, 2, 2)  # neighbor 1 holds color 2
    with pytest.raises(ValueError):
        extend(pc, 0, 3)  # already colored
    with pytest.raises(ValueError):
        extend(pc, 2, 4)  # skips class 3


@st.composite
def extension_runs(draw):
    g = draw(graphs(min_n=2, max_n=9))
    pc = initial_partial(g, greedy_maximal_clique(g))
    steps = []
    while not pc.is_complete():
        u = draw(st.sampled_from(sorted(pc.uncolored_vertices)))
        j = draw(st.sampled_from(sorted(pc.feasible(u, pc.k + 1))))
        steps.append((u, j))
        pc = extend(pc, u, j)
        if draw(st.booleans()) and draw(st.booleans()):
            break
    return g, steps


@given(extension_runs())
def test_feasible_sets_stay_consistent(run):
    g, steps = run
    pc = initial_partial(g, greedy_maximal_clique(g))
    assert_consistent(pc)
    for u, j in steps:
        before = {v: pc.feasible(v) for v in pc.uncolored_vertices}
        pc.apply(u, j)
        assert_consistent(pc)
        for v in pc.uncolored_vertices:
            lost = before[v] - pc.feasible(v)
            assert pc.feasible(v) <= before[v]
            if v in g.adjacency[u]:
                assert lost <= {j}
            else:
                assert not lost


@given(extension_runs())
def test_rollback_restores_state(run):
    g, steps = run
    pc = initial_partial(g, greedy_maximal_clique(g))
    snapshots, records = [], []
    for u, j in steps:
        snapshots.append(pc.copy())
        records.append(pc.apply(u, j))
    for snap, rec in zip(reversed(snapshots), reversed(records)):
        pc.rollback(rec)
        for attr in ("k", "M", "color", "size", "forb", "sat", "level", "uncolored", "n_uncolored"):
            assert getattr(pc, attr) == getattr(snap, attr), attr


# P.1 / P.2


def test_p1_examples():
    # n=10, UB=4, sizes (3,1,1): threshold 3, deficit 4
    assert p1_condition(10, 5, (3, 1, 1), 4)
    assert not p1_condition(10, 3, (3, 1, 1), 4)
    # complete and balanced: passes with nothing left to place
    assert p1_condition(6, 0, (2, 2, 2), 4)


def test_p1_on_real_state():
    pc = PartialColoring(empty_graph(10))
    for v, j in [(0, 1), (1, 1), (2, 1), (3, 2), (4, 3)]:
        pc.apply(v, j)
    assert pc.class_sizes == (3, 1, 1) and pc.n_uncolored == 5
    assert check_p1(pc, 4)


def test_p1_lemma2_instance():
    g = empty_graph(6)
    pc = PartialColoring(g)
    for v in range(6):
        pc.apply(v, v % 3 + 1)
    assert check_p1(pc, 4)
    assert validate_equitable(g, pc.to_coloring())


def test_p1_needs_ub_above_one():
    with pytest.raises(ValueError):
        p1_condition(3, 0, (3,), 1)


def test_p2_examples():
    assert p2_condition(10, 3, 3, 4)
    assert not p2_condition(10, 3, 4, 4)
    assert p2_condition(10, 5, 2, 2)


@given(extension_runs(), st.integers(2, 12), st.integers(1, 12))
def test_predicates_are_pure(run, ub, lb):
    g, steps = run
    pc = initial_partial(g, greedy_maximal_clique(g))
    for u, j in steps:
        pc.apply(u, j)
    snapshot = pc.copy()
    first = (check_p1(pc, ub), check_p2(pc, lb))
    assert (check_p1(pc, ub), check_p2(pc, lb)) == first
    assert pc.color == snapshot.color and pc.forb == snapshot.forb


@given(graphs(min_n=1, max_n=9), st.data())
def test_lemma2_complete_p1_state_is_equitable(g, data):
    # color greedily at random; whenever P.1 held at the last step, the result is equitable
    pc = initial_partial(g, greedy_maximal_clique(g))
    ub = data.draw(st.integers(2, g.n + 1))
    last_ok = True
    while not pc.is_complete():
        u = data.draw(st.sampled_from(sorted(pc.uncolored_vertices)))
        j = data.draw(st.sampled_from(sorted(pc.feasible(u, pc.k + 1))))
        pc.apply(u, j)
        last_ok = pc.k < ub and check_p1(pc, ub)
    if last_ok and pc.k < ub:
        assert validate_equitable(g, pc.to_coloring())


# equity validation


def test_validate_bipartition():
    g = complete_bipartite(3, 3)
    c = EquitableColoring(2, (1, 1, 1, 2, 2, 2))
    assert validate_equitable(g, c) and c.class_sizes == (3, 3)


def test_validate_c5_three_colors():
    c = EquitableColoring(3, (1, 2, 1, 2, 3))
    assert validate_equitable(cycle_graph(5), c)
    assert c.class_sizes == (2, 2, 1)


def test_validate_star_unbalanced():
    assert not validate_equitable(star_graph(3), EquitableColoring(2, (1, 2, 2, 2)))


def test_validate_improper_and_empty_class():
    assert not validate_equitable(path_graph(2), EquitableColoring(1, (1, 1)))
    assert not validate_equitable(empty_graph(2), EquitableColoring(3, (1, 2)))


def test_validate_errors():
    with pytest.raises(ValueError):
        validate_equitable(empty_graph(2), EquitableColoring(2, (1, 3)))
    with pytest.raises(ValueError):
        validate_equitable(empty_graph(3), EquitableColoring(2, (1, 2)))


def test_coloring_output_format():
    c = EquitableColoring(2, (1, 2, 1))
    assert c.format() == "s 2\n1 1\n2 2\n3 1\n"
