import pytest
from hypothesis import given

from eqcol.bounds import degree_bound, initial_bounds, lower_bound, naive_heuristic
from eqcol.coloring import validate_equitable
from eqcol.graph import complete_graph, cycle_graph, empty_graph, star_graph
from eqcol.oracle import brute_force_chi_eq

from .conftest import graphs


def test_naive_edgeless():
    c = naive_heuristic(empty_graph(5), 1)
    assert c.k == 1 and c.class_sizes == (5,)


def test_naive_complete():
    c = naive_heuristic(complete_graph(4), 4)
    assert c.k == 4 and c.class_sizes == (1, 1, 1, 1)


def test_naive_star_k13():
    c = naive_heuristic(star_graph(3), 3)
    assert c.k == 3
    assert c.assigned == (1, 2, 3, 2)
    assert c.class_sizes == (1, 2, 1)
    assert brute_force_chi_eq(star_graph(3)).chi_eq == 3


def test_naive_climbs_past_infeasible_k():
    # K_{1,3} has no equitable 2-coloring, so start_k=2 must move on to 3
    assert naive_heuristic(star_graph(3), 2).k == 3


def test_naive_rejects_bad_start():
    with pytest.raises(ValueError):
        naive_heuristic(empty_graph(3), 0)
    with pytest.raises(ValueError):
        naive_heuristic(empty_graph(3), 4)


@given(graphs(max_n=10))
def test_naive_is_equitable_and_not_below_optimum(g):
    lb = lower_bound(g)
    c = naive_heuristic(g, lb)
    assert validate_equitable(g, c)
    assert c.k >= brute_force_chi_eq(g).chi_eq


def test_lower_bound_examples():
    assert lower_bound(complete_graph(4)) == 4
    assert lower_bound(star_graph(5)) == 4
    assert brute_force_chi_eq(star_graph(5)).chi_eq == 4
    assert lower_bound(cycle_graph(5)) == 2
    assert brute_force_chi_eq(cycle_graph(5)).chi_eq == 3


def test_degree_bound_star():
    # n=6, maxdeg 5: floor(6/k) <= 1 first at k=4
    assert degree_bound(star_graph(5)) == 4


@given(graphs(max_n=10))
def test_lower_bound_is_valid(g):
    lb = lower_bound(g)
    assert 1 <= lb <= brute_force_chi_eq(g).chi_eq


@given(graphs(max_n=10))
def test_initial_bounds_invariants(g):
    b = initial_bounds(g)
    assert 1 <= b.lb <= b.ub <= g.n
    assert b.incumbent.k == b.ub and validate_equitable(g, b.incumbent)
