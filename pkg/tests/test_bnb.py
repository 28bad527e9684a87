import random

import pytest
from hypothesis import given, settings, strategies as st

from budgetcut.bnb import (
    CUT, MAX, MIN, SHRUNKEN, InvariantError, Limits, SearchState, _best_group_choice,
    constrained_cut, is_tree, solve_by_blocks, solve_tree,
)
from budgetcut.graph import GraphError, WeightedGraph, validate_cut
from budgetcut.oracle import brute_force_cut

from _util import f4, glued, naive_optimum, random_connected, random_tree


def value(cut):
    return None if cut is None else cut.weight


def test_f4_min_and_max():
    r = constrained_cut(f4(), 5, MIN)
    assert (r.optimal.weight, r.optimal.cost, r.status) == (3, 2, "optimal")
    r = constrained_cut(f4(), 5, MAX)
    assert (r.optimal.weight, r.optimal.cost) == (9, 4)
    assert r.optimal.side_b == {3}


def test_f4_infeasible():
    for sense in (MIN, MAX):
        r = constrained_cut(f4(), 1, sense)
        assert r.optimal is None and r.status == "infeasible" and r.proven


def test_input_checks():
    with pytest.raises(ValueError):
        constrained_cut(f4(), 5, "most")
    with pytest.raises(ValueError):
        constrained_cut(f4(), -1)
    with pytest.raises(GraphError):
        constrained_cut(WeightedGraph([(1, 2, 1, 1), (3, 4, 1, 1)]), 5)
    with pytest.raises(GraphError):
        constrained_cut(f4(), 5, terminals=(1, 1))


def test_forward_backward_example():
    state = SearchState(f4(), 5)
    state.forward([(1, 2), (1, 3)])
    assert [p.state for p in state.path] == [CUT, CUT]
    assert (state.R, state.weight, state.cost) == (3, 3, 2)
    assert state.backward()
    assert [p.state for p in state.path] == [CUT, SHRUNKEN]
    assert state.R == 4
    assert state.graph.members[1] == {1, 3}
    assert state.ledger_ok()


def test_backward_on_empty_and_shrunken_only():
    state = SearchState(f4(), 5)
    assert not state.backward()
    state.forward([(1, 2)])
    assert state.backward()  # now only a shrunken entry
    assert not state.backward()
    assert state.graph.snapshot() == f4().snapshot()


def test_forward_refuses_overspending():
    state = SearchState(f4(), 2)
    before = state.graph.snapshot()
    with pytest.raises(InvariantError):
        state.forward([(2, 4)])
    assert state.graph.snapshot() == before


def test_random_replay_restores_graph():
    rng = random.Random(31)
    for _ in range(60):
        g = random_connected(rng, 3, 8)
        state = SearchState(g, 10 ** 6)
        start = state.graph.snapshot()
        for _ in range(rng.randint(1, 12)):
            live = list(state.graph.edges())
            if live and rng.random() < 0.6:
                u, v, _ = rng.choice(live)
                state.forward([(u, v)])
            elif not state.backward():
                break
            assert state.ledger_ok()
        while state.backward():
            assert state.ledger_ok()
        assert state.graph.snapshot() == start
        assert (state.R, state.weight, state.cost) == (state.rho, 0, 0)


def test_observer_sees_ledger_and_feasible_incumbents():
    rng = random.Random(32)
    for _ in range(40):
        g = random_connected(rng, 3, 8)
        rho = rng.randint(2, 25)
        for sense in (MIN, MAX):
            def check(state):
                assert state.ledger_ok()
            r = constrained_cut(g, rho, sense, observer=check)
            if r.optimal is not None:
                assert r.optimal.cost <= rho
                assert validate_cut(g, r.optimal.edges) is not None


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 40), st.sampled_from([MIN, MAX]))
def test_matches_oracle(seed, rho, sense):
    g = random_connected(random.Random(seed), 2, 8)
    assert value(constrained_cut(g, rho, sense).optimal) == value(brute_force_cut(g, rho, sense))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 40), st.sampled_from([MIN, MAX]))
def test_terminals_match_oracle(seed, rho, sense):
    rng = random.Random(seed)
    g = random_connected(rng, 3, 8)
    terms = tuple(rng.sample(sorted(g.original_vertices), 2))
    r = constrained_cut(g, rho, sense, terminals=terms)
    assert value(r.optimal) == naive_optimum(g, rho, sense, terms)
    if r.optimal is not None:
        assert r.optimal.separates(*terms)


def test_bounds_off_same_value():
    rng = random.Random(33)
    for _ in range(40):
        g = random_connected(rng, 3, 8)
        rho = rng.randint(0, 30)
        for sense in (MIN, MAX):
            on = constrained_cut(g, rho, sense)
            off = constrained_cut(g, rho, sense, use_bounds=False)
            assert value(on.optimal) == value(off.optimal)
            assert on.nodes_explored <= off.nodes_explored


def test_node_limit_reports_unproven():
    r = constrained_cut(f4(), 5, MAX, limits=Limits(max_nodes=3))
    assert not r.proven and r.status == "limit"
    assert r.optimal is None or r.optimal.cost <= 5


def test_time_limit_zero():
    r = constrained_cut(random_connected(random.Random(1), 8, 8), 20, MAX,
                        limits=Limits(max_seconds=0.0))
    assert not r.proven


def test_deterministic():
    g = random_connected(random.Random(34), 8, 8)
    a = constrained_cut(g, 15, MAX)
    b = constrained_cut(g, 15, MAX)
    assert a.optimal == b.optimal and a.nodes_explored == b.nodes_explored


def test_star_tree():
    star = WeightedGraph([(1, 2, 5, 1), (1, 3, 2, 3), (1, 4, 9, 2)])
    assert is_tree(star)
    assert solve_tree(star, 2, MIN).weight == 5
    assert solve_tree(star, 2, MAX).weight == 9
    assert solve_tree(star, 0, MIN) is None
    assert solve_tree(star, 3, MAX).weight == 14  # both affordable edges together


def test_solve_tree_rejects_cycles():
    with pytest.raises(GraphError):
        solve_tree(f4(), 5)


def test_solve_tree_matches_oracle():
    rng = random.Random(35)
    for _ in range(60):
        t = random_tree(rng, rng.randint(2, 9))
        rho = rng.randint(0, 30)
        for sense in (MIN, MAX):
            assert value(solve_tree(t, rho, sense)) == value(brute_force_cut(t, rho, sense))


def test_blocks_examples():
    bowtie = WeightedGraph([(1, 2, 1, 1), (2, 3, 2, 1), (1, 3, 3, 1),
                            (3, 4, 4, 2), (4, 5, 5, 2), (3, 5, 6, 2)])
    for sense in (MIN, MAX):
        for rho in range(0, 10):
            assert value(solve_by_blocks(bowtie, rho, sense)) == value(
                brute_force_cut(bowtie, rho, sense))
    t = random_tree(random.Random(2), 6)
    assert value(solve_by_blocks(t, 12, MAX)) == value(solve_tree(t, 12, MAX))
    assert value(solve_by_blocks(f4(), 5, MAX)) == 9


def test_blocks_match_whole_graph():
    rng = random.Random(36)
    for _ in range(40):
        g = glued(rng, rng.randint(3, 5), rng.randint(3, 5))
        rho = rng.randint(0, 30)
        for sense in (MIN, MAX):
            assert value(solve_by_blocks(g, rho, sense)) == value(
                constrained_cut(g, rho, sense).optimal)


def test_group_choice():
    groups = [[(2, 5, "a"), (1, 3, "b")], [(2, 4, "c")]]
    assert _best_group_choice(groups, 3) == ("b", "c")
    assert _best_group_choice(groups, 2) == ("a",)
    assert _best_group_choice(groups, 0) is None
