import pytest

from src.errors import OracleGuardError
from src.graph_model import Answer, RppInstance, is_rpp_circuit
from src.oracle import bruteforce, enumerate_closed_walks, hamiltonian_cycles
from tests.conftest import complete, cycle, star


def test_triangle_has_one_cycle():
    result = bruteforce(complete(3, budget=3))
    assert result.feasible
    assert result.min_cost == 3
    assert result.best_cycle == (1, 2, 3)
    assert result.answer is Answer.YES


def test_budget_below_min_cost_is_no():
    assert bruteforce(complete(3, budget=2)).answer is Answer.NO


def test_k4_with_two_required_edges():
    instance = complete(4, required=((1, 2), (3, 4)), budget=4)
    assert len(hamiltonian_cycles(instance)) == 3
    result = bruteforce(instance)
    assert result.min_cost == 4
    assert result.best_cycle == (1, 2, 3, 4)
    assert is_rpp_circuit(instance, result.best_cycle)


def test_star_has_no_circuit():
    result = bruteforce(star(5))
    assert not result.feasible
    assert result.min_cost is None and result.best_cycle is None
    assert result.answer is Answer.NO


def test_small_graphs_are_infeasible():
    assert not bruteforce(RppInstance.build(2, [(1, 2)], [(1, 2)], 5)).feasible


def test_min_cost_uses_lengths():
    instance = RppInstance.build(4, [(1, 2, 1), (2, 3, 1), (3, 4, 1), (1, 4, 1), (1, 3, 0), (2, 4, 0)], [(1, 2)], 10)
    assert bruteforce(instance).min_cost == 2


def test_guard():
    with pytest.raises(OracleGuardError):
        bruteforce(complete(13))
    with pytest.raises(OracleGuardError):
        enumerate_closed_walks(complete(4), 13, (1, 2))


def test_triangle_walks_both_directions():
    assert enumerate_closed_walks(complete(3), 3, (1, 2)) == [(1, 3, 2), (2, 3, 1)]


def test_no_walk_of_two_edges_closes_through_the_anchor():
    assert enumerate_closed_walks(complete(4), 2, (1, 2)) == []


def test_odd_walks_in_bipartite_graphs():
    assert enumerate_closed_walks(cycle(4), 3, (1, 2)) == []
    assert enumerate_closed_walks(cycle(6), 5, (1, 2)) == []


def test_k5_walks_revisit_vertices():
    walks = enumerate_closed_walks(complete(5), 5, (1, 2))
    assert (1, 3, 1, 3, 2) in walks
    assert any(len(set(w)) == 5 for w in walks)
    assert all({w[0], w[-1]} == {1, 2} for w in walks)


def test_anchor_must_be_an_edge():
    with pytest.raises(ValueError):
        enumerate_closed_walks(cycle(4), 4, (1, 3))
