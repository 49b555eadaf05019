import random
from itertools import chain, combinations

import pytest
from hypothesis import given, settings

from src.encoding import Codebook, build_codebook, decode_walk
from src.graph_model import Answer, RppInstance, cycle_edges, is_rpp_circuit
from src.instance_io import decision_json
from src.oracle import bruteforce, enumerate_closed_walks
from src.report_frames import random_instance
from src.rpp_pipeline import PipelineConfig, phase1_generate, solve
from src.settings import CODE_LENGTH
from src.tube import AnnealMode
from src.tube_script import ScriptEnv, execute, print_program
from tests.conftest import connected_graphs, connected_instances

pytestmark = pytest.mark.slow


def _required_subsets(edges):
    return chain.from_iterable(combinations(edges, k) for k in range(1, len(edges) + 1))


def _family():
    for n in (3, 4, 5):
        for edges in connected_graphs(n):
            for required in _required_subsets(edges):
                yield n, edges, required


def _anchored_graphs(max_vertices):
    for n in range(3, max_vertices + 1):
        for edges in connected_graphs(n):
            for anchor in edges:
                yield RppInstance.build(n, edges), anchor


def assert_sound_yes(instance, decision):
    assert is_rpp_circuit(instance, decision.witness)
    assert decision.cost <= instance.budget
    required = set(instance.required)
    free_cost = sum(instance.lengths[e] for e in cycle_edges(decision.witness) if e not in required)
    assert len(decision.witness_strand) == CODE_LENGTH * instance.vertices + CODE_LENGTH + free_cost


def test_matches_brute_force_on_small_connected_graphs():
    checked = 0
    for n, edges, required in _family():
        reference = bruteforce(RppInstance.build(n, edges, required, 0))
        if reference.min_cost is None:
            budgets = [n - 1, n, n + 1]
        else:
            budgets = [b for b in (reference.min_cost - 1, reference.min_cost, reference.min_cost + 1) if b >= 0]
        for budget in budgets:
            instance = RppInstance.build(n, edges, required, budget)
            decision = solve(instance, PipelineConfig(witness=True))
            assert decision.answer == bruteforce(instance).answer, (edges, required, budget)
            if decision.answer is Answer.YES:
                assert_sound_yes(instance, decision)
            checked += 1
    assert checked > 5000


@settings(max_examples=60, deadline=None)
@given(connected_instances())
def test_matches_brute_force_on_weighted_instances(instance):
    decision = solve(instance, PipelineConfig(witness=True))
    assert decision.answer == bruteforce(instance).answer
    if decision.answer is Answer.YES:
        assert_sound_yes(instance, decision)


def test_matches_brute_force_on_random_instances():
    rng = random.Random(2024)
    for _ in range(200):
        instance = random_instance(rng, rng.randint(4, 8))
        decision = solve(instance, PipelineConfig(witness=True))
        assert decision.answer == bruteforce(instance).answer
        if decision.answer is Answer.YES:
            assert_sound_yes(instance, decision)


def test_generated_walks_are_the_closed_walks_through_the_anchor():
    for instance, anchor in _anchored_graphs(5):
        cb = build_codebook(instance, seed=0, anchor=anchor)
        decoded = {decode_walk(s, cb) for s in phase1_generate(cb).strands()}
        assert decoded == set(enumerate_closed_walks(instance, instance.vertices, anchor)), (instance.edges, anchor)


def test_literal_and_assembly_annealing_build_the_same_walks():
    for instance, anchor in _anchored_graphs(4):
        cb = build_codebook(instance, seed=0, anchor=anchor)
        literal = phase1_generate(cb, PipelineConfig(mode=AnnealMode.LITERAL))
        assembly = phase1_generate(cb, PipelineConfig(mode=AnnealMode.ASSEMBLY))
        assert literal.contents == assembly.contents, (instance.edges, anchor)


def test_traces_replay_to_the_same_detections():
    for n, edges, required in _family():
        instance = RppInstance.build(n, edges, required, n)
        decision = solve(instance, PipelineConfig(trace=True))
        if decision.trace is None:
            continue
        env = execute(decision.trace, ScriptEnv(codebook=Codebook.from_dump(decision.codebook.dump())))
        assert env.detect_log == decision.detect_log, (edges, required)


def test_runs_are_reproducible():
    rng = random.Random(99)
    for _ in range(20):
        instance = random_instance(rng, rng.randint(3, 6))
        config = PipelineConfig(seed=rng.randrange(1000), trace=True, witness=True)
        first, second = solve(instance, config), solve(instance, config)
        assert decision_json(first) == decision_json(second)
        if first.trace is not None:
            assert print_program(first.trace) == print_program(second.trace)
