from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from src.encoding import build_codebook, decode_walk, tube_p, tube_q, tube_r
from src.errors import CapacityExceededError
from src.graph_model import RppInstance
from src.oracle import enumerate_closed_walks
from src.tube import (
    AnnealMode,
    FillerPolicy,
    HybridizationRule,
    MatchRegion,
    Tube,
    annealing,
    append,
    append_chunks,
    append_long,
    copy,
    denaturation,
    detect,
    discard,
    input_strands,
    literal_assembly_bound,
    merge,
    selection,
    separation,
)
from tests.conftest import complete

multisets = st.dictionaries(st.text(alphabet="ACGT", min_size=1, max_size=8), st.integers(1, 5), max_size=8)


def filled(label, contents, cap=1000):
    return input_strands(Tube(label, cap), contents)


def initial_tube(cb, cap=10_000_000):
    t = filled("P", tube_p(cb), cap)
    merge(t, filled("Q", tube_q(cb), cap))
    merge(t, filled("R", tube_r(cb), cap))
    return t


def test_input_counts_distinct_and_total():
    t = filled("T", {"AC": 1, "GT": 2})
    assert len(t) == 2
    assert t.total() == 3


def test_input_of_nothing_is_empty():
    t = filled("T", {})
    assert not detect(t)


def test_input_rejects_overflow():
    with pytest.raises(CapacityExceededError) as err:
        filled("T", ["A", "C", "G"], cap=2)
    assert err.value.tube == "T"
    assert err.value.distinct == 3


def test_merge_adds_multiplicities_and_empties_source():
    t1, t2 = merge(filled("A", {"AC": 1}), filled("B", {"AC": 2}))
    assert t1.contents == Counter({"AC": 3})
    assert t2.is_empty()


def test_merge_into_empty():
    t1, t2 = merge(filled("A", {}), filled("B", {"GG": 4}))
    assert t1.contents == Counter({"GG": 4})
    assert not detect(t2)


def test_copy_leaves_source_and_doubles_on_merge():
    t1 = filled("A", {"AC": 5, "T": 1})
    t2 = copy(t1, Tube("B"))
    assert t2.contents == t1.contents
    merge(t1, t2)
    assert t1.contents == Counter({"AC": 10, "T": 2})


def test_separation_moves_matching_strands():
    t1, t2 = separation(filled("A", {"ACGT": 1, "TTTT": 2}), ["CG"], Tube("B"))
    assert t1.contents == Counter({"TTTT": 2})
    assert t2.contents == Counter({"ACGT": 1})


def test_separation_without_match_moves_nothing():
    t1, t2 = separation(filled("A", {"ACGT": 1}), ["GGG"], Tube("B"))
    assert t1.contents == Counter({"ACGT": 1})
    assert t2.is_empty()


def test_separation_needs_patterns():
    with pytest.raises(ValueError):
        separation(filled("A", {"A": 1}), [], Tube("B"))


def test_pre_marker_region_ignores_the_tail():
    marker = "GGGG"
    t = filled("A", {"ACGGGGCC": 1, "CCGGGGAC": 1})
    t1, t2 = separation(t, ["AC"], Tube("B"), MatchRegion.PRE_MARKER, marker)
    assert t2.strands() == ["ACGGGGCC"]
    assert t1.strands() == ["CCGGGGAC"]


def test_selection_by_exact_length():
    t1, t2 = selection(filled("A", {"AC": 1, "ACGT": 1}), 4, Tube("B"))
    assert t2.contents == Counter({"ACGT": 1})
    assert t1.contents == Counter({"AC": 1})
    _, empty = selection(t1, 7, Tube("C"))
    assert empty.is_empty()


def test_discard_empties():
    t = discard(filled("A", {"A": 5}))
    assert not detect(t)
    assert discard(Tube("E")).is_empty()


def test_append_keeps_multiplicities():
    t = append(filled("A", {"AC": 2}), "GT")
    assert t.contents == Counter({"ACGT": 2})
    assert append(t, "").contents == Counter({"ACGT": 2})


def test_append_rejects_long_strands():
    with pytest.raises(ValueError):
        append(filled("A", {"A": 1}), "A" * 21)


def test_append_chunks_follow_the_twenty_mer_rule():
    assert [len(c) for c in append_chunks(47)] == [20, 20, 7]
    assert [len(c) for c in append_chunks(20)] == [20, 0]
    assert append_chunks(0) == [""]
    assert append_chunks(3, FillerPolicy("C")) == ["CCC"]


def test_append_long_lengthens_every_strand():
    t = append_long(filled("A", {"AC": 1, "GTT": 3}), 47)
    assert sorted(len(s) for s in t.strands()) == [49, 50]
    assert t.total() == 4


def test_dump_is_sorted():
    assert filled("A", {"T": 1, "AC": 2}).dump() == "2 AC\n1 T\n"


def test_triangle_assemblies_are_the_closed_walks():
    instance = complete(3)
    cb = build_codebook(instance, seed=0)
    t = initial_tube(cb)
    annealing(t, HybridizationRule.from_codebook(cb))
    assert t.duplexes
    denaturation(t)
    assert not t.duplexes
    _, chosen = selection(t, 60, Tube("R"))
    assert len(chosen) == 4
    walks = {decode_walk(s, cb) for s in chosen.strands()} - {None}
    assert walks == set(enumerate_closed_walks(instance, 3, (1, 2)))


def test_single_edge_graph_never_closes():
    instance = RppInstance.build(2, [(1, 2)], [(1, 2)])
    cb = build_codebook(instance, seed=0)
    t = initial_tube(cb)
    annealing(t, HybridizationRule.from_codebook(cb))
    _, chosen = selection(t, 40, Tube("R"))
    assert chosen.is_empty()


def test_literal_and_assembly_annealing_agree_on_a_triangle():
    cb = build_codebook(complete(3), seed=3)
    rule = HybridizationRule.from_codebook(cb)
    assembled = annealing(initial_tube(cb), rule, AnnealMode.ASSEMBLY)
    literal = annealing(initial_tube(cb), rule, AnnealMode.LITERAL)
    assert literal.contents == assembled.contents


def test_literal_annealing_refuses_beyond_the_cap():
    cb = build_codebook(complete(3), seed=0)
    t = initial_tube(cb, cap=100)
    assert literal_assembly_bound(t.contents, 60) > 100
    with pytest.raises(CapacityExceededError):
        annealing(t, HybridizationRule.from_codebook(cb), AnnealMode.LITERAL)


def test_annealing_respects_the_cap():
    cb = build_codebook(complete(4), seed=0)
    t = initial_tube(cb, cap=20)
    with pytest.raises(CapacityExceededError):
        annealing(t, HybridizationRule.from_codebook(cb))


@given(multisets, st.text(alphabet="ACGT", min_size=1, max_size=3))
@settings(max_examples=100, deadline=None)
def test_separation_then_merge_restores_the_tube(contents, pattern):
    t1 = filled("A", contents)
    before = Counter(t1.contents)
    t1, t2 = separation(t1, [pattern], Tube("B", 1000))
    assert all(pattern in s for s in t2.contents)
    assert not any(pattern in s for s in t1.contents)
    merge(t1, t2)
    assert t1.contents == before


@given(multisets, st.integers(0, 8))
@settings(max_examples=100, deadline=None)
def test_selection_partitions_by_length(contents, length):
    t1, t2 = selection(filled("A", contents), length, Tube("B", 1000))
    assert t1.total() + t2.total() == sum(contents.values())
    assert all(len(s) == length for s in t2.contents)
