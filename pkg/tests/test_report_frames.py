import random

from src.encoding import build_codebook
from src.graph_model import validate
from src.report_frames import (
    agreement_frame,
    codebook_frame,
    complete_instance,
    operations_frame,
    random_instance,
    scaling_frame,
    with_quadratic_bound,
)
from src.rpp_pipeline import solve


def test_complete_instance_defaults():
    instance = complete_instance(5)
    assert len(instance.edges) == 10
    assert instance.required == ((1, 2), (3, 4))
    assert instance.budget == 5


def test_random_instances_are_valid():
    rng = random.Random(11)
    for _ in range(20):
        instance = validate(random_instance(rng, rng.randint(3, 7)))
        assert 1 <= len(instance.required) <= 3
        assert instance.budget >= 0


def test_operations_frame_drops_unused_kinds():
    df = operations_frame(solve(complete_instance(4)).stats)
    assert set(df["Operation"]) == {"input", "merge", "copy", "detect", "separate", "select", "anneal",
                                    "denature", "append"}
    assert (df["Count"] > 0).all()


def test_codebook_frame_lists_every_codeword():
    df = codebook_frame(build_codebook(complete_instance(4), seed=0))
    assert df["Kind"].value_counts().to_dict() == {"edge": 12, "vertex": 4, "cap": 2, "marker": 1}
    assert (df[df["Kind"] == "marker"]["Codeword"].str.len() == 20).all()


def test_scaling_stays_within_the_fitted_bound():
    df, a, b = with_quadratic_bound(scaling_frame(range(4, 11)), fit_sizes=(4, 5))
    assert list(df["Core Operations"][:2]) == [33, 47]
    assert a > 0
    assert df["Within Bound"].all()


def test_agreement_with_brute_force():
    rng = random.Random(5)
    instances = [random_instance(rng, rng.randint(3, 5)) for _ in range(8)]
    df = agreement_frame(instances, workers=2)
    assert len(df) == 8
    assert df["Agree"].all()
