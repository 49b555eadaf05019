import random
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import pandas as pd

from src.encoding import Codebook
from src.graph_model import Decision, RppInstance
from src.oracle import OracleResult, bruteforce
from src.rpp_pipeline import PipelineConfig, PipelineStats, count_operations, fit_quadratic_bound, solve_many
from src.settings import DEFAULT_WORKERS, logger


def complete_instance(n: int, required: Sequence[Tuple[int, int]] = ((1, 2), (3, 4)), budget: Optional[int] = None) -> RppInstance:
    # unit lengths; the default budget admits every Hamiltonian circuit
    return RppInstance.build(
        vertices=n,
        edges=list(combinations(range(1, n + 1), 2)),
        required=required,
        budget=n if budget is None else budget,
    )


def random_instance(rng: random.Random, vertices: int, edge_probability: float = 0.5, max_length: int = 9) -> RppInstance:
    # spanning tree plus extra edges; budget near the cost of a random tour
    order = list(range(1, vertices + 1))
    rng.shuffle(order)
    edges = set()
    for i in range(1, vertices):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for u, v in combinations(range(1, vertices + 1), 2):
        if rng.random() < edge_probability:
            edges.add((u, v))
    edges = sorted(edges)
    lengths = {e: rng.randint(0, max_length) for e in edges}
    required = rng.sample(edges, rng.randint(1, min(3, len(edges))))

    tour = list(range(1, vertices + 1))
    rng.shuffle(tour)
    guess = sum(lengths.get((min(a, b), max(a, b)), max_length) for a, b in zip(tour, tour[1:] + tour[:1]))
    budget = max(0, guess + rng.randint(-vertices, vertices))
    return RppInstance.build(vertices, [(u, v, lengths[(u, v)]) for u, v in edges], required, budget)


def operations_frame(stats: PipelineStats) -> pd.DataFrame:
    df = pd.DataFrame(sorted(stats.operations.items()), columns=["Operation", "Count"])
    return df[df["Count"] > 0].reset_index(drop=True)


def codebook_frame(codebook: Codebook) -> pd.DataFrame:
    rows = [("vertex", str(i), codebook.vertex_code(i)) for i in codebook.vertex_ids]
    rows += [("edge", f"({i},{j})", codebook.edge_code(i, j)) for i, j in codebook.ordered_pairs]
    rows += [("cap", str(v), half) for v, half in zip(codebook.excluded_edge or (), codebook.r_halves)]
    rows.append(("marker", "@", codebook.marker))
    return pd.DataFrame(rows, columns=["Kind", "Key", "Codeword"])


def scaling_frame(sizes: Sequence[int], cfg: Optional[PipelineConfig] = None) -> pd.DataFrame:
    rows = []
    for n in sizes:
        instance = complete_instance(n)
        stats = count_operations(instance, cfg)
        rows.append({
            "n": n,
            "Edges": len(instance.edges),
            "Core Operations": stats.core_operations,
            "Sweep Operations": stats.sweep_operations,
            "Total Operations": stats.total_operations,
        })
    return pd.DataFrame(rows)


def with_quadratic_bound(df: pd.DataFrame, fit_sizes: Sequence[int]) -> Tuple[pd.DataFrame, float, float]:
    fitted = df[df["n"].isin(fit_sizes)]
    a, b = fit_quadratic_bound(list(zip(fitted["n"], fitted["Core Operations"])))
    df = df.copy()
    df["Bound"] = a * df["n"] ** 2 + b
    df["Within Bound"] = df["Core Operations"] <= df["Bound"] + 1e-9
    return df, a, b


def agreement_frame(instances: Sequence[RppInstance], cfg: Optional[PipelineConfig] = None,
                    workers: int = DEFAULT_WORKERS) -> pd.DataFrame:
    decisions: List[Decision] = solve_many(instances, cfg, workers)
    rows = []
    for index, (instance, decision) in enumerate(zip(instances, decisions), start=1):
        result: OracleResult = bruteforce(instance)
        rows.append({
            "Instance": index,
            "Vertices": instance.vertices,
            "Edges": len(instance.edges),
            "Required": len(instance.required),
            "Budget": instance.budget,
            "Pipeline": decision.answer.value,
            "Oracle": result.answer.value,
            "Min Cost": result.min_cost,
            "Operations": decision.stats.total_operations,
        })
    df = pd.DataFrame(rows)
    if not df.empty:
        df["Agree"] = df["Pipeline"] == df["Oracle"]
        logger.info(f"Oracle agreement: {int(df['Agree'].sum())}/{len(df)}")
    return df
