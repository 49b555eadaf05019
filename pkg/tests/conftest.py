from functools import lru_cache
from itertools import combinations, permutations
from typing import List, Sequence, Tuple

import pytest
from hypothesis import strategies as st

from src.graph_model import RppInstance
from src.report_frames import complete_instance


def complete(n: int, required: Sequence[Tuple[int, int]] = ((1, 2),), budget: int = 0) -> RppInstance:
    return complete_instance(n, required=required, budget=budget)


def path(n: int, budget: int = 0) -> RppInstance:
    return RppInstance.build(n, [(i, i + 1) for i in range(1, n)], [(1, 2)], budget)


def star(n: int, budget: int = 10) -> RppInstance:
    return RppInstance.build(n, [(1, i) for i in range(2, n + 1)], [(1, 2)], budget)


def cycle(n: int, required: Sequence[Tuple[int, int]] = ((1, 2),), budget: int = 0) -> RppInstance:
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    return RppInstance.build(n, edges, required, budget)


def _connected(n: int, edges: Sequence[Tuple[int, int]]) -> bool:
    reached = {1}
    frontier = [1]
    while frontier:
        u = frontier.pop()
        for a, b in edges:
            for x, y in ((a, b), (b, a)):
                if x == u and y not in reached:
                    reached.add(y)
                    frontier.append(y)
    return len(reached) == n


@lru_cache(maxsize=None)
def connected_graphs(n: int) -> List[Tuple[Tuple[int, int], ...]]:
    """One labelled representative per isomorphism class of connected graphs on n vertices."""
    all_edges = list(combinations(range(1, n + 1), 2))
    seen = set()
    found = []
    for mask in range(1, 1 << len(all_edges)):
        edges = tuple(e for i, e in enumerate(all_edges) if mask >> i & 1)
        if len(edges) < n - 1 or not _connected(n, edges):
            continue
        form = min(
            tuple(sorted(tuple(sorted((p[u - 1], p[v - 1]))) for u, v in edges))
            for p in permutations(range(1, n + 1))
        )
        if form not in seen:
            seen.add(form)
            found.append(edges)
    return found


@st.composite
def connected_instances(draw, min_vertices: int = 3, max_vertices: int = 5, max_length: int = 9):
    n = draw(st.integers(min_vertices, max_vertices))
    tree = [(draw(st.integers(1, v - 1)), v) for v in range(2, n + 1)]
    extra = draw(st.lists(st.sampled_from(list(combinations(range(1, n + 1), 2))), max_size=n))
    edges = sorted(set(tree) | set(extra))
    lengths = [draw(st.integers(0, max_length)) for _ in edges]
    required = draw(st.lists(st.sampled_from(edges), min_size=1, max_size=2, unique=True))
    budget = draw(st.integers(0, max_length * n))
    return RppInstance.build(n, [(u, v, n_) for (u, v), n_ in zip(edges, lengths)], required, budget)


@pytest.fixture
def triangle() -> RppInstance:
    return complete(3, budget=3)


@pytest.fixture
def k4_two_required() -> RppInstance:
    return complete(4, required=((1, 2), (3, 4)), budget=4)
