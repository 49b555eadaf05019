##module for the brute-force ground truth: Hamiltonian circuits and closed walks by backtracking
from dataclasses import dataclass
from typing import List, Optional, Tuple

from src.errors import OracleGuardError
from src.graph_model import Answer, Edge, RppInstance, cycle_cost, edge_key
from src.settings import ORACLE_MAX_VERTICES, logger

MAX_WALK_LENGTH = 12


@dataclass(frozen=True)
class OracleResult:
    feasible: bool
    budget: int = 0
    min_cost: Optional[int] = None
    best_cycle: Optional[Tuple[int, ...]] = None

    @property
    def answer(self) -> Answer:
        return Answer.YES if self.feasible and self.min_cost <= self.budget else Answer.NO


def hamiltonian_cycles(instance: RppInstance) -> List[Tuple[int, ...]]:
    """All Hamiltonian cycles, each once: starting at 1, second vertex below the last."""
    v = instance.vertices
    if v < 3:
        return []
    adjacency = instance.adjacency
    path = [1]
    visited = {1}
    found = []

    def extend():
        if len(path) == v:
            if path[1] < path[-1] and instance.has_edge(path[-1], 1):
                found.append(tuple(path))
            return
        for w in adjacency[path[-1]]:
            if w not in visited:
                visited.add(w)
                path.append(w)
                extend()
                visited.discard(w)
                path.pop()

    extend()
    return found


def bruteforce(instance: RppInstance) -> OracleResult:
    if instance.vertices > ORACLE_MAX_VERTICES:
        raise OracleGuardError(f"brute force handles at most {ORACLE_MAX_VERTICES} vertices, got {instance.vertices}")
    required = set(instance.required)
    best_cost, best_cycle = None, None
    for cycle in hamiltonian_cycles(instance):
        edges = {edge_key(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))}
        if not required <= edges:
            continue
        cost = cycle_cost(instance, cycle)
        if best_cost is None or cost < best_cost:
            best_cost, best_cycle = cost, cycle
    result = OracleResult(
        feasible=best_cycle is not None,
        budget=instance.budget,
        min_cost=best_cost,
        best_cycle=best_cycle,
    )
    logger.info(f"Oracle: feasible={result.feasible}, min_cost={best_cost}, answer {result.answer.value}")
    return result


def enumerate_closed_walks(instance: RppInstance, length: int, through: Edge) -> List[Tuple[int, ...]]:
    # w1..wk runs between the endpoints of `through`; inner steps never use it
    if length > MAX_WALK_LENGTH:
        raise OracleGuardError(f"closed-walk enumeration handles at most {MAX_WALK_LENGTH} edges, got {length}")
    through = edge_key(*through)
    if through not in instance.lengths:
        raise ValueError(f"({through[0]},{through[1]}) is not an edge")
    adjacency = instance.adjacency
    walks = []
    for start, end in (through, through[::-1]):
        walk = [start]

        def extend():
            if len(walk) == length:
                if walk[-1] == end:
                    walks.append(tuple(walk))
                return
            for w in adjacency[walk[-1]]:
                if edge_key(walk[-1], w) != through:
                    walk.append(w)
                    extend()
                    walk.pop()

        if length >= 2:
            extend()
    return sorted(walks)
