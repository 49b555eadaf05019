from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.errors import (
    DisconnectedGraphError,
    DuplicateEdgeError,
    NegativeValueError,
    RequiredEdgeMissingError,
    SelfLoopError,
    VertexRangeError,
)

Edge = Tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class RppInstance:
    # edges stay as given (normalized), duplicates included, for validate()
    vertices: int
    edges: Tuple[Edge, ...]
    lengths: Mapping[Edge, int] = field(default_factory=dict)
    required: Tuple[Edge, ...] = ()
    budget: int = 0

    @classmethod
    def build(
        cls,
        vertices: int,
        edges: Iterable[Sequence[int]],
        required: Iterable[Sequence[int]] = (),
        budget: int = 0,
    ) -> "RppInstance":
        # edges are (u, v) or (u, v, length); length defaults to 1
        keys = []
        lengths = {}
        for entry in edges:
            key = edge_key(entry[0], entry[1])
            keys.append(key)
            lengths.setdefault(key, entry[2] if len(entry) > 2 else 1)
        return cls(
            vertices=vertices,
            edges=tuple(keys),
            lengths=lengths,
            required=tuple(edge_key(u, v) for u, v in required),
            budget=budget,
        )

    @property
    def edge_set(self) -> List[Edge]:
        return sorted(set(self.edges))

    @property
    def required_set(self) -> List[Edge]:
        return sorted(set(self.required))

    @property
    def free_edges(self) -> List[Edge]:
        required = set(self.required)
        return [e for e in self.edge_set if e not in required]

    @property
    def adjacency(self) -> Dict[int, List[int]]:
        neighbours: Dict[int, List[int]] = {v: [] for v in range(1, self.vertices + 1)}
        for u, v in self.edge_set:
            if u != v:
                neighbours[u].append(v)
                neighbours[v].append(u)
        for v in neighbours:
            neighbours[v].sort()
        return neighbours

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.lengths

    def length(self, u: int, v: int) -> int:
        return self.lengths[edge_key(u, v)]

    def required_length(self) -> int:
        return sum(self.lengths[e] for e in self.required_set)


class Answer(str, Enum):
    YES = "YES"
    NO = "NO"


@dataclass
class Decision:
    answer: Answer
    witness: Optional[Tuple[int, ...]] = None
    cost: Optional[int] = None
    stats: Any = None
    witness_strand: Optional[str] = None
    detect_log: List[Tuple[str, bool]] = field(default_factory=list)
    trace: Any = None
    codebook: Any = None


def validate(instance: RppInstance) -> RppInstance:
    if instance.vertices < 1:
        raise VertexRangeError(f"instance needs at least one vertex, got {instance.vertices}")
    for u, v in instance.edges:
        for w in (u, v):
            if not 1 <= w <= instance.vertices:
                raise VertexRangeError(f"edge ({u},{v}) names vertex {w} outside 1..{instance.vertices}")
    for u, v in instance.edges:
        if u == v:
            raise SelfLoopError(u)
    seen = set()
    for edge in instance.edges:
        if edge in seen:
            raise DuplicateEdgeError(edge)
        seen.add(edge)
    for edge in instance.edge_set:
        if instance.lengths.get(edge, -1) < 0:
            raise NegativeValueError(f"edge ({edge[0]},{edge[1]}) has negative or missing length")
    for edge in instance.required:
        if edge not in seen:
            raise RequiredEdgeMissingError(edge)
    if instance.budget < 0:
        raise NegativeValueError(f"budget must be nonnegative, got {instance.budget}")

    reached = {1}
    queue = deque([1])
    adjacency = instance.adjacency
    while queue:
        vertex = queue.popleft()
        for nxt in adjacency[vertex]:
            if nxt not in reached:
                reached.add(nxt)
                queue.append(nxt)
    if len(reached) != instance.vertices:
        missing = [v for v in range(1, instance.vertices + 1) if v not in reached]
        raise DisconnectedGraphError(missing)
    return instance


def dfs_renumber(instance: RppInstance, root: int = 1) -> Tuple[RppInstance, Dict[int, int]]:
    # ascending neighbour order; returns the permutation old label -> new label
    if not 1 <= root <= instance.vertices:
        raise VertexRangeError(f"DFS root {root} outside 1..{instance.vertices}")
    adjacency = instance.adjacency
    order = [root]
    visited = {root}
    stack = [iter(adjacency[root])]
    while stack:
        for nxt in stack[-1]:
            if nxt not in visited:
                visited.add(nxt)
                order.append(nxt)
                stack.append(iter(adjacency[nxt]))
                break
        else:
            stack.pop()
    # unreachable vertices (invalid instances only) keep their relative order at the end
    order += [v for v in range(1, instance.vertices + 1) if v not in visited]

    permutation = {old: new for new, old in enumerate(order, start=1)}
    relabeled = RppInstance(
        vertices=instance.vertices,
        edges=tuple(edge_key(permutation[u], permutation[v]) for u, v in instance.edges),
        lengths={edge_key(permutation[u], permutation[v]): n for (u, v), n in instance.lengths.items()},
        required=tuple(edge_key(permutation[u], permutation[v]) for u, v in instance.required),
        budget=instance.budget,
    )
    return relabeled, permutation


def invert(permutation: Mapping[int, int]) -> Dict[int, int]:
    return {new: old for old, new in permutation.items()}


def relabel(cycle: Sequence[int], mapping: Mapping[int, int]) -> Tuple[int, ...]:
    return tuple(mapping[v] for v in cycle)


def free_budget(instance: RppInstance) -> int:
    return instance.budget - instance.required_length()


def canonical_cycle(cycle: Sequence[int]) -> Tuple[int, ...]:
    # rotate to the smallest label, then orient so the smaller neighbour comes second
    if len(cycle) < 3:
        return tuple(cycle)
    start = cycle.index(min(cycle))
    rotated = list(cycle[start:]) + list(cycle[:start])
    if rotated[1] > rotated[-1]:
        rotated = [rotated[0]] + rotated[1:][::-1]
    return tuple(rotated)


def cycle_edges(cycle: Sequence[int]) -> List[Edge]:
    return [edge_key(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def cycle_cost(instance: RppInstance, cycle: Sequence[int]) -> int:
    return sum(instance.lengths[e] for e in cycle_edges(cycle))


def is_rpp_circuit(instance: RppInstance, cycle: Sequence[int]) -> bool:
    if len(cycle) != instance.vertices or len(set(cycle)) != len(cycle) or len(cycle) < 3:
        return False
    edges = cycle_edges(cycle)
    if any(e not in instance.lengths for e in edges):
        return False
    return set(instance.required) <= set(edges)
