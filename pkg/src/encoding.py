import random
import re
import zlib
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Set, Tuple

from src.errors import CodebookGenerationError
from src.graph_model import Edge, RppInstance, edge_key
from src.settings import CODE_LENGTH, DEFAULT_SEED, HALF_LENGTH, logger
from src.strands import NUCLEOTIDES, Strand, complement, make_strand

MAX_ATTEMPTS = 1000
MAX_VERTICES = 4 ** HALF_LENGTH


@dataclass(frozen=True)
class Codebook:
    seed: int
    vertices: int
    halves: Mapping[int, Strand]
    edges: Tuple[Edge, ...]
    required: Tuple[Edge, ...]
    excluded_edge: Optional[Edge]
    marker: Strand

    @property
    def vertex_ids(self) -> range:
        return range(1, self.vertices + 1)

    @property
    def ordered_pairs(self) -> List[Edge]:
        return sorted([(u, v) for u, v in self.edges] + [(v, u) for u, v in self.edges])

    def half(self, vertex: int) -> Strand:
        return self.halves[vertex]

    def vertex_code(self, vertex: int) -> Strand:
        return self.halves[vertex] * 2

    def edge_code(self, i: int, j: int) -> Strand:
        return complement(self.halves[i] + self.halves[j])

    def edge_patterns(self, edge: Edge) -> Tuple[Strand, Strand]:
        u, v = edge
        return self.edge_code(u, v), self.edge_code(v, u)

    def vertex_pattern(self, vertex: int) -> Strand:
        return complement(self.vertex_code(vertex))

    def complement_halves(self) -> List[Strand]:
        return [complement(self.halves[i]) for i in self.vertex_ids]

    @property
    def r_halves(self) -> Tuple[Strand, ...]:
        if self.excluded_edge is None:
            return ()
        a, b = self.excluded_edge
        return complement(self.halves[a]), complement(self.halves[b])

    @cached_property
    def edge_of(self) -> Dict[Strand, Edge]:
        return {self.edge_code(i, j): (i, j) for i, j in self.ordered_pairs}

    @cached_property
    def cap_vertex(self) -> Dict[Strand, int]:
        if self.excluded_edge is None:
            return {}
        return dict(zip(self.r_halves, self.excluded_edge))

    def dump(self) -> str:
        lines = [f"seed: {self.seed}"]
        lines += [f"vertex {i}: {self.vertex_code(i)}" for i in self.vertex_ids]
        lines += [f"edge ({i},{j}): {self.edge_code(i, j)}" for i, j in self.ordered_pairs]
        required = " ".join(f"({u},{v})" for u, v in self.required) or "none"
        lines.append(f"required: {required}")
        if self.excluded_edge is None:
            lines.append("excluded: none")
        else:
            lines.append(f"excluded: ({self.excluded_edge[0]},{self.excluded_edge[1]})")
        lines.append(f"marker: {self.marker}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dump(cls, text: str) -> "Codebook":
        seed = 0
        halves: Dict[int, Strand] = {}
        edges: Set[Edge] = set()
        required: List[Edge] = []
        excluded = None
        marker = ""
        pair = re.compile(r"\((\d+),(\d+)\)")
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            key, _, value = line.partition(":")
            value = value.strip()
            if key == "seed":
                seed = int(value)
            elif key.startswith("vertex "):
                halves[int(key.split()[1])] = make_strand(value[:HALF_LENGTH])
            elif key.startswith("edge "):
                u, v = map(int, pair.search(key).groups())
                edges.add(edge_key(u, v))
            elif key == "required":
                required = [edge_key(int(u), int(v)) for u, v in pair.findall(value)]
            elif key == "excluded":
                found = pair.search(value)
                excluded = edge_key(*map(int, found.groups())) if found else None
            elif key == "marker":
                marker = make_strand(value)
            else:
                raise ValueError(f"unrecognised codebook line: {raw!r}")
        return cls(
            seed=seed,
            vertices=len(halves),
            halves=halves,
            edges=tuple(sorted(edges)),
            required=tuple(required),
            excluded_edge=excluded,
            marker=marker,
        )


def _derive_seed(seed: int, tag: str) -> int:
    # stable across processes, unlike hash()
    crc = zlib.crc32(tag.encode("utf-8")) & 0xFFFFFFFF
    return (seed ^ crc) & 0xFFFFFFFFFFFFFFFF


def _random_mer(rng: random.Random, length: int) -> Strand:
    return "".join(rng.choice(NUCLEOTIDES) for _ in range(length))


def _offset_windows(left: Strand, right: Strand) -> List[Strand]:
    joined = left + right
    return [joined[offset:offset + HALF_LENGTH] for offset in range(1, HALF_LENGTH)]


def _generate_halves(count: int, rng: random.Random) -> List[Strand]:
    halves: List[Strand] = []
    units: Set[Strand] = set()
    # 10-mers sitting off the codeword grid inside any two adjacent halves
    windows: Set[Strand] = set()
    for index in range(count):
        for _ in range(MAX_ATTEMPTS):
            candidate = _random_mer(rng, HALF_LENGTH)
            partner = complement(candidate)
            if candidate in units or candidate in windows or partner in windows:
                continue
            fresh = set()
            for other in halves + [candidate]:
                fresh.update(_offset_windows(candidate, other))
                fresh.update(_offset_windows(other, candidate))
            known = units | {candidate, partner}
            if any(window in known for window in fresh):
                continue
            break
        else:
            raise CodebookGenerationError(
                f"no admissible half-mer for vertex {index + 1} after {MAX_ATTEMPTS} attempts"
            )
        halves.append(candidate)
        units |= {candidate, partner}
        windows |= fresh
    return halves


def _generate_marker(rng: random.Random, units: Set[Strand]) -> Strand:
    for _ in range(MAX_ATTEMPTS):
        candidate = _random_mer(rng, CODE_LENGTH)
        if any(candidate[o:o + HALF_LENGTH] in units for o in range(CODE_LENGTH - HALF_LENGTH + 1)):
            continue
        # a marker overlapping itself could be found straddling the end of a walk strand
        if any(candidate[k:] == candidate[:CODE_LENGTH - k] for k in range(1, CODE_LENGTH)):
            continue
        return candidate
    raise CodebookGenerationError(f"no admissible marker after {MAX_ATTEMPTS} attempts")


def choose_anchor(instance: RppInstance) -> Optional[Edge]:
    if instance.required:
        return instance.required_set[0]
    edges = instance.edge_set
    return edges[0] if edges else None


def build_codebook(instance: RppInstance, seed: int = DEFAULT_SEED, anchor: Optional[Edge] = None) -> Codebook:
    if instance.vertices > MAX_VERTICES:
        raise CodebookGenerationError(f"at most {MAX_VERTICES} vertices can be encoded")
    if anchor is None:
        anchor = choose_anchor(instance)
    else:
        anchor = edge_key(*anchor)
        if anchor not in instance.lengths:
            raise ValueError(f"anchor ({anchor[0]},{anchor[1]}) is not an edge")

    halves = _generate_halves(instance.vertices, random.Random(_derive_seed(seed, "halves")))
    units = set(halves) | {complement(h) for h in halves}
    marker = _generate_marker(random.Random(_derive_seed(seed, "marker")), units)

    codebook = Codebook(
        seed=seed,
        vertices=instance.vertices,
        halves={i: h for i, h in enumerate(halves, start=1)},
        edges=tuple(instance.edge_set),
        required=tuple(instance.required_set),
        excluded_edge=anchor,
        marker=marker,
    )
    logger.info(f"Built codebook: {instance.vertices} vertices, {len(codebook.edges)} edges, anchor {anchor}, seed {seed}")
    return codebook


def tube_p(cb: Codebook) -> Counter:
    return Counter({cb.vertex_code(i): 1 for i in cb.vertex_ids})


def tube_q(cb: Codebook) -> Counter:
    pairs = [(u, v) for u, v in cb.ordered_pairs if edge_key(u, v) != cb.excluded_edge]
    return Counter({cb.edge_code(u, v): 1 for u, v in pairs})


def tube_r(cb: Codebook) -> Counter:
    return Counter({half: 1 for half in cb.r_halves})


def decode_walk(s: Strand, cb: Codebook) -> Optional[Tuple[int, ...]]:
    """Vertex sequence of a lower strand (cap, edge codes, cap), or None."""
    cut = s.find(cb.marker) if cb.marker else -1
    if cut >= 0:
        s = s[:cut]
    if cb.excluded_edge is None or len(s) < 2 * CODE_LENGTH or len(s) % CODE_LENGTH:
        return None
    first = cb.cap_vertex.get(s[:HALF_LENGTH])
    last = cb.cap_vertex.get(s[-HALF_LENGTH:])
    if first is None or last is None or first == last:
        return None

    walk = [first]
    for offset in range(HALF_LENGTH, len(s) - HALF_LENGTH, CODE_LENGTH):
        step = cb.edge_of.get(s[offset:offset + CODE_LENGTH])
        if step is None or step[0] != walk[-1]:
            return None
        walk.append(step[1])
    if walk[-1] != last:
        return None
    return tuple(walk)
