from collections import Counter, defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Set, Tuple, Union

from src.encoding import Codebook
from src.errors import CapacityExceededError
from src.settings import DEFAULT_CAP, DEFAULT_FILLER, HALF_LENGTH, MAX_APPEND, logger
from src.strands import Strand, complement, concat, make_strand


class AnnealMode(str, Enum):
    ASSEMBLY = "assembly"
    LITERAL = "literal"


class MatchRegion(str, Enum):
    WHOLE = "whole"
    PRE_MARKER = "pre"


@dataclass(frozen=True)
class FillerPolicy:
    nucleotide: str = DEFAULT_FILLER

    def make(self, length: int) -> Strand:
        return self.nucleotide * length


@dataclass(frozen=True)
class HybridizationRule:
    # cap_of: the two anchor 10-mers -> the vertex whose outer half they cover
    half_length: int
    max_vertices: int
    vertex_of: Mapping[Strand, int]
    join_of: Mapping[Strand, Tuple[int, int]]
    cap_of: Mapping[Strand, int]

    @property
    def max_length(self) -> int:
        return 2 * self.half_length * self.max_vertices

    @classmethod
    def from_codebook(cls, codebook: Codebook, max_vertices: Optional[int] = None) -> "HybridizationRule":
        vertex_of = {codebook.vertex_code(i): i for i in codebook.vertex_ids}
        join_of = {codebook.edge_code(i, j): (i, j) for (i, j) in codebook.ordered_pairs}
        cap_of = {}
        if codebook.excluded_edge is not None:
            a, b = codebook.excluded_edge
            cap_of = {codebook.r_halves[0]: a, codebook.r_halves[1]: b}
        return cls(
            half_length=HALF_LENGTH,
            max_vertices=max_vertices if max_vertices is not None else codebook.vertices,
            vertex_of=vertex_of,
            join_of=join_of,
            cap_of=cap_of,
        )


class Tube:
    def __init__(self, label: str = "T", cap: int = DEFAULT_CAP):
        self.label = label
        self.cap = cap
        self.contents: Counter = Counter()
        # duplex partners formed by annealing, erased by denaturation
        self.duplexes: Set[Tuple[Strand, Strand]] = set()

    def __len__(self) -> int:
        return len(self.contents)

    def __repr__(self) -> str:
        return f"Tube({self.label!r}, distinct={len(self)}, total={self.total()})"

    def total(self) -> int:
        return sum(self.contents.values())

    def multiplicity(self, strand: Strand) -> int:
        return self.contents.get(strand, 0)

    def strands(self) -> List[Strand]:
        return sorted(self.contents)

    def is_empty(self) -> bool:
        return not self.contents

    def dump(self) -> str:
        return "".join(f"{self.contents[s]} {s}\n" for s in sorted(self.contents))

    def _check_capacity(self, distinct: int) -> None:
        if distinct > self.cap:
            raise CapacityExceededError(self.label, distinct, self.cap)

    def _clear(self) -> None:
        self.contents = Counter()
        self.duplexes = set()

    def _drop_broken_duplexes(self) -> None:
        self.duplexes = {
            (upper, lower) for (upper, lower) in self.duplexes
            if upper in self.contents and lower in self.contents
        }


StrandMultiset = Union[Mapping[Strand, int], Iterable[Strand]]


def _as_counter(strands: StrandMultiset) -> Counter:
    if isinstance(strands, Mapping):
        counts = Counter()
        for strand, count in strands.items():
            if count < 0:
                raise ValueError(f"negative multiplicity {count} for {strand!r}")
            if count:
                counts[make_strand(strand)] += count
        return counts
    return Counter(make_strand(s) for s in strands)


def input_strands(t: Tube, strands: StrandMultiset) -> Tube:
    counts = _as_counter(strands)
    t._check_capacity(len(counts))
    t._clear()
    t.contents = counts
    return t


def merge(t1: Tube, t2: Tube) -> Tuple[Tube, Tube]:
    if t1 is t2:
        return t1, t2
    t1._check_capacity(len(set(t1.contents) | set(t2.contents)))
    t1.contents.update(t2.contents)
    t1.duplexes |= t2.duplexes
    t2._clear()
    return t1, t2


def copy(t1: Tube, t2: Tube) -> Tube:
    if t1 is t2:
        return t2
    t2._check_capacity(len(t1))
    t2.contents = Counter(t1.contents)
    t2.duplexes = set(t1.duplexes)
    return t2


def detect(t: Tube) -> bool:
    return not t.is_empty()


def _match_text(strand: Strand, region: MatchRegion, marker: Optional[Strand]) -> Strand:
    if region is MatchRegion.PRE_MARKER:
        cut = strand.find(marker)
        if cut >= 0:
            return strand[:cut]
    return strand


def separation(
    t1: Tube,
    patterns: Iterable[Strand],
    t2: Tube,
    region: MatchRegion = MatchRegion.WHOLE,
    marker: Optional[Strand] = None,
) -> Tuple[Tube, Tube]:
    patterns = sorted(set(patterns))
    if not patterns:
        raise ValueError("separation needs at least one pattern")
    if region is MatchRegion.PRE_MARKER and not marker:
        raise ValueError("pre-marker separation needs the marker strand")

    moved = Counter()
    for strand in sorted(t1.contents):
        text = _match_text(strand, region, marker)
        if any(pattern in text for pattern in patterns):
            moved[strand] = t1.contents[strand]

    if t1 is t2:
        return t1, t2
    t2._check_capacity(len(set(t2.contents) | set(moved)))
    for strand, count in moved.items():
        del t1.contents[strand]
        t2.contents[strand] += count
    t2.duplexes |= {d for d in t1.duplexes if d[0] in moved and d[1] in moved}
    t1._drop_broken_duplexes()
    return t1, t2


def selection(t1: Tube, length: int, t2: Tube) -> Tuple[Tube, Tube]:
    if length < 0:
        raise ValueError(f"selection length must be nonnegative, got {length}")
    moved = {s: n for s, n in t1.contents.items() if len(s) == length}
    if t1 is t2:
        return t1, t2
    t2._check_capacity(len(set(t2.contents) | set(moved)))
    for strand, count in moved.items():
        del t1.contents[strand]
        t2.contents[strand] += count
    t2.duplexes |= {d for d in t1.duplexes if d[0] in moved and d[1] in moved}
    t1._drop_broken_duplexes()
    return t1, t2


def _assembly_duplexes(strands: Iterable[Strand], rule: HybridizationRule) -> List[Tuple[Strand, Strand]]:
    # every closed assembly is a walk in the graph the codewords describe
    present = set(strands)
    vertex_codes: Dict[int, Strand] = {rule.vertex_of[s]: s for s in present if s in rule.vertex_of}
    caps = sorted({rule.cap_of[s] for s in present if s in rule.cap_of})

    neighbours: Dict[int, List[int]] = defaultdict(list)
    for strand in present:
        join = rule.join_of.get(strand)
        if join and join[0] in vertex_codes and join[1] in vertex_codes:
            neighbours[join[0]].append(join[1])
    for vertex in neighbours:
        neighbours[vertex].sort()

    found = []
    for start in caps:
        if start not in vertex_codes:
            continue
        closers = set(caps) - {start}
        walk = [start]

        def extend():
            if len(walk) >= 2 and walk[-1] in closers:
                upper = concat(vertex_codes[w] for w in walk)
                found.append((upper, complement(upper)))
            if len(walk) == rule.max_vertices:
                return
            for nxt in neighbours.get(walk[-1], ()):
                walk.append(nxt)
                extend()
                walk.pop()

        extend()
    return found


def literal_assembly_bound(strands: Iterable[Strand], max_length: int) -> int:
    # number of upper-strand sequences a brute-force annealer would consider
    lengths = [len(s) for s in set(strands) if s]
    ways = [0] * (max_length + 1)
    ways[0] = 1
    for total in range(1, max_length + 1):
        ways[total] = sum(ways[total - n] for n in lengths if n <= total)
    return sum(ways[1:])


def _literal_duplexes(strands: Iterable[Strand], rule: HybridizationRule) -> List[Tuple[Strand, Strand]]:
    pieces = sorted(s for s in set(strands) if s)
    if not pieces:
        return []
    by_length: Dict[int, Set[Strand]] = defaultdict(set)
    for piece in pieces:
        by_length[len(piece)].add(piece)
    lengths = sorted(by_length)
    longest = lengths[-1]
    found: Set[Strand] = set()

    def tile(upper: Strand, nicks: frozenset):
        # first pieces of every lower tiling reaching each position, avoiding shared nicks
        lower = complement(upper)
        size = len(upper)
        firsts: List[Optional[Set[Strand]]] = [None] * (size + 1)
        firsts[0] = set()
        closed = False
        for pos in range(size):
            if firsts[pos] is None:
                continue
            for n in lengths:
                end = pos + n
                if end > size or end in nicks:
                    continue
                piece = lower[pos:end]
                if piece not in by_length[n]:
                    continue
                heads = firsts[pos] if pos else {piece}
                if end == size:
                    if any(head != piece for head in heads):
                        closed = True
                    continue
                if firsts[end] is None:
                    firsts[end] = set()
                firsts[end] |= heads
        viable = any(
            firsts[pos] is not None for pos in range(max(0, size + 1 - longest), size)
        )
        return closed, viable

    def extend(upper: Strand, nicks: frozenset):
        for piece in pieces:
            longer = upper + piece
            if len(longer) > rule.max_length:
                continue
            longer_nicks = nicks | {len(upper)} if upper else nicks
            closed, viable = tile(longer, longer_nicks)
            if closed:
                found.add(longer)
            if viable:
                extend(longer, longer_nicks)

    extend("", frozenset())
    return [(upper, complement(upper)) for upper in sorted(found)]


def annealing(t: Tube, rule: HybridizationRule, mode: AnnealMode = AnnealMode.ASSEMBLY) -> Tube:
    mode = AnnealMode(mode)
    if mode is AnnealMode.LITERAL:
        bound = literal_assembly_bound(t.contents, rule.max_length)
        if bound > t.cap:
            logger.warning(f"Literal annealing of {t.label} would consider {bound} assemblies")
            raise CapacityExceededError(t.label, bound, t.cap)
        duplexes = _literal_duplexes(t.contents, rule)
    else:
        duplexes = _assembly_duplexes(t.contents, rule)

    distinct = len(t)
    for upper, lower in duplexes:
        for strand in (upper, lower):
            if strand not in t.contents:
                distinct += 1
                t._check_capacity(distinct)
                t.contents[strand] = 1
        t.duplexes.add((upper, lower))
    logger.debug(f"Annealing ({mode.value}) formed {len(duplexes)} duplexes in {t.label}")
    return t


def denaturation(t: Tube) -> Tube:
    t.duplexes = set()
    return t


def discard(t: Tube) -> Tube:
    t._clear()
    return t


def append(t: Tube, z: Strand) -> Tube:
    if len(z) > MAX_APPEND:
        raise ValueError(f"append takes at most {MAX_APPEND} nucleotides, got {len(z)}; use append_long")
    make_strand(z)
    if not z:
        return t
    t.contents = Counter({s + z: n for s, n in t.contents.items()})
    t._drop_broken_duplexes()
    return t


def append_chunks(total: int, filler: FillerPolicy = FillerPolicy()) -> List[Strand]:
    if total < 0:
        raise ValueError(f"append length must be nonnegative, got {total}")
    whole, rest = divmod(total, MAX_APPEND)
    return [filler.make(MAX_APPEND)] * whole + [filler.make(rest)]


def append_long(t: Tube, total: int, filler: FillerPolicy = FillerPolicy()) -> Tube:
    for chunk in append_chunks(total, filler):
        append(t, chunk)
    return t
