import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.encoding import Codebook, build_codebook, decode_walk, tube_p, tube_q, tube_r
from src.errors import ConfigurationError
from src.graph_model import (
    Answer,
    Decision,
    Edge,
    RppInstance,
    canonical_cycle,
    cycle_cost,
    dfs_renumber,
    free_budget,
    invert,
    relabel,
    validate,
)
from src.settings import (
    CODE_LENGTH,
    DEFAULT_CAP,
    DEFAULT_MODE,
    DEFAULT_SEED,
    DEFAULT_WORKERS,
    LITERAL_MAX_VERTICES,
    logger,
)
from src.strands import Strand
from src.tube import AnnealMode, FillerPolicy, MatchRegion, Tube, append_chunks
from src.tube_script import (
    Anneal,
    Append,
    Copy,
    Denature,
    Detect,
    Input,
    Merge,
    STATEMENT_KINDS,
    ScriptEnv,
    Select,
    Separate,
    Statement,
    TubeProgram,
    apply_statement,
)


@dataclass(frozen=True)
class PipelineConfig:
    mode: AnnealMode = AnnealMode(DEFAULT_MODE)
    seed: int = DEFAULT_SEED
    cap: int = DEFAULT_CAP
    trace: bool = False
    witness: bool = False
    filler: FillerPolicy = FillerPolicy()

    def __post_init__(self):
        object.__setattr__(self, "mode", AnnealMode(self.mode))
        if self.cap < 1:
            raise ConfigurationError(f"cap must be at least 1, got {self.cap}")


@dataclass
class PipelineStats:
    operations: Dict[str, int] = field(default_factory=lambda: {k.keyword.lower(): 0 for k in STATEMENT_KINDS})
    sweep_operations: int = 0
    max_distinct_strands: int = 0
    wall_time: float = 0.0

    @property
    def total_operations(self) -> int:
        return sum(self.operations.values())

    @property
    def core_operations(self) -> int:
        # everything except the final length sweep
        return self.total_operations - self.sweep_operations

    def absorb(self, other: "PipelineStats") -> None:
        for key, count in other.operations.items():
            self.operations[key] = self.operations.get(key, 0) + count
        self.sweep_operations += other.sweep_operations
        self.max_distinct_strands = max(self.max_distinct_strands, other.max_distinct_strands)
        self.wall_time += other.wall_time


class Bench:
    # a dry bench only records statements and answers every DETECT with True
    def __init__(self, codebook: Codebook, config: PipelineConfig = PipelineConfig(), dry: bool = False):
        self.codebook = codebook
        self.config = config
        self.dry = dry
        self.env = ScriptEnv(codebook=codebook, mode=config.mode, cap=config.cap)
        self.statements: List[Statement] = []
        self.stats = PipelineStats()
        self.sweeping = False

    def tube(self, name: str) -> Tube:
        return self.env.tube(name)

    def run(self, statement: Statement) -> Optional[bool]:
        self.statements.append(statement)
        self.stats.operations[statement.keyword.lower()] += 1
        if self.sweeping:
            self.stats.sweep_operations += 1
        if self.dry:
            if isinstance(statement, Detect):
                self.env.detect_log.append((statement.tube, True))
                return True
            return None
        result = apply_statement(statement, self.env)
        distinct = max(len(self.env.tube(name)) for name in statement.tubes())
        self.stats.max_distinct_strands = max(self.stats.max_distinct_strands, distinct)
        logger.debug(f"{statement.render()} -> {distinct} distinct strands")
        return result

    def program(self) -> TubeProgram:
        return TubeProgram(codebook=None, statements=tuple(self.statements))


def _attach(bench: Optional[Bench], cb: Codebook, cfg: Optional[PipelineConfig], t: Optional[Tube] = None) -> Bench:
    if bench is None:
        bench = Bench(cb, cfg or PipelineConfig())
    if t is not None and bench.env.tubes.get(t.label) is not t:
        bench.env.tubes[t.label] = t
    return bench


def _items(counts: Counter) -> Tuple[Tuple[int, Strand], ...]:
    return tuple((counts[s], s) for s in sorted(counts))


def phase1_generate(cb: Codebook, cfg: Optional[PipelineConfig] = None, bench: Optional[Bench] = None) -> Tube:
    bench = _attach(bench, cb, cfg)
    logger.info(f"Phase 1: generating closed walks over {cb.vertices} vertices")
    bench.run(Input("P", _items(tube_p(cb))))
    bench.run(Input("Q", _items(tube_q(cb))))
    bench.run(Input("R", _items(tube_r(cb))))
    bench.run(Merge("P", "Q"))
    bench.run(Merge("P", "R"))
    bench.run(Anneal("P"))
    bench.run(Denature("P"))
    bench.run(Select("P", CODE_LENGTH * cb.vertices, "R"))
    bench.run(Separate("R", tuple(sorted(set(cb.complement_halves()))), "R_edge"))
    return bench.tube("R_edge")


def phase2_require_edges(t: Tube, cb: Codebook, cfg: Optional[PipelineConfig] = None,
                         bench: Optional[Bench] = None) -> Tube:
    bench = _attach(bench, cb, cfg, t)
    others = [e for e in cb.required if e != cb.excluded_edge]
    logger.info(f"Phase 2: filtering on {len(others)} required edges besides the anchor")
    bench.run(Copy(t.label, "L_1"))
    for i, edge in enumerate(others, start=1):
        bench.run(Separate(f"L_{i}", tuple(sorted(cb.edge_patterns(edge))), f"L_{i + 1}"))
    return bench.tube(f"L_{len(others) + 1}")


def phase3_vertex_check(t: Tube, cb: Codebook, cfg: Optional[PipelineConfig] = None,
                        bench: Optional[Bench] = None) -> Tuple[Tube, bool]:
    bench = _attach(bench, cb, cfg, t)
    logger.info("Phase 3: keeping strands that visit every vertex")
    source = t.label
    for i in cb.vertex_ids:
        target = f"Temp_{i}"
        bench.run(Separate(source, (cb.vertex_pattern(i),), target))
        if not bench.run(Detect(target)):
            logger.info(f"Phase 3: no strand visits vertex {i}")
            return bench.tube(target), False
        source = target
    bench.run(Merge("N", source))
    return bench.tube("N"), True


def _anchor_charge(instance: RppInstance, anchor: Optional[Edge]) -> int:
    # a free anchor never shows up as an edge code, so its length is paid up front
    if anchor is None or anchor in set(instance.required):
        return 0
    return instance.length(*anchor)


def phase4_cost_check(t: Tube, instance: RppInstance, cb: Codebook, cfg: Optional[PipelineConfig] = None,
                      bench: Optional[Bench] = None) -> Tuple[bool, Optional[Strand]]:
    # returns whether a strand fits the budget, and the smallest one that does
    cfg = cfg or (bench.config if bench is not None else PipelineConfig())
    bench = _attach(bench, cb, cfg, t)
    free = [e for e in instance.free_edges if e != cb.excluded_edge]
    budget = free_budget(instance) - _anchor_charge(instance, cb.excluded_edge)
    if budget < 0:
        return False, None
    sweep = min(budget, sum(instance.lengths[e] for e in free))
    base = CODE_LENGTH * cb.vertices + CODE_LENGTH
    logger.info(f"Phase 4: {len(free)} free edges, sweeping {sweep + 1} lengths from {base + sweep}")

    bench.run(Append(t.label, cb.marker))
    for i, edge in enumerate(free, start=1):
        zone = f"Z_{i}"
        bench.run(Separate(t.label, tuple(sorted(cb.edge_patterns(edge))), zone, MatchRegion.PRE_MARKER))
        for chunk in append_chunks(instance.lengths[edge], cfg.filler):
            bench.run(Append(zone, chunk))
        bench.run(Merge(t.label, zone))

    bench.sweeping = True
    try:
        for i in range(sweep + 1):
            bench.run(Select(t.label, base + sweep - i, "F"))
            if bench.run(Detect("F")):
                strands = bench.tube("F").strands()
                return True, (strands[0] if strands else None)
    finally:
        bench.sweeping = False
    return False, None


def _anchors(instance: RppInstance) -> List[Edge]:
    if instance.required:
        return [instance.required_set[0]]
    # every Hamiltonian circuit leaves vertex 1 along one of its edges
    return [e for e in instance.edge_set if 1 in e]


def _run_attempt(instance: RppInstance, anchor: Edge, cfg: PipelineConfig,
                 dry: bool = False) -> Tuple[bool, Optional[Strand], Bench]:
    cb = build_codebook(instance, cfg.seed, anchor)
    bench = Bench(cb, cfg, dry=dry)
    walks = phase1_generate(cb, cfg, bench)
    kept = phase2_require_edges(walks, cb, cfg, bench)
    survivors, alive = phase3_vertex_check(kept, cb, cfg, bench)
    if not alive:
        return False, None, bench
    found, strand = phase4_cost_check(survivors, instance, cb, cfg, bench)
    return found, strand, bench


def _prepare(instance: RppInstance, cfg: PipelineConfig) -> Optional[Tuple[RppInstance, Dict[int, int]]]:
    validate(instance)
    if cfg.mode is AnnealMode.LITERAL and instance.vertices > LITERAL_MAX_VERTICES:
        logger.warning(f"Literal annealing refused for {instance.vertices} vertices")
        raise ConfigurationError(
            f"literal mode supports at most {LITERAL_MAX_VERTICES} vertices, got {instance.vertices}"
        )
    if instance.vertices < 3 or not instance.edges:
        return None
    return dfs_renumber(instance)


def solve(instance: RppInstance, cfg: Optional[PipelineConfig] = None) -> Decision:
    cfg = cfg or PipelineConfig()
    started = time.perf_counter()
    stats = PipelineStats()
    prepared = _prepare(instance, cfg)
    if prepared is None:
        logger.info("Decision NO: no Hamiltonian circuit can exist")
        return Decision(answer=Answer.NO, stats=stats)
    renumbered, permutation = prepared

    found, strand, bench = False, None, None
    for anchor in _anchors(renumbered):
        if free_budget(renumbered) - _anchor_charge(renumbered, anchor) < 0:
            continue
        found, strand, bench = _run_attempt(renumbered, anchor, cfg)
        stats.absorb(bench.stats)
        if found:
            break

    stats.wall_time = time.perf_counter() - started
    decision = Decision(answer=Answer.YES if found else Answer.NO, stats=stats)
    if bench is not None:
        decision.detect_log = list(bench.env.detect_log)
        decision.codebook = bench.codebook
        if cfg.trace:
            decision.trace = bench.program()
    if found and cfg.witness and strand is not None:
        decision.witness_strand = strand
        walk = decode_walk(strand, bench.codebook)
        if walk is None:
            logger.warning(f"Could not decode witness strand of length {len(strand)}")
        else:
            cycle = canonical_cycle(relabel(walk, invert(permutation)))
            decision.witness = cycle
            decision.cost = cycle_cost(instance, cycle)
    logger.info(f"Decision {decision.answer.value}: {stats.total_operations} operations in {stats.wall_time:.3f}s")
    return decision


def count_operations(instance: RppInstance, cfg: Optional[PipelineConfig] = None) -> PipelineStats:
    """Operation counts of the worst-case schedule, without simulating any tube."""
    cfg = cfg or PipelineConfig()
    prepared = _prepare(instance, cfg)
    stats = PipelineStats()
    if prepared is None:
        return stats
    renumbered, _ = prepared
    anchor = _anchors(renumbered)[0]
    _, _, bench = _run_attempt(renumbered, anchor, cfg, dry=True)
    stats.absorb(bench.stats)
    return stats


def fit_quadratic_bound(points: Sequence[Tuple[int, int]]) -> Tuple[float, float]:
    # least-squares fit of count = a * n^2 + b
    sizes = np.array([n for n, _ in points], dtype=float)
    counts = np.array([c for _, c in points], dtype=float)
    design = np.column_stack([sizes ** 2, np.ones_like(sizes)])
    (a, b), *_ = np.linalg.lstsq(design, counts, rcond=None)
    return float(a), float(b)


def solve_many(instances: Sequence[RppInstance], cfg: Optional[PipelineConfig] = None,
               workers: int = DEFAULT_WORKERS) -> List[Decision]:
    cfg = cfg or PipelineConfig()
    logger.info(f"Solving {len(instances)} instances on {workers} workers")
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        return list(executor.map(lambda inst: solve(inst, cfg), instances))
