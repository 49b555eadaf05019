from pathlib import Path
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from src.graph_model import Decision, RppInstance
from src.oracle import OracleResult


class EdgeRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    u: int
    v: int
    length: int = Field(default=1, alias="len")
    required: bool = False


class InstanceRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vertices: int
    edges: List[EdgeRecord] = Field(default_factory=list)
    budget: int = 0

    def to_instance(self) -> RppInstance:
        return RppInstance.build(
            vertices=self.vertices,
            edges=[(e.u, e.v, e.length) for e in self.edges],
            required=[(e.u, e.v) for e in self.edges if e.required],
            budget=self.budget,
        )

    @classmethod
    def from_instance(cls, instance: RppInstance) -> "InstanceRecord":
        required = set(instance.required)
        return cls(
            vertices=instance.vertices,
            edges=[
                EdgeRecord(u=u, v=v, length=instance.lengths[(u, v)], required=(u, v) in required)
                for u, v in instance.edges
            ],
            budget=instance.budget,
        )


class StatsRecord(BaseModel):
    operations: Dict[str, int]
    total_operations: int
    sweep_operations: int
    max_distinct_strands: int


class DecisionRecord(BaseModel):
    answer: str
    witness: Optional[List[int]] = None
    cost: Optional[int] = None
    stats: StatsRecord


class OracleRecord(BaseModel):
    answer: str
    feasible: bool
    min_cost: Optional[int] = None
    best_cycle: Optional[List[int]] = None


def parse_instance(text: str) -> RppInstance:
    # raises pydantic.ValidationError on malformed documents
    return InstanceRecord.model_validate_json(text).to_instance()


def load_instance(path: Union[str, Path]) -> RppInstance:
    return parse_instance(Path(path).read_text())


def dump_instance(instance: RppInstance) -> str:
    return InstanceRecord.from_instance(instance).model_dump_json(by_alias=True, indent=2)


def decision_record(decision: Decision) -> DecisionRecord:
    stats = decision.stats
    return DecisionRecord(
        answer=decision.answer.value,
        witness=list(decision.witness) if decision.witness is not None else None,
        cost=decision.cost,
        stats=StatsRecord(
            operations=dict(sorted(stats.operations.items())),
            total_operations=stats.total_operations,
            sweep_operations=stats.sweep_operations,
            max_distinct_strands=stats.max_distinct_strands,
        ),
    )


def decision_json(decision: Decision) -> str:
    return decision_record(decision).model_dump_json()


def decision_text(decision: Decision) -> str:
    stats = decision.stats
    lines = [f"answer: {decision.answer.value}"]
    if decision.witness is not None:
        lines.append(f"witness: {' '.join(str(v) for v in decision.witness)}")
        lines.append(f"cost: {decision.cost}")
    lines.append(f"operations: {stats.total_operations} (sweep {stats.sweep_operations})")
    lines += [f"  {name}: {count}" for name, count in sorted(stats.operations.items())]
    lines.append(f"max distinct strands: {stats.max_distinct_strands}")
    lines.append(f"wall time: {stats.wall_time:.3f}s")
    return "\n".join(lines)


def oracle_json(result: OracleResult) -> str:
    return OracleRecord(
        answer=result.answer.value,
        feasible=result.feasible,
        min_cost=result.min_cost,
        best_cycle=list(result.best_cycle) if result.best_cycle is not None else None,
    ).model_dump_json()


def oracle_text(result: OracleResult) -> str:
    lines = [f"answer: {result.answer.value}", f"feasible: {'yes' if result.feasible else 'no'}"]
    if result.feasible:
        lines.append(f"min cost: {result.min_cost}")
        lines.append(f"best cycle: {' '.join(str(v) for v in result.best_cycle)}")
    return "\n".join(lines)
