"""Pydantic schemas for index files and command-line result records."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class IndexMeta(BaseModel):
    """Header section of an index file."""

    model_config = {"extra": "forbid"}

    version: int = 1
    lam: int = Field(..., ge=1)
    mode: Literal["static", "dynamic"]
    r: int | None = None
    leaf_cutoff: int = Field(..., ge=1)
    max_capacity: int = Field(..., ge=0)
    nodes: int
    next_key: int
    frontier: list[int]


class DDGRecord(BaseModel):
    """Boundary distance table of one DDG; None marks an unreachable pair."""

    model_config = {"extra": "forbid"}

    key: int
    boundary: list[int]
    table: list[list[int | None]]
    price: list[tuple[int, int]] = Field(default_factory=list)  # (vertex, price), sorted


class PairRecord(BaseModel):
    """Stored outcome for one ordered pair of split-set faces."""

    model_config = {"extra": "forbid"}

    key: int
    x: tuple[int, int]  # (face, origin node)
    y: tuple[int, int]
    negative: bool
    cycle: list[int] = Field(default_factory=list)
    ddg: DDGRecord | None = None


class NodeRecord(BaseModel):
    """Plain DDG and pair data of one decomposition node."""

    model_config = {"extra": "forbid"}

    id: int
    plain: DDGRecord
    pairs: list[PairRecord] = Field(default_factory=list)


# Command-line records. Each prints as one line of key=value pairs.


class GraphSummary(BaseModel):
    """Result of `gen`."""

    n: int
    m: int
    faces: int
    components: int
    seed: int | None = None
    out: str | None = None


class DistanceRecord(BaseModel):
    """Result of `sssp`."""

    source: int
    reachable: int
    dist: list[int | None]


class CycleRecord(BaseModel):
    """Result of `negcycle`."""

    status: Literal["negative_cycle", "feasible"]
    weight: int | None = None
    edges: list[int] = Field(default_factory=list)


class FlowRecord(BaseModel):
    """Result of `maxflow`."""

    s: int
    t: int
    method: Literal["exact", "lambda", "approx"]
    value: int | None = None
    lam: int | None = None
    feasible: bool | None = None
    eps: str | None = None


class IndexSummary(BaseModel):
    """Result of `oracle build` and `oracle update`."""

    lam: int
    mode: Literal["static", "dynamic"]
    nodes: int
    depth: int
    digest: str
    out: str | None = None
    recomputed: list[int] | None = None


class QueryRecord(BaseModel):
    """Result of `oracle query`."""

    s: int
    t: int
    lam: int
    feasible: bool


class CutRecord(BaseModel):
    """Result of `oracle cut`."""

    s: int
    t: int
    lam: int
    status: Literal["cut", "feasible"]
    edges: list[int] = Field(default_factory=list)
    capacity: int = 0


class RoutingRecord(BaseModel):
    """Result of `route`."""

    status: Literal["routed", "infeasible"]
    flow_edges: int = 0
    deficit: int = 0
    cut: list[int] = Field(default_factory=list)


class MatchingRecord(BaseModel):
    """Result of `match`."""

    status: Literal["perfect", "none"]
    edges: list[int] = Field(default_factory=list)


class BenchRecord(BaseModel):
    """One timing line of `bench`."""

    seed: int
    n: int
    task: str
    seconds: float
    result: str


class VerifyRecord(BaseModel):
    """Summary of `verify`."""

    checks: int
    failures: int
    ok: bool
    failed: list[str] = Field(default_factory=list)


def _value(v: object) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.4f}"
    if isinstance(v, (list, tuple)):
        return ",".join("inf" if x is None else _value(x) for x in v) or "-"
    return str(v)


def format_record(record: BaseModel) -> str:
    """``key=value`` pairs in field order; lists are comma separated."""
    return " ".join(f"{k}={_value(v)}" for k, v in record.model_dump().items())
