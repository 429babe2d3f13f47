"""Experiment runs: configuration, per-instance records and suite files."""

from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

from .graph import Action, ActionKind, Edge, ProjectState, replay, transitive_closure, validity_violations
from .problem import HEURISTICS, RefactorProblem, parse_alpha
from .projectfile import ProjectFileError, read_project_file
from .repair import repair
from .search import SearchLimits, SearchStatus, best_first_search

SCHEMA_VERSION = 1
ALGORITHMS = ("astar", "wastar")
TIMING_FIELDS = ("wall_time_s", "repair_time_s")
AGGREGATE_TIMING_FIELDS = ("mean_wall_time_s", "mean_repair_time_s")


class SchemaError(ValueError):
    """A result file was written under a different schema version."""


@dataclass(frozen=True)
class RunConfig:
    algorithm: str = "astar"
    weight: int = 1
    heuristic: str = "additive"
    alpha: str = "0.5"
    repair: bool = True
    max_expansions: Optional[int] = None
    max_seconds: Optional[float] = None
    inputs: tuple[str, ...] = ()
    output: Optional[str] = None
    seed: Optional[int] = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        if int(self.weight) != self.weight or self.weight < 1:
            raise ValueError(f"weight must be an integer >= 1, got {self.weight!r}")
        if self.algorithm == "astar" and self.weight != 1:
            raise ValueError("astar runs with weight 1; use --algorithm wastar for other weights")
        if self.heuristic not in HEURISTICS:
            raise ValueError(f"heuristic must be one of {sorted(HEURISTICS)}, got {self.heuristic!r}")
        object.__setattr__(self, "alpha", str(self.alpha))
        parse_alpha(self.alpha)
        object.__setattr__(self, "inputs", tuple(self.inputs))
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        SearchLimits(self.max_expansions, self.max_seconds)

    @property
    def limits(self) -> SearchLimits:
        return SearchLimits(self.max_expansions, self.max_seconds)

    @property
    def label(self) -> str:
        return f"{self.algorithm}-w{self.weight}-{self.heuristic}-a{self.alpha}-{'repair' if self.repair else 'norepair'}"

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["inputs"] = list(self.inputs)
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "RunConfig":
        d = dict(d)
        d["inputs"] = tuple(d.get("inputs", ()))
        return cls(**d)


@dataclass
class ResultRecord:
    instance_id: str
    status: str
    expansions: int = 0
    generated: int = 0
    wall_time_s: float = 0.0
    cost: Optional[int] = None
    inter_deleted: Optional[int] = None
    intra_added: Optional[int] = None
    valid_before_repair: Optional[bool] = None
    valid_after_repair: Optional[bool] = None
    violations_before: Optional[int] = None
    violations_after: Optional[int] = None
    repair_edges_added: Optional[int] = None
    inter_deleted_net: Optional[int] = None
    repair_time_s: float = 0.0
    initial_h: Optional[int] = None
    coupling_before: Optional[int] = None
    coupling_after: Optional[int] = None
    cohesion_before: Optional[int] = None
    cohesion_after: Optional[int] = None
    plan: list = field(default_factory=list)
    repair_edges: list = field(default_factory=list)
    error: Optional[str] = None

    @property
    def solved(self) -> bool:
        return self.status == SearchStatus.SOLVED.value

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ResultRecord":
        return cls(**d)


def encode_plan(plan: Iterable[Action]) -> list[list]:
    return [[a.kind.value, a.edge.source, a.edge.target] for a in plan]


def decode_plan(rows: Iterable[Sequence]) -> list[Action]:
    return [Action(ActionKind(kind), Edge(int(u), int(v))) for kind, u, v in rows]


def solve_instance(instance_id: str, state: ProjectState, config: RunConfig) -> ResultRecord:
    """One search plus optional repair. Search time excludes repair and I/O."""
    problem = RefactorProblem(state, config.alpha)
    outcome = best_first_search(problem, problem.heuristic(config.heuristic), config.weight, config.limits)
    record = ResultRecord(
        instance_id,
        outcome.status.value,
        expansions=outcome.expansions,
        generated=outcome.generated,
        wall_time_s=outcome.wall_time,
        initial_h=outcome.initial_h,
        coupling_before=state.inter_count,
        cohesion_before=state.intra_count,
    )
    if not outcome.solved:
        return record
    terminal = outcome.terminal_state
    deletes = sum(1 for a in outcome.plan if a.kind is ActionKind.DELETE_INTER)
    record.cost = outcome.cost
    record.inter_deleted = deletes
    record.intra_added = len(outcome.plan) - deletes
    record.plan = encode_plan(outcome.plan)

    start = time.perf_counter()
    closure = transitive_closure(state)
    if config.repair:
        fixed = repair(closure, terminal, state)
        final = fixed.state
        record.violations_before = fixed.violations_before
        record.violations_after = fixed.violations_after
        record.repair_edges = [list(e) for e in fixed.added_edges]
    else:
        final = terminal
        record.violations_before = record.violations_after = validity_violations(closure, terminal)
    record.repair_time_s = time.perf_counter() - start
    record.valid_before_repair = record.violations_before == 0
    record.valid_after_repair = record.violations_after == 0
    record.repair_edges_added = len(record.repair_edges)
    record.inter_deleted_net = state.inter_count - final.inter_count
    record.coupling_after = final.inter_count
    record.cohesion_after = final.intra_count
    return record


def _solve_safely(args: tuple[str, ProjectState, RunConfig]) -> ResultRecord:
    instance_id, state, config = args
    try:
        return solve_instance(instance_id, state, config)
    except Exception as exc:  # recorded per instance; the suite keeps going
        return ResultRecord(instance_id, "error", error=f"{type(exc).__name__}: {exc}")


def _mean(values: list[float]) -> Optional[float]:
    return math.fsum(values) / len(values) if values else None


def aggregate(records: Sequence[ResultRecord]) -> dict[str, Any]:
    """Means over solved records; validity rates are fractions of solved records."""
    solved = [r for r in records if r.solved]
    return {
        "instances": len(records),
        "solved": len(solved),
        "timeouts": sum(1 for r in records if r.status == SearchStatus.TIMEOUT.value),
        "unsolvable": sum(1 for r in records if r.status == SearchStatus.UNSOLVABLE.value),
        "errors": sum(1 for r in records if r.status == "error"),
        "mean_expansions": _mean([r.expansions for r in solved]),
        "mean_generated": _mean([r.generated for r in solved]),
        "mean_wall_time_s": _mean([r.wall_time_s for r in solved]),
        "mean_repair_time_s": _mean([r.repair_time_s for r in solved]),
        "mean_cost": _mean([r.cost for r in solved]),
        "mean_inter_deleted": _mean([r.inter_deleted for r in solved]),
        "mean_intra_added": _mean([r.intra_added for r in solved]),
        "mean_inter_deleted_net": _mean([r.inter_deleted_net for r in solved]),
        "mean_repair_edges_added": _mean([r.repair_edges_added for r in solved]),
        "valid_before_rate": _mean([float(r.valid_before_repair) for r in solved]),
        "valid_after_rate": _mean([float(r.valid_after_repair) for r in solved]),
    }


@dataclass
class SuiteResult:
    config: RunConfig
    records: list[ResultRecord]
    instances: list[str] = field(default_factory=list)

    @property
    def aggregate(self) -> dict[str, Any]:
        return aggregate(self.records)


def load_instances(paths: Iterable[str | Path]) -> list[tuple[str, ProjectState]]:
    """Project files, or directories of ``*.json`` project files, sorted by path."""
    files: list[Path] = []
    for p in map(Path, paths):
        if p.is_dir():
            files.extend(sorted(p.glob("*.json")))
        elif p.is_file():
            files.append(p)
        else:
            raise ProjectFileError(f"{p}: no such file or directory")
    if not files:
        raise ProjectFileError("no instance files found")
    out = []
    for f in files:
        loaded = read_project_file(f)
        out.append((str(loaded.meta.get("instance_id", f.stem)), loaded.state))
    return out


def run_suite(
    config: RunConfig,
    instances: Sequence[tuple[str, ProjectState]] | None = None,
) -> SuiteResult:
    """Solve every instance under ``config``; records are ordered by instance id."""
    if instances is None:
        instances = load_instances(config.inputs)
    jobs = [(iid, state, config) for iid, state in instances]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(_solve_safely, jobs))
    else:
        records = [_solve_safely(job) for job in jobs]
    records.sort(key=lambda r: r.instance_id)
    return SuiteResult(config, records, sorted(iid for iid, _ in instances))


def _dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def write_suite(suite: SuiteResult, path: str | Path) -> tuple[Path, Path]:
    """Write line-delimited records plus a one-row CSV summary beside them."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [_dumps({"kind": "config", "schema_version": SCHEMA_VERSION,
                     "config": suite.config.to_dict(), "instances": suite.instances})]
    lines += [_dumps({"kind": "record", "schema_version": SCHEMA_VERSION, **r.to_dict()}) for r in suite.records]
    lines.append(_dumps({"kind": "aggregate", "schema_version": SCHEMA_VERSION, **suite.aggregate}))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    csv_path = path.with_suffix(".csv")
    from .report import summary_csv_rows

    with csv_path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for row in summary_csv_rows([suite]):
            writer.writerow(row)
    return path, csv_path


def read_suite(path: str | Path) -> SuiteResult:
    path = Path(path)
    config = None
    instances: list[str] = []
    records: list[ResultRecord] = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                doc = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: {exc.msg}") from exc
            version = doc.pop("schema_version", None)
            if version != SCHEMA_VERSION:
                raise SchemaError(f"{path}:{lineno}: schema version {version!r}, expected {SCHEMA_VERSION}")
            kind = doc.pop("kind", None)
            if kind == "config":
                config = RunConfig.from_dict(doc["config"])
                instances = list(doc.get("instances", []))
            elif kind == "record":
                records.append(ResultRecord.from_dict(doc))
    if config is None:
        raise ValueError(f"{path}: no config line")
    return SuiteResult(config, records, instances)


def strip_timing(doc: dict[str, Any]) -> dict[str, Any]:
    """Drop wall-clock fields so two runs of one config compare equal."""
    return {k: v for k, v in doc.items() if k not in TIMING_FIELDS and k not in AGGREGATE_TIMING_FIELDS}


def replay_record(state: ProjectState, record: ResultRecord) -> ProjectState:
    """Rebuild a record's final state (plan, then repair edges) from its instance."""
    final = replay(state, decode_plan(record.plan))
    for u, v in record.repair_edges:
        final = final.with_edge((u, v))
    return final
