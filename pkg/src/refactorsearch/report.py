"""Tables and distribution exports built from suite results."""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .experiments import SCHEMA_VERSION, SuiteResult

SUMMARY_COLUMNS = (
    "schema_version", "algorithm", "weight", "heuristic", "alpha", "repair",
    "instances", "solved", "mean_expansions", "mean_wall_time_s", "mean_cost",
    "mean_inter_deleted", "mean_intra_added", "mean_inter_deleted_net",
    "valid_before_rate", "valid_after_rate",
)

DISTRIBUTION_COLUMNS = (
    "algorithm", "weight", "heuristic", "alpha", "count", "min", "q1", "median", "q3", "max",
    "whisker_low", "whisker_high", "outliers",
)

HEURISTIC_ORDER = ("zero", "coupling", "cohesion", "additive")


def _alpha_key(alpha: str) -> Fraction:
    return Fraction(alpha)


def _fmt(value: Any, digits: int = 2) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.{digits}f}"
    return str(value)


def summary_csv_rows(suites: Iterable[SuiteResult]) -> list[list[Any]]:
    rows: list[list[Any]] = [list(SUMMARY_COLUMNS)]
    for suite in suites:
        c, agg = suite.config, suite.aggregate
        rows.append([SCHEMA_VERSION, c.algorithm, c.weight, c.heuristic, c.alpha, int(c.repair)]
                    + [agg[k] for k in SUMMARY_COLUMNS[6:]])
    return rows


def render_table(header: Sequence[str], rows: Sequence[Sequence[Any]], title: str = "") -> str:
    cells = [[str(h) for h in header]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = [title] if title else []
    for n, row in enumerate(cells):
        lines.append("  ".join(c.rjust(w) if i else c.ljust(w) for i, (c, w) in enumerate(zip(row, widths))))
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def heuristic_table(suites: Sequence[SuiteResult]) -> tuple[list[str], list[list[str]]]:
    """Heuristic rows by alpha columns of (expansions, time, cost), A* runs only."""
    cells: dict[tuple[str, str], SuiteResult] = {}
    for s in suites:
        if s.config.algorithm == "astar":
            cells[(s.config.heuristic, s.config.alpha)] = s
    alphas = sorted({a for _, a in cells}, key=_alpha_key)
    heuristics = [h for h in HEURISTIC_ORDER if any(k[0] == h for k in cells)]
    header = ["heuristic"]
    for a in alphas:
        header += [f"exp@{a}", f"time@{a}", f"cost@{a}"]
    rows = []
    for h in heuristics:
        row = [h]
        for a in alphas:
            agg = cells[(h, a)].aggregate if (h, a) in cells else {}
            row += [_fmt(agg.get("mean_expansions"), 0), _fmt(agg.get("mean_wall_time_s"), 3), _fmt(agg.get("mean_cost"))]
        rows.append(row)
    return header, rows


def repair_table(suites: Sequence[SuiteResult], heuristic: str = "additive") -> tuple[list[str], list[list[str]]]:
    """Validity and inter-edge deletions before and after repair, per alpha."""
    chosen = [s for s in suites if s.config.algorithm == "astar" and s.config.repair]
    if any(s.config.heuristic == heuristic for s in chosen):
        chosen = [s for s in chosen if s.config.heuristic == heuristic]
    by_alpha: dict[str, SuiteResult] = {}
    for s in chosen:
        by_alpha.setdefault(s.config.alpha, s)
    header = ["alpha", "valid_before", "deleted_before", "valid_after", "deleted_after", "repair_added"]
    rows = []
    for a in sorted(by_alpha, key=_alpha_key):
        agg = by_alpha[a].aggregate
        rows.append([a, _fmt(agg["valid_before_rate"]), _fmt(agg["mean_inter_deleted"]),
                     _fmt(agg["valid_after_rate"]), _fmt(agg["mean_inter_deleted_net"]),
                     _fmt(agg["mean_repair_edges_added"])])
    return header, rows


def algorithm_table(suites: Sequence[SuiteResult], heuristic: str = "additive") -> tuple[list[str], list[list[str]]]:
    """A* and WA*(w) rows by alpha columns of (expansions, time, cost, valid)."""
    cells: dict[tuple[int, str], SuiteResult] = {}
    for s in suites:
        if s.config.heuristic == heuristic:
            cells[(s.config.weight, s.config.alpha)] = s
    alphas = sorted({a for _, a in cells}, key=_alpha_key)
    weights = sorted({w for w, _ in cells})
    header = ["algorithm"]
    for a in alphas:
        header += [f"exp@{a}", f"time@{a}", f"cost@{a}", f"valid@{a}"]
    rows = []
    for w in weights:
        row = ["A*" if w == 1 else f"WA*({w})"]
        for a in alphas:
            agg = cells[(w, a)].aggregate if (w, a) in cells else {}
            row += [_fmt(agg.get("mean_expansions"), 0), _fmt(agg.get("mean_wall_time_s"), 3),
                    _fmt(agg.get("mean_cost")), _fmt(agg.get("valid_after_rate"))]
        rows.append(row)
    return header, rows


@dataclass
class BoxStats:
    count: int
    minimum: float
    q1: float
    median: float
    q3: float
    maximum: float
    whisker_low: float
    whisker_high: float
    outliers: list[float]


def box_stats(values: Sequence[float]) -> BoxStats:
    """Quartiles by linear interpolation; whiskers at the furthest data within 1.5 IQR."""
    if not values:
        raise ValueError("box_stats needs at least one value")
    data = sorted(values)
    if len(data) == 1:
        q1 = median = q3 = float(data[0])
    else:
        q1, median, q3 = statistics.quantiles(data, n=4, method="inclusive")
    iqr = q3 - q1
    low_fence, high_fence = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    inside = [v for v in data if low_fence <= v <= high_fence]
    outliers = [v for v in data if v < low_fence or v > high_fence]
    return BoxStats(len(data), data[0], q1, median, q3, data[-1], inside[0], inside[-1], outliers)


def distribution_rows(suites: Sequence[SuiteResult]) -> list[list[Any]]:
    """Per-config expansion distributions for external box plots."""
    rows: list[list[Any]] = [list(DISTRIBUTION_COLUMNS)]
    for s in suites:
        values = [r.expansions for r in s.records if r.solved]
        if not values:
            continue
        b = box_stats(values)
        c = s.config
        rows.append([c.algorithm, c.weight, c.heuristic, c.alpha, b.count, b.minimum, b.q1, b.median, b.q3,
                     b.maximum, b.whisker_low, b.whisker_high, ";".join(str(v) for v in b.outliers)])
    return rows


def summarize(suites: Sequence[SuiteResult]) -> str:
    if not suites:
        raise ValueError("summarize needs at least one result file")
    parts = []
    header, rows = heuristic_table(suites)
    if rows:
        parts.append(render_table(header, rows, "A* by heuristic (mean expansions, seconds, cost)"))
    header, rows = repair_table(suites)
    if rows:
        parts.append(render_table(header, rows, "Repair (validity rate, mean inter-edges deleted)"))
    weights = {s.config.weight for s in suites}
    if len(weights) > 1 or weights != {1}:
        header, rows = algorithm_table(suites)
        if rows:
            parts.append(render_table(header, rows, "A* vs WA* (additive)"))
    return "\n\n".join(parts)
