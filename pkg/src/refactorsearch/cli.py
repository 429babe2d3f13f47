"""Command-line entry point: gen, solve, suggest, ingest, bench, summarize."""

from __future__ import annotations

import argparse
import csv
import itertools
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import kernels
from .experiments import RunConfig, SchemaError, load_instances, read_suite, run_suite, write_suite
from .generate import GENERATOR, InstanceSpec, generate_batch
from .ingest import IngestError, scan_project
from .problem import HEURISTICS
from .projectfile import ProjectFileError, emit_project_file, load_project_file
from .report import distribution_rows, summarize, summary_csv_rows
from .search import SearchStatus
from .suggest import SuggestionError, suggest

log = logging.getLogger("refactorsearch")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_TIMEOUT = 3
EXIT_UNSOLVABLE = 4
EXIT_INTERNAL = 5

OUTPUT_ENV = "REFACTORSEARCH_OUTPUT_DIR"


class InputError(ValueError):
    pass


def _output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_ENV, "results"))


def _csv_list(kind):
    def parse(text: str):
        try:
            return [kind(part) for part in text.split(",") if part.strip()]
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc
    return parse


def _on_off(text: str) -> bool:
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return text == "on"


def _add_search_flags(p: argparse.ArgumentParser, sweep: bool = False) -> None:
    if not sweep:
        p.add_argument("--algorithm", choices=("astar", "wastar"), default="astar")
        p.add_argument("--weight", type=int, default=None, help="WA* weight (integer >= 1); astar implies 1")
        p.add_argument("--heuristic", choices=sorted(HEURISTICS), default="additive")
        p.add_argument("--alpha", default="0.5", help="cohesion aggression in [0, 1] (default 0.5)")
    p.add_argument("--repair", type=_on_off, default=True, metavar="{on,off}")
    p.add_argument("--max-expansions", type=int, default=None)
    p.add_argument("--max-seconds", type=float, default=None)


def _single_config(args, inputs, output=None) -> RunConfig:
    weight = args.weight if args.weight is not None else (1 if args.algorithm == "astar" else 5)
    return RunConfig(
        algorithm=args.algorithm, weight=weight, heuristic=args.heuristic, alpha=args.alpha,
        repair=args.repair, max_expansions=args.max_expansions, max_seconds=args.max_seconds,
        inputs=tuple(str(i) for i in inputs), output=None if output is None else str(output),
        workers=getattr(args, "workers", 1),
    )


def cmd_gen(args) -> int:
    spec = InstanceSpec(args.classes, args.modules, args.seed, args.count)
    out = Path(args.out) if args.out else _output_dir() / "instances"
    out.mkdir(parents=True, exist_ok=True)
    for iid, seed, state in generate_batch(spec):
        meta = {"instance_id": iid, "seed": seed, "generator": GENERATOR,
                "n_classes": spec.n_classes, "n_modules": spec.n_modules}
        emit_project_file(state, out / f"{iid}.json", meta)
    print(f"wrote {spec.count} instance(s) to {out}")
    return EXIT_OK


def _suite_exit(statuses: list[str]) -> int:
    if any(s == "error" for s in statuses):
        return EXIT_INTERNAL
    if any(s == SearchStatus.TIMEOUT.value for s in statuses):
        return EXIT_TIMEOUT
    if any(s == SearchStatus.UNSOLVABLE.value for s in statuses):
        return EXIT_UNSOLVABLE
    return EXIT_OK


def cmd_solve(args) -> int:
    out = Path(args.out) if args.out else None
    config = _single_config(args, args.input, out)
    if out is None:
        out = _output_dir() / f"{config.label}.jsonl"
        config = replace(config, output=str(out))
    suite = run_suite(config)
    path, csv_path = write_suite(suite, out)
    agg = suite.aggregate
    print(f"{config.label}: {agg['solved']}/{agg['instances']} solved, "
          f"mean expansions {agg['mean_expansions']}, mean cost {agg['mean_cost']}, "
          f"valid after repair {agg['valid_after_rate']}")
    print(f"records: {path}\nsummary: {csv_path}")
    return _suite_exit([r.status for r in suite.records])


def cmd_suggest(args) -> int:
    state = load_project_file(args.project)
    config = _single_config(args, [args.project])
    try:
        result = suggest(state, config)
    except SuggestionError as exc:
        print(f"no suggestions: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT if exc.outcome.status is SearchStatus.TIMEOUT else EXIT_UNSOLVABLE
    for line in result.lines:
        print(line)
    print(result.summary())
    return EXIT_OK


def cmd_ingest(args) -> int:
    state, report = scan_project(args.root)
    emit_project_file(state, args.out, {"source_root": str(Path(args.root).resolve().name)})
    print(f"classes: {report.classes_found}\nmodules: {report.modules_found}\n"
          f"dependencies: {report.dependencies_found}")
    for rel, ident in report.unresolved_references:
        print(f"unresolved: {ident} ({rel})")
    for skipped in report.skipped_files:
        print(f"skipped: {skipped}")
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_bench(args) -> int:
    out = Path(args.out) if args.out else _output_dir() / "bench"
    out.mkdir(parents=True, exist_ok=True)
    if args.input:
        inputs = [str(p) for p in args.input]
    else:
        inst_dir = out / "instances"
        inst_dir.mkdir(exist_ok=True)
        spec = InstanceSpec(args.classes, args.modules, args.seed, args.count)
        for iid, seed, state in generate_batch(spec):
            emit_project_file(state, inst_dir / f"{iid}.json",
                              {"instance_id": iid, "seed": seed, "generator": GENERATOR,
                               "n_classes": spec.n_classes, "n_modules": spec.n_modules})
        inputs = [str(inst_dir)]
    instances = load_instances(inputs)
    suites = []
    statuses: list[str] = []
    for heuristic, alpha, weight in itertools.product(args.heuristics, args.alphas, args.weights):
        config = RunConfig(
            algorithm="astar" if weight == 1 else "wastar", weight=weight, heuristic=heuristic, alpha=alpha,
            repair=args.repair, max_expansions=args.max_expansions, max_seconds=args.max_seconds,
            inputs=tuple(inputs), seed=None if args.input else args.seed, workers=args.workers,
        )
        path = out / f"{config.label}.jsonl"
        config = replace(config, output=str(path))
        suite = run_suite(config, instances)
        write_suite(suite, path)
        suites.append(suite)
        statuses += [r.status for r in suite.records]
        log.info("%s done", config.label)
    _write_rows(out / "summary.csv", summary_csv_rows(suites))
    _write_rows(out / "expansions_distribution.csv", distribution_rows(suites))
    print(summarize(suites))
    print(f"\nresults in {out}")
    return _suite_exit(statuses)


def _write_rows(path: Path, rows) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        csv.writer(fh).writerows(rows)


def cmd_summarize(args) -> int:
    if not args.files:
        raise InputError("summarize needs at least one result file")
    suites = [read_suite(f) for f in args.files]
    print(summarize(suites))
    if args.dist_out:
        _write_rows(Path(args.dist_out), distribution_rows(suites))
        print(f"\nexpansion distribution: {args.dist_out}")
    if args.csv_out:
        _write_rows(Path(args.csv_out), summary_csv_rows(suites))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="refactorsearch", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate random benchmark projects")
    p.add_argument("--classes", type=int, default=25)
    p.add_argument("--modules", type=int, default=15)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help=f"output directory (default ${OUTPUT_ENV}/instances)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="solve project files under one configuration")
    p.add_argument("--input", action="append", required=True, help="project file or directory; repeatable")
    _add_search_flags(p)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="result file (.jsonl); a .csv summary is written beside it")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("suggest", help="print refactoring suggestions for one project")
    p.add_argument("--project", required=True)
    _add_search_flags(p)
    p.set_defaults(func=cmd_suggest)

    p = sub.add_parser("ingest", help="extract a project file from a Java source tree")
    p.add_argument("--root", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("bench", help="sweep heuristics, alphas and weights over a benchmark set")
    p.add_argument("--input", action="append", help="instance file or directory; generates instances if absent")
    p.add_argument("--classes", type=int, default=25)
    p.add_argument("--modules", type=int, default=15)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--heuristics", type=_csv_list(str), default=list(HEURISTICS))
    p.add_argument("--alphas", type=_csv_list(str), default=["0.25", "0.5", "0.75", "1.0"])
    p.add_argument("--weights", type=_csv_list(int), default=[1], help="1 means A*, larger values WA*")
    _add_search_flags(p, sweep=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help=f"output directory (default ${OUTPUT_ENV}/bench)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("summarize", help="tables and distribution export from result files")
    p.add_argument("files", nargs="*")
    p.add_argument("--dist-out", help="CSV of per-config expansion quartiles, whiskers and outliers")
    p.add_argument("--csv-out", help="CSV of aggregate rows")
    p.set_defaults(func=cmd_summarize)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    log.debug("kernel backend: %s", kernels.BACKEND)
    try:
        return args.func(args)
    except (InputError, ProjectFileError, IngestError, SchemaError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # anything else is a bug
        log.exception("internal error")
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
