"""Command-line front end: validate -> closure -> reduce -> emit -> check.

Exit codes: 0 success, 1 parse/validation error, 2 internal invariant
failure, 3 normal-form violation, 4 unknown verdicts present.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .chase import ChaseLimitExceeded
from .core import (
    CategoryGraph,
    DependencySet,
    SchemaError,
    graph_to_fds,
    is_valid,
    parse_schema,
    serialize_schema,
    validate,
)
from .emit import (
    decompose_hybrid,
    emit_dtd,
    emit_property_graph,
    emit_relational,
    render_dtd,
    render_hybrid,
    render_property_graph,
    render_sql,
)
from .fdclosure import fd_closure_graph
from .mvdclosure import fd_mvd_closure_graph
from .nf import (
    check_4nf,
    check_bcnf,
    check_improved_bcnf,
    check_xml_nf,
    derive_xml_fds,
)
from .reduce import ReductionTrace, first_reduced, second_reduced

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2
EXIT_VIOLATED = 3
EXIT_UNKNOWN = 4

EMIT_TARGETS = ("relational", "dtd", "pg", "hybrid")
CHECKS = ("bcnf", "improved-bcnf", "4nf", "xmlnf")


@dataclass
class PipelineConfig:
    input_path: Path
    level: int = 0
    targets: tuple[str, ...] = ()
    checks: tuple[str, ...] = ()
    trace: bool = False
    out_dir: Path | None = None
    to_stdout: bool = False
    assignment_path: Path | None = None
    write_schema: bool = False
    closure_only: bool = False
    validate_only: bool = False


def _err(msg: str):
    print(f"catnorm: {msg}", file=sys.stderr)


def _load(path: Path) -> tuple[CategoryGraph, DependencySet]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}")
    return parse_schema(text)


def _write(config: PipelineConfig, name: str, content: str):
    if config.to_stdout:
        sys.stdout.write(content)
        return
    out_dir = config.out_dir or config.input_path.parent
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / name).write_text(content, encoding="utf-8")


def _reduce(graph: CategoryGraph, deps: DependencySet,
            level: int) -> tuple[CategoryGraph, ReductionTrace]:
    if level == 1:
        return first_reduced(graph, deps.fds)
    if level == 2:
        return second_reduced(graph, deps.fds, deps.mvds)
    return graph, ReductionTrace()


def _check_deps(graph: CategoryGraph, deps: DependencySet) -> DependencySet:
    """Dependencies an emitted schema is checked against: the reduced
    graph's own FDs plus everything declared."""
    return DependencySet(fds=tuple(graph_to_fds(graph)) + tuple(deps.fds),
                         mvds=tuple(deps.mvds))


def _run_checks(config: PipelineConfig, graph: CategoryGraph,
                deps: DependencySet, summary: list[str]) -> list:
    reports = []
    check_deps = _check_deps(graph, deps)
    if {"bcnf", "improved-bcnf", "4nf"} & set(config.checks):
        schema = emit_relational(graph)
        if "bcnf" in config.checks:
            reports += [check_bcnf(r, check_deps) for r in schema.relations]
        if "improved-bcnf" in config.checks:
            reports.append(check_improved_bcnf(schema, check_deps))
        if "4nf" in config.checks:
            reports += [check_4nf(r, check_deps) for r in schema.relations]
    if "xmlnf" in config.checks:
        dtd = emit_dtd(graph)
        reports.append(check_xml_nf(dtd, derive_xml_fds(graph, dtd)))
    for rep in reports:
        summary.append(f"  check {rep.subject}: {rep.verdict}")
    return reports


def run_pipeline(config: PipelineConfig) -> int:
    try:
        graph, deps = _load(config.input_path)
        report = validate(graph, deps)
        for v in report:
            _err(f"{v.severity}: [{v.code}] {v.message}")
        if not is_valid(report):
            return EXIT_INPUT
        if config.assignment_path is not None:
            assignment = json.loads(
                config.assignment_path.read_text(encoding="utf-8"))
        else:
            assignment = None
        if "hybrid" in config.targets and assignment is None:
            _err("hybrid emission requires --assignment")
            return EXIT_INPUT
    except (SchemaError, json.JSONDecodeError) as e:
        _err(str(e))
        return EXIT_INPUT

    stem = config.input_path.stem
    summary = [f"input: {len(graph.objects)} objects, "
               f"{len(graph.arrows)} arrows"]
    try:
        if config.validate_only:
            print("\n".join(summary), file=sys.stderr)
            return EXIT_OK

        if config.closure_only:
            provenance: list = []
            if deps.mvds:
                closed = fd_mvd_closure_graph(graph, deps.fds, deps.mvds,
                                              provenance)
            else:
                closed = fd_closure_graph(graph, deps.fds, provenance)
            summary.append(f"closure: {len(closed.objects)} objects, "
                           f"{len(closed.arrows)} arrows")
            _write(config, f"{stem}.closure.json",
                   serialize_schema(closed, deps, provenance))
            print("\n".join(summary), file=sys.stderr)
            return EXIT_OK

        reduced, trace = _reduce(graph, deps, config.level)
        if config.level:
            summary.append(f"{config.level}RR: {len(reduced.objects)} "
                           f"objects, {len(reduced.arrows)} arrows")
        if config.trace:
            _write(config, f"{stem}.trace.json",
                   json.dumps(trace.to_json(), indent=2) + "\n")
        if config.write_schema and config.level:
            _write(config, f"{stem}.{config.level}rr.json",
                   serialize_schema(reduced, deps))

        if "relational" in config.targets:
            schema = emit_relational(reduced)
            for w in schema.warnings:
                _err(f"warning: {w}")
            summary.append(f"relational: {len(schema.relations)} relations")
            _write(config, f"{stem}.sql", render_sql(schema))
        if "dtd" in config.targets:
            _write(config, f"{stem}.dtd", render_dtd(emit_dtd(reduced)))
        if "pg" in config.targets:
            _write(config, f"{stem}.pg.json",
                   render_property_graph(emit_property_graph(reduced)))
        if "hybrid" in config.targets:
            parts = decompose_hybrid(reduced, assignment)
            summary.append(f"hybrid: {len(parts)} partitions")
            _write(config, f"{stem}.hybrid.json", render_hybrid(parts))

        reports = _run_checks(config, reduced, deps, summary)
    except ChaseLimitExceeded as e:
        _err(f"internal: {e}")
        return EXIT_INTERNAL
    except SchemaError as e:
        _err(f"internal: {e}")
        return EXIT_INTERNAL

    print("\n".join(summary), file=sys.stderr)
    if config.checks:
        _write(config, f"{stem}.report.json",
               json.dumps([r.to_json() for r in reports], indent=2) + "\n")
        if any(r.verdict == "violated" for r in reports):
            return EXIT_VIOLATED
        if any(r.verdict == "unknown" for r in reports):
            return EXIT_UNKNOWN
    return EXIT_OK


def _split_list(value: str, allowed: tuple[str, ...],
                what: str) -> tuple[str, ...]:
    items = tuple(v.strip() for v in value.split(",") if v.strip())
    for item in items:
        if item not in allowed:
            raise argparse.ArgumentTypeError(
                f"unknown {what} {item!r} (choose from {', '.join(allowed)})")
    return items


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catnorm",
        description="Schema normalization over category-graph "
                    "representations")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, targets=False, checks=False,
               level=False, assignment=False):
        p.add_argument("input", type=Path, help="schema JSON document")
        p.add_argument("--out-dir", type=Path, default=None,
                       help="directory for written artifacts")
        p.add_argument("--stdout", action="store_true",
                       help="write artifacts to standard output")
        if level:
            p.add_argument("--level", type=int, choices=(0, 1, 2), default=1,
                           help="reduction level (default 1)")
        if targets:
            p.add_argument("--emit", type=lambda v: _split_list(
                v, EMIT_TARGETS, "target"), default=(),
                help="comma-separated targets: relational,dtd,pg,hybrid")
        if checks:
            p.add_argument("--check", type=lambda v: _split_list(
                v, CHECKS, "check"), default=(),
                help="comma-separated checks: bcnf,improved-bcnf,4nf,xmlnf")
        if assignment:
            p.add_argument("--assignment", type=Path, default=None,
                           help="JSON object name -> partition id")

    p = sub.add_parser("validate", help="parse and validate a schema")
    common(p)

    p = sub.add_parser("closure", help="compute the dependency closure")
    common(p)

    p = sub.add_parser("reduce", help="compute a reduced representation")
    common(p, targets=True, checks=True, level=True, assignment=True)
    p.add_argument("--trace", action="store_true",
                   help="write the reduction trace")

    p = sub.add_parser("emit", help="emit target schemas without reduction")
    common(p, targets=True, assignment=True)

    p = sub.add_parser("check", help="reduce and verify normal forms")
    common(p, checks=True, level=True)

    p = sub.add_parser("hybrid", help="split a schema across data models")
    common(p, assignment=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = PipelineConfig(
        input_path=args.input,
        out_dir=args.out_dir,
        to_stdout=args.stdout,
        level=getattr(args, "level", 0),
        targets=tuple(getattr(args, "emit", ()) or ()),
        checks=tuple(getattr(args, "check", ()) or ()),
        trace=getattr(args, "trace", False),
        assignment_path=getattr(args, "assignment", None),
    )
    if args.command == "validate":
        config.validate_only = True
        config.level = 0
    elif args.command == "closure":
        config.closure_only = True
        config.level = 0
    elif args.command == "reduce":
        config.write_schema = not (config.targets or config.checks)
    elif args.command == "emit":
        config.level = 0
        if not config.targets:
            _err("emit requires --emit")
            return EXIT_INPUT
    elif args.command == "check":
        if not config.checks:
            _err("check requires --check")
            return EXIT_INPUT
    elif args.command == "hybrid":
        config.level = 0
        config.targets = ("hybrid",)
        if config.assignment_path is None:
            _err("hybrid requires --assignment")
            return EXIT_INPUT
    return run_pipeline(config)


if __name__ == "__main__":
    sys.exit(main())
