"""Command-line front end: cycles | basis | planarize | embed | hamilton."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .basis import TIE_ORDERS, BasisError
from .embed import EmbeddingError, rim, rotation_system
from .graph import GraphError, load_graph
from .pipeline import METHODS, Options, Run, load_cycles, options_json, rotation_section
from .planarize import audit_plane
from .report import render_text, write_report_dir

EXIT_OK = 0
EXIT_NOT_FOUND = 2
EXIT_EVIDENCE = 3
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_IO = 66


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("file", help="graph as an edge list or JSON")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--cycles", metavar="LIST", help="use this cycle listing instead of the isometric pool")
    common.add_argument("--timings", action="store_true", help="add wall-clock timings to the report")
    common.add_argument("--report", metavar="DIR", help="write CSV tables and charts to DIR")

    selecting = _Parser(add_help=False)
    selecting.add_argument("--method", choices=METHODS, default="sd")
    selecting.add_argument("--trials", type=_positive, default=1000)
    selecting.add_argument("--pre-exclude-longest", type=_nonnegative, default=0, metavar="K")
    selecting.add_argument("--tie-order", choices=TIE_ORDERS, default="rate")
    selecting.add_argument("--candidates", type=_positive, default=8, help="Monte-Carlo bases to planarize")

    plane = _Parser(add_help=False)
    plane.add_argument("--count-rim-as-cycle", action="store_true")
    plane.add_argument("--stage3", action="store_true", help="re-insert deleted edges as rim chords")
    plane.add_argument("--exact-chords", action="store_true", help="largest non-crossing chord set")

    parser = _Parser(prog="planecycles", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("cycles", parents=[common], help="list isometric cycles")
    sub.add_parser("basis", parents=[common, selecting], help="choose a cycle basis")
    sub.add_parser("planarize", parents=[common, selecting, plane], help="reduce a basis to a plane configuration")
    emb = sub.add_parser("embed", parents=[common, selecting, plane], help="rotation system of a configuration")
    emb.add_argument("--config", metavar="LIST", help="use this cycle listing as the configuration")
    emb.add_argument("--dot", metavar="OUT", help="write the drawing as DOT")
    ham = sub.add_parser("hamilton", parents=[common, selecting, plane], help="extract a Hamiltonian cycle")
    ham.add_argument("--config", metavar="LIST", action="append", help="configuration listing (repeatable)")
    ham.add_argument("--budget", type=_nonnegative, default=32, help="alternative branches to try")
    return parser


def _options(args) -> Options:
    return Options(
        method=getattr(args, "method", "sd"),
        trials=getattr(args, "trials", 1000),
        seed=args.seed,
        threads=args.threads,
        pre_exclude_longest=getattr(args, "pre_exclude_longest", 0),
        tie_order=getattr(args, "tie_order", "rate"),
        stage3=getattr(args, "stage3", False),
        exact_chords=getattr(args, "exact_chords", False),
        count_rim_as_cycle=getattr(args, "count_rim_as_cycle", False),
        budget=getattr(args, "budget", 32),
        candidates=getattr(args, "candidates", 8),
    )


def run_command(args) -> tuple[dict, int]:
    g = load_graph(args.file)
    run = Run(g, _options(args))
    if args.cycles:
        run.pool = load_cycles(args.cycles, g)
        run.pool_source = Path(args.cycles).name
    report: dict = {"command": args.command, "graph": run.graph_section()}
    code = EXIT_OK
    paths = getattr(args, "config", None) or []
    if isinstance(paths, str):
        paths = [paths]
    configs = [load_cycles(p, g) for p in paths]
    if not configs:
        report["isometric"] = run.cycles_section()
    if args.command in ("basis", "planarize") or (args.command in ("embed", "hamilton") and not configs):
        report["options"] = options_json(run.options)
        report["basis"] = run.basis_section()
        report["plane"] = run.plane_section()
        if args.command == "basis":
            del report["plane"]
            code = EXIT_OK if report["basis"]["complete"] else EXIT_NOT_FOUND
        elif args.command == "planarize":
            code = EXIT_OK if run.planes()[0].plane else EXIT_NOT_FOUND
        if run.options.stage3 and args.command != "basis":
            report["stage3"] = run.stage3_section()
    if args.command == "embed":
        cycles = configs[0] if configs else run.planes()[0].cycles
        if configs:
            outer = rim(cycles, g)
            report["configuration"] = {
                "cycles": [c.label for c in cycles],
                "rim": outer.to_json(),
                "checks": audit_plane(cycles, g),
            }
        report["rotation"] = rotation_section(cycles, g)
        code = EXIT_OK if report["rotation"]["closed"] else EXIT_NOT_FOUND
        if args.dot and report["rotation"]["closed"]:
            Path(args.dot).write_text(rotation_system(cycles, g).dot(g), encoding="utf-8")
    if args.command == "hamilton":
        best, distinct = run.hamilton(configs or None)
        section = best.to_json()
        section["load_lines"] = best.load_lines(g)
        section["distinct"] = [[v + 1 for v in seq] for seq in distinct]
        report["hamilton"] = section
        code = {"found": EXIT_OK, "non_hamiltonian_evidence": EXIT_EVIDENCE}.get(best.status, EXIT_NOT_FOUND)
    report["counters"] = dict(sorted(run.counters.items()))
    if args.timings:
        report["timings"] = run.timings
    report["exit_code"] = code
    return report, code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        report, code = run_command(args)
    except OSError as exc:
        print(f"planecycles: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GraphError, BasisError, EmbeddingError, ValueError, KeyError) as exc:
        print(f"planecycles: {exc}", file=sys.stderr)
        return EXIT_DATA
    if args.json:
        sys.stdout.write(json.dumps(report, indent=2, ensure_ascii=False, sort_keys=True) + "\n")
    else:
        sys.stdout.write(render_text(report))
    if args.report:
        try:
            write_report_dir(report, args.report)
        except OSError as exc:
            print(f"planecycles: {exc}", file=sys.stderr)
            return EXIT_IO
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
