"""
Entry point for Ulrich Certify.

    python src/run.py verdict corpus/ci_y3_x2z.ring --a 2 --jmax 20
    python src/run.py cyclotomic "1-2t+4t^2-2t^3+t^4" --json
    python src/run.py corpus --jobs 4

Exit codes: 0 answer computed / check passed, 1 check failed, 2 error.
"""

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

import yaml
from loguru import logger
from pydantic import ValidationError
from rich.console import Console

sys.path.insert(0, str(Path(__file__).resolve().parent))

from algebra.errors import AlgebraError
from orchestrator import COMMANDS, Orchestrator
from report import EXIT_ERROR, EXIT_OK, Report, render_text, report_schema
from settings import Settings, load_settings

# Fix Windows console encoding
if sys.platform == "win32":
    os.environ["PYTHONIOENCODING"] = "utf-8"

TEXT_TARGETS = {"newton": "polynomial text", "cyclotomic": "univariate polynomial text in t"}


def setup_logging(settings: Settings):
    """Quiet stderr sink at the configured level plus a rotating file sink."""
    logger.remove()
    if settings.logging.console:
        logger.add(sys.stderr, level=settings.logging.level, format="{level} | {message}")
    if settings.logging.file:
        path = settings.resolve(settings.logging.file)
        os.makedirs(path.parent, exist_ok=True)
        logger.add(
            str(path),
            rotation="10 MB",
            level="DEBUG",
            format="{time:YYYY-MM-DD HH:mm:ss} | {level} | {message}"
        )


def resolve_default_paths():
    """Resolve config path relative to project root."""
    script_dir = Path(__file__).resolve().parent
    project_root = script_dir.parent
    return str(project_root / "config" / "config.yaml")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ulrich-certify",
        description="Exact certificates for the hypotheses of no-Ulrich-module criteria"
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print the report as JSON")
    common.add_argument("--save", action="store_true", help="Also write reports/<command>.json")
    common.add_argument("--config", type=str, default=resolve_default_paths(), help="Path to configuration file")

    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    commands = {}
    for name in COMMANDS:
        help_text = TEXT_TARGETS.get(name, "presentation file (.ring or .json)")
        p = sub.add_parser(name, parents=[common], help=f"{name} check")
        p.add_argument("target", type=str, help=help_text)
        commands[name] = p

    commands["hilbert"].add_argument("--upto", dest="up_to", type=int, help="Compare coefficients through this degree")
    commands["length"].add_argument("--extra", type=str, help="Comma-separated extra generators")
    commands["multiplicity"].add_argument("--params", type=str, help="Comma-separated system of parameters")
    for name in ("surjectivity", "truncation", "verdict"):
        commands[name].add_argument("--a", type=int, help="Degree a of the gap condition")
        commands[name].add_argument("--jmax", dest="j_max", type=int, help="Largest j checked directly")
    commands["surjectivity"].add_argument("--j", type=int, help="Check the single map S_a x S_j -> S_(a+j)")
    commands["generation"].add_argument("--lo", type=int, default=2)
    commands["generation"].add_argument("--hi", type=int, default=3)
    commands["generation"].add_argument("--upto", dest="up_to", type=int)
    commands["newton"].add_argument("--vars", dest="variables", type=str, default="x,y",
                                    help="The two variables of the Newton polygon")
    commands["newton"].add_argument("--bound", type=int, help="Coordinate bound for the exhaustive search")
    commands["cyclotomic"].add_argument("--genus", type=int,
                                        help="Use 1 - 2t + (g+1)t^2 - 2t^3 + t^4 instead of the target")
    commands["gr"].add_argument("--method", choices=["rees", "truncation"], default="rees")
    commands["verdict"].add_argument("--acknowledge-assumptions", dest="acknowledge_assumptions",
                                     action="store_true", help="Accept assumed hypotheses in the verdict")

    corpus = sub.add_parser("corpus", parents=[common], help="Run the golden corpus")
    corpus.add_argument("--manifest", type=str, help="Manifest file (default from config)")
    corpus.add_argument("--jobs", type=int, help="Parallel entries")

    schema = sub.add_parser("schema", parents=[common], help="Print the report JSON schema")
    schema.add_argument("--output", type=str, help="Write the schema to this file")
    return parser


OPTION_KEYS = ("up_to", "extra", "params", "a", "j_max", "j", "lo", "hi", "variables", "bound", "genus",
               "method", "acknowledge_assumptions")


def _options(args: argparse.Namespace) -> dict:
    return {k: getattr(args, k) for k in OPTION_KEYS if getattr(args, k, None) is not None}


def _emit(report: Report, as_json: bool, console: Console):
    if as_json:
        print(report.model_dump_json(indent=2))
    else:
        render_text(report, console)


def run(argv: Optional[List[str]] = None) -> int:
    """Parse ``argv``, run one command and print its report; returns the exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR

    console = Console(legacy_windows=False)
    try:
        config = args.config if Path(args.config).is_file() else None
        settings = load_settings(config, root=Path(args.config).resolve().parent.parent)
        setup_logging(settings)
        orchestrator = Orchestrator(settings=settings)

        if args.command == "schema":
            schema = json.dumps(report_schema(), indent=2)
            if args.output:
                Path(args.output).write_text(schema + "\n", encoding="utf-8")
            print(schema)
            return EXIT_OK

        if args.command == "corpus":
            results, code, seconds = orchestrator.timed(lambda: orchestrator.run_corpus(args.manifest, args.jobs))
            files = []
        else:
            options = _options(args)
            results, code, seconds = orchestrator.timed(
                lambda: orchestrator.execute(args.command, args.target, **options))
            files = [] if args.command in TEXT_TARGETS else [Path(args.target)]

        report = orchestrator.build_report(argv, results, code, files, seconds)
        _emit(report, args.json, console)
        if args.save:
            orchestrator.save_results(report)
        return code

    except (AlgebraError, OSError, ValueError, yaml.YAMLError, ValidationError) as e:
        logger.error(f"Error in {args.command}: {e}")
        if args.json:
            report = Report(command=argv, inputs_digest="", results={"error": str(e)}, status="error",
                            exit_code=EXIT_ERROR)
            print(report.model_dump_json(indent=2))
        else:
            print(f"ERROR: {e}")
        return EXIT_ERROR


def main():
    """Main entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
