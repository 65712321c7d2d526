"""
Central Index CLI - citation-distribution analytics from the command line.

Commands: indexes, series, correlate, radius, regress, generate, curve, reproduce.
"""

import argparse
import os
import sys
from dataclasses import dataclass, field
from typing import List, Optional

from rich.markup import escape
from rich.progress import Progress, SpinnerColumn, BarColumn, TaskProgressColumn

# Path fix
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from modules.centralindex import AnalysisConfig, CentralIndexAnalyzer, CentralIndexError, Cohort
from modules.centralindex.io_ingest import epoch_sort_key, write_cohort_json, write_raw_csv, write_results
from modules.centralindex.reproduce import exit_status
from modules.centralindex.validation import ValidationError
from modules.debug_logger import configure_logging, log_operation, logger
from modules.utils import Theme, atomic_write, console, error_console
from ui.report_views import report_views

VERSION = "1.0.0"

COMMANDS = ("indexes", "series", "correlate", "radius", "regress", "generate", "curve", "reproduce")
GENERATE_KINDS = ("selective", "producer", "power_law", "pair", "cohort")

EXIT_OK = 0
EXIT_CLAIM_FAILED = 1
EXIT_UNEXPECTED = 1
EXIT_INVALID = 2
EXIT_IO = 3


@dataclass
class CliConfig:
    """One CLI invocation. None means 'use the environment / built-in default'."""
    command: str
    inputs: List[str] = field(default_factory=list)
    output: Optional[str] = None
    format: str = "csv"
    min_n: Optional[int] = None
    max_radius: Optional[int] = None
    epochs: List[str] = field(default_factory=list)
    seed: int = 0
    kind: Optional[str] = None
    from_epoch: Optional[str] = None
    to_epoch: Optional[str] = None
    fixtures: bool = False
    debug: bool = False
    jobs: Optional[int] = None
    aggregator: Optional[str] = None
    include_uncited: bool = False
    # command specific
    radius_profile: bool = False
    max_rank: int = 100
    h: int = 10
    amplitude: int = 2
    exponent: float = 1.0
    authors: int = 15


def _epoch_list(value: str) -> List[str]:
    return [part.strip() for part in value.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", dest="inputs", action="append", default=[],
                        help="Input file (raw csv, index-table csv or json); repeatable")
    common.add_argument("--output", help="Write the result here instead of printing a table")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--min-n", type=int, help="Minimum paired authors per correlation (default 9)")
    common.add_argument("--max-radius", type=int, help="Largest radius in tables and matrices (default 10)")
    common.add_argument("--epochs", type=_epoch_list, default=[],
                        help="Comma separated epoch order, e.g. 1999,2004,2009")
    common.add_argument("--from", dest="from_epoch", help="Earlier epoch")
    common.add_argument("--to", dest="to_epoch", help="Later epoch")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--fixtures", action="store_true", help="Use the embedded 15-author fixture")
    common.add_argument("--debug", action="store_true", help="Write debug.log and errors_only.log")
    common.add_argument("--jobs", type=int, help="Worker threads for matrices and parsing")
    common.add_argument("--aggregator", choices=("forward", "row"),
                        help="Optimal-radius row score: mean over k>=j (forward) or the whole row")
    common.add_argument("--include-uncited", action="store_true",
                        help="Count zero-citation papers in N_p")

    parser = argparse.ArgumentParser(
        prog="centralindex",
        description="Central area/interval indexes and h-index analytics for author cohorts",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("indexes", parents=[common], help="Per-author h, H, U, L, N_p, N_c, tail class")
    sub.add_parser("series", parents=[common], help="A_j and I_j table")

    for name, text in (("correlate", "Area/interval correlation matrices and their difference"),
                       ("radius", "Optimal radius and the half-mean-h heuristic")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--kind", choices=("area", "interval"))

    sub.add_parser("regress", parents=[common], help="N_c on N_p fit and residual ranking")

    gen = sub.add_parser("generate", parents=[common], help="Synthetic distributions and cohorts")
    gen.add_argument("--kind", choices=GENERATE_KINDS, default="pair")
    gen.add_argument("--h", type=int, default=10, help="Target h-index")
    gen.add_argument("--amplitude", type=int, default=2)
    gen.add_argument("--exponent", type=float, default=1.0)
    gen.add_argument("--authors", type=int, default=15, help="Authors in a generated cohort")

    curve = sub.add_parser("curve", parents=[common], help="Rank/citation curve points")
    curve.add_argument("--radius-profile", action="store_true",
                       help="Emit (radius, A, I) points instead of rank curves")
    curve.add_argument("--max-rank", type=int, default=100)

    sub.add_parser("reproduce", parents=[common], help="Check the published claims on the fixture")
    return parser


def config_from_args(args: argparse.Namespace) -> CliConfig:
    values = {k: v for k, v in vars(args).items() if k in CliConfig.__dataclass_fields__}
    return CliConfig(**values)


# ============================================================================
# COMMANDS
# ============================================================================

def load_cohort(analyzer: CentralIndexAnalyzer, config: CliConfig) -> Cohort:
    """Fixture or the union of every --input file, ordered by --epochs when given."""
    if config.fixtures or not config.inputs:
        if not config.fixtures:
            raise ValidationError("no input: pass --input FILE or --fixtures")
        return analyzer.load_fixture("indexes", config.epochs)

    cohort = Cohort(source="input")
    for path in config.inputs:
        part = analyzer.load(path)
        for author in part.author_ids():
            for epoch in part.epochs:
                snapshot = part.snapshot(author, epoch)
                if snapshot is None:
                    continue
                if cohort.snapshot(author, epoch) is not None:
                    raise ValidationError(f"{path}: {author!r} at {epoch!r} already loaded")
                cohort.add_snapshot(author, epoch, snapshot)
        cohort.warnings.extend(part.warnings)

    cohort.epochs = sorted(cohort.epochs, key=epoch_sort_key)
    if config.epochs:
        cohort.reorder(config.epochs)
    return cohort


def emit(report, config: CliConfig) -> None:
    if config.output:
        atomic_write(config.output, write_results(report, config.format))
        console.print(f"[{Theme.SUCCESS}]✅ {report.kind}: {len(report.rows)} rows → {escape(config.output)}[/]")
    else:
        console.print(report_views.render(report))


def emit_cohort(cohort: Cohort, config: CliConfig) -> None:
    data = write_cohort_json(cohort) if config.format == "json" else write_raw_csv(cohort)
    if config.output:
        atomic_write(config.output, data)
        console.print(f"[{Theme.SUCCESS}]✅ generated {len(cohort)} authors → {escape(config.output)}[/]")
    else:
        sys.stdout.write(data.decode("utf-8"))
        sys.stdout.flush()


def run_reproduce(analyzer: CentralIndexAnalyzer, config: CliConfig) -> int:
    verifier = analyzer.verifier()
    checks = []
    stages = verifier.stages()

    with Progress(
        SpinnerColumn(),
        "[progress.description]{task.description}",
        BarColumn(),
        TaskProgressColumn(),
        console=console,
        transient=True,
    ) as progress:
        task = progress.add_task("[cyan]Loading fixtures...", total=len(stages))
        for name, stage in stages:
            progress.update(task, description=f"[cyan]🔬 {name}...")
            checks.extend(stage())
            progress.advance(task)

    emit(analyzer.claims_report(checks), config)
    return EXIT_CLAIM_FAILED if exit_status(checks) else EXIT_OK


def dispatch(analyzer: CentralIndexAnalyzer, config: CliConfig) -> int:
    command = config.command

    if command == "reproduce":
        return run_reproduce(analyzer, config)

    if command == "generate":
        cohort = analyzer.generate(config.kind or "pair", config.h, config.amplitude,
                                   config.exponent, config.seed, config.authors, config.epochs)
        emit_cohort(cohort, config)
        return EXIT_OK

    cohort = load_cohort(analyzer, config)
    if command == "indexes":
        report = analyzer.profile_report(cohort)
    elif command == "series":
        report = analyzer.series_report(cohort, config.max_radius)
    elif command == "correlate":
        report = analyzer.correlation_report(cohort, config.from_epoch, config.to_epoch,
                                             config.kind, config.max_radius, config.min_n)
    elif command == "radius":
        report = analyzer.radius_report(cohort, config.from_epoch, config.to_epoch, config.kind,
                                        config.max_radius, config.min_n, config.aggregator)
    elif command == "regress":
        report = analyzer.regression_report(cohort, config.from_epoch)
    elif command == "curve":
        report = analyzer.curve_report(cohort, config.max_rank, config.radius_profile)
    else:
        raise ValidationError(f"unknown command {command!r} (expected one of {', '.join(COMMANDS)})")

    emit(report, config)
    return EXIT_OK


def run(config: CliConfig) -> int:
    """Execute one command; returns the process exit status."""
    configure_logging(config.debug)
    log_operation(config.command, "START", f"inputs={config.inputs} output={config.output}")

    try:
        analysis_config = AnalysisConfig.from_env().with_overrides(
            min_n=config.min_n,
            max_radius=config.max_radius,
            n_jobs=config.jobs,
            aggregator=config.aggregator,
            include_uncited=True if config.include_uncited else None,
        )
        status = dispatch(CentralIndexAnalyzer(analysis_config), config)
    except CentralIndexError as e:
        log_operation(config.command, "ERROR", str(e))
        error_console.print(f"[bold {Theme.ERROR}]❌ {escape(str(e))}[/]")
        return EXIT_INVALID
    except OSError as e:
        log_operation(config.command, "ERROR", str(e))
        error_console.print(f"[bold {Theme.ERROR}]❌ {escape(str(e))}[/]")
        return EXIT_IO
    except Exception as e:  # pylint: disable=broad-except
        logger.exception(f"💥 Unexpected failure in {config.command}")
        error_console.print(f"[bold {Theme.ERROR}]💥 Unexpected error: {escape(str(e))}[/]")
        return EXIT_UNEXPECTED

    log_operation(config.command, "SUCCESS", f"exit status {status}")
    return status


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
