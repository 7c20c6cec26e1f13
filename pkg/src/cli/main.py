# pylint: disable=too-many-arguments, too-many-locals, too-many-positional-arguments
"""
Script for the CLI interface to the Hub stability analysis.
Reads a perturbation document (JSON or line format), reports the
stochastically stable states and when the others vanish, and optionally
cross-checks the result against independent oracles.
"""

import logging
from pathlib import Path
from typing import Dict, List, NoReturn, Optional

import click
from pydantic import ValidationError

from src.cli.document import (
    DocumentParseError,
    DocumentValidationError,
    parse_document,
)
from src.cli.dot_export import write_dot_files
from src.cli.hubconfig import HubSettings, load_settings
from src.cli.report import ReportDocument, build_report, render_json, render_text
from src.cli.verify import SweepOptions, verify
from src.hub.hub import hub
from src.oracle.brute_force import TooLarge
from src.utils.log_utils import init_logging

EXIT_OK = 0
EXIT_INVALID_INPUT = 1
EXIT_DISAGREEMENT = 2
EXIT_TOO_LARGE = 3

OPTION_LOG = click.option(
    "--log_file",
    type=click.Path(writable=True, dir_okay=False, path_type=Path),
    default=None,
    help="also write the log to this file",
)
OPTION_VERBOSE = click.option(
    "--verbose",
    "-v",
    type=bool,
    is_flag=True,
    default=False,
    help="log at DEBUG level, including to the console",
)
OPTION_ENV_PREFIX = click.option(
    "--env_prefix",
    type=str,
    default="",
    help="""directory holding the .env file with HUB_* settings,
    Config options are overwritten by CLI arguments.""",
)


def parse_epsilons(text: str) -> List[float]:
    """Comma-separated epsilon values

    Raises:
        ValueError: on anything that is not a number in (0, 1]
    """
    values = [float(part) for part in text.split(",") if part.strip()]
    if not values:
        raise ValueError("no epsilon values given")
    for value in values:
        if not 0 < value <= 1:
            raise ValueError(f"epsilon {value} is outside (0, 1]")
    return values


def _fail(ctx: click.Context, message: str, code: int) -> NoReturn:
    logging.getLogger(__name__).error(message)
    click.echo(message, err=True)
    ctx.exit(code)


@click.group()
def cli() -> None:
    "Commands to find the stochastically stable states of perturbed Markov chains"


@click.command()
@click.argument(
    "input_file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)
@click.option(
    "--trace",
    "show_trace",
    type=bool,
    is_flag=True,
    default=False,
    help="include every recursion level in the report",
)
@click.option(
    "--dot",
    "dot_dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="write one DOT file per recursion level into this directory",
)
@click.option(
    "--verify",
    "run_verify",
    type=bool,
    is_flag=True,
    default=False,
    help="cross-check against the arborescence, path and numerical oracles",
)
@click.option(
    "--epsilons",
    type=str,
    default=None,
    help="comma-separated epsilon values for the numerical check",
)
@click.option(
    "--threshold",
    type=float,
    default=None,
    help="smallest stationary weight counted as stable in the numerical check",
)
@click.option(
    "--json",
    "as_json",
    type=bool,
    is_flag=True,
    default=False,
    help="print the report as JSON",
)
@click.option(
    "--cap",
    type=int,
    default=None,
    help="largest graph the brute-force oracles accept",
)
@click.option(
    "--workers",
    type=int,
    default=None,
    help="threads for the per-transient path searches and the sweep",
)
@click.option(
    "--sweep_csv",
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    default=None,
    help="write the epsilon sweep table as CSV (with --verify)",
)
@OPTION_LOG
@OPTION_VERBOSE
@OPTION_ENV_PREFIX
@click.pass_context
def analyze(  # pylint: disable=too-many-branches,too-many-statements
    ctx: click.Context,
    input_file: Path,
    show_trace: bool,
    dot_dir: Optional[Path],
    run_verify: bool,
    epsilons: Optional[str],
    threshold: Optional[float],
    as_json: bool,
    cap: Optional[int],
    workers: Optional[int],
    sweep_csv: Optional[Path],
    log_file: Optional[Path],
    verbose: bool,
    env_prefix: str,
) -> None:
    """
    Find the stochastically stable states of the perturbation in INPUT_FILE
    """
    init_logging(
        file_name=str(log_file) if log_file else None,
        level=logging.DEBUG if verbose else logging.INFO,
        console_level=logging.DEBUG if verbose else logging.WARNING,
    )
    logger = logging.getLogger(__name__)

    try:
        settings = load_settings(env_prefix)
    except ValidationError as e:
        _fail(ctx, f"invalid settings: {e}", EXIT_INVALID_INPUT)
    settings = _override(settings, cap=cap, workers=workers)
    try:
        sweep_epsilons = (
            parse_epsilons(epsilons) if epsilons else settings.sweep.epsilons
        )
    except ValueError as e:
        _fail(ctx, f"invalid --epsilons: {e}", EXIT_INVALID_INPUT)

    logger.info("reading %s", input_file)
    try:
        document = parse_document(input_file.read_bytes())
    except DocumentParseError as e:
        _fail(ctx, f"cannot read {input_file.name}: {e}", EXIT_INVALID_INPUT)
    except DocumentValidationError as e:
        message = "\n".join([f"invalid {input_file.name}:"] + e.violations)
        _fail(ctx, message, EXIT_INVALID_INPUT)

    graph = document.to_graph()
    report, trace = hub(graph, max_workers=settings.workers)
    logger.info(
        "%d stable states after %d levels", len(report.stable), len(trace.levels)
    )
    output = build_report(report, trace, include_trace=show_trace)

    if dot_dir is not None:
        written = write_dot_files(trace, dot_dir)
        logger.info("wrote %d DOT files to %s", len(written), dot_dir)

    exit_code = EXIT_OK
    if run_verify:
        options = SweepOptions(
            epsilons=sweep_epsilons,
            threshold=threshold if threshold is not None else settings.sweep.threshold,
            min_epsilon=settings.sweep.min_epsilon,
            tolerance=settings.sweep.tolerance,
            max_workers=settings.workers,
        )
        try:
            result = verify(document, graph, report, trace, settings.cap, options)
        except TooLarge as e:
            click.echo(_render(output, as_json), nl=False)
            _fail(ctx, f"cannot verify: {e}", EXIT_TOO_LARGE)
        output = output.model_copy(update={"verification": result.checks})
        if sweep_csv is not None and result.sweep is not None:
            result.sweep.to_frame().to_csv(sweep_csv)
            logger.info("wrote the epsilon sweep to %s", sweep_csv)
        if result.checks.disagreement:
            logger.error("an oracle disagrees with hub")
            exit_code = EXIT_DISAGREEMENT

    click.echo(_render(output, as_json), nl=False)
    ctx.exit(exit_code)


def _render(document: ReportDocument, as_json: bool) -> str:
    return render_json(document) if as_json else render_text(document)


def _override(
    settings: HubSettings, cap: Optional[int], workers: Optional[int]
) -> HubSettings:
    """Command-line values win over configured ones"""
    update: Dict[str, int] = {}
    if cap is not None:
        update["cap"] = cap
    if workers is not None:
        update["workers"] = workers
    return settings.model_copy(update=update) if update else settings


cli.add_command(analyze)

if __name__ == "__main__":
    cli()  # pylint: disable=no-value-for-parameter
