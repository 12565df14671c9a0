"""Command line entry point.

    betti-harness resolve  FILE     minimal free resolutions of the modules
    betti-harness betti    FILE     their Betti tables
    betti-harness check    FILE     declared checks (default: beh, binomial, equality)
    betti-harness dutta    FILE     Frobenius/Dutta sequences
    betti-harness suite    [DIR]    every *.inst file of a directory

Exit codes: 0 when every verdict holds or is inapplicable, 1 when a check
fails, 2 on an input error.
"""

import asyncio
from pathlib import Path
from typing import Callable, List, Optional, Sequence

import click
import structlog

from app.core.config import settings
from app.core.exceptions import AlgebraError, InstanceError
from app.core.logging import setup_logging
from app.models.instance import ProblemInstance
from app.schemas.instance import CheckName, CheckRequest
from app.schemas.report import VerificationReport
from app.services.instance_parser import load_instance
from app.services.report_service import (
    render_machine,
    render_resolution_text,
    render_text,
    resolution_document,
    to_json,
)
from app.services.resolution_service import ResolutionService
from app.services.theorem_service import TheoremService

logger = structlog.get_logger(__name__)

SUITE_DIR = Path(__file__).resolve().parent.parent / "suite"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def _load(path: Path) -> ProblemInstance:
    try:
        return load_instance(path)
    except InstanceError as err:
        click.echo(f"{path}: {err}", err=True)
        raise click.exceptions.Exit(EXIT_INPUT)
    except OSError as err:
        click.echo(f"{path}: {err.strerror or err}", err=True)
        raise click.exceptions.Exit(EXIT_INPUT)


def _format_option(fn: Callable) -> Callable:
    return click.option(
        "--format",
        "fmt",
        type=click.Choice(["text", "machine"]),
        default=None,
        help="Report format (default: REPORT_FORMAT setting).",
    )(fn)


def _check_options(fn: Callable) -> Callable:
    fn = click.option("--oracle", is_flag=True, help="Cross-check homology lengths by brute force.")(fn)
    fn = click.option("--cap", type=click.IntRange(min=1), default=None, help="Resolution step cap.")(fn)
    fn = click.option("--emax", type=click.IntRange(min=0), default=None, help="Largest Frobenius iterate.")(fn)
    return _format_option(fn)


def _emit(reports: Sequence[VerificationReport], fmt: Optional[str]) -> int:
    fmt = fmt or settings.REPORT_FORMAT
    if fmt == "machine":
        click.echo(render_machine(reports), nl=False)
    else:
        click.echo("\n".join(render_text(r) for r in reports), nl=False)
    return max((r.exit_code for r in reports), default=EXIT_OK)


def _verify(
    instances: Sequence[ProblemInstance],
    requests: Callable[[ProblemInstance], List[CheckRequest]],
    emax: Optional[int],
    cap: Optional[int],
    oracle: bool,
) -> List[VerificationReport]:
    service = TheoremService(cap=cap, e_max=emax, oracle=oracle or None)

    async def run_all() -> List[VerificationReport]:
        return list(await asyncio.gather(*(service.run(i, requests(i)) for i in instances)))

    return asyncio.run(run_all())


@click.group()
@click.option("--log-level", default=None, help="Log level (default: LOG_LEVEL setting).")
@click.version_option(settings.VERSION, prog_name=settings.PROJECT_NAME)
def cli(log_level: Optional[str]) -> None:
    """Exact resolutions, Adams squares and total Betti number checks."""
    setup_logging(log_level)


def _resolutions(path: Path, cap: Optional[int], fmt: Optional[str], with_maps: bool) -> None:
    instance = _load(path)
    service = ResolutionService(cap=cap)
    documents = []
    texts = [f"ring: {instance.ring}"]
    code = EXIT_OK
    for name, module in instance.modules.items():
        try:
            resolution = service.resolve(module)
        except AlgebraError as err:
            code = EXIT_FAILED
            documents.append({"module": name, "error": str(err)})
            texts.append(f"{name}: {err}")
            continue
        documents.append(resolution_document(name, resolution, with_maps))
        texts.append(render_resolution_text(name, resolution, with_maps).rstrip("\n"))
    if (fmt or settings.REPORT_FORMAT) == "machine":
        click.echo(
            to_json({"instance": instance.name, "ring": str(instance.ring), "resolutions": documents}),
            nl=False,
        )
    else:
        click.echo("\n".join(texts))
    raise click.exceptions.Exit(code)


@cli.command()
@click.argument("path", type=click.Path(path_type=Path))
@click.option("--cap", type=click.IntRange(min=1), default=None, help="Resolution step cap.")
@_format_option
def resolve(path: Path, cap: Optional[int], fmt: Optional[str]) -> None:
    """Print the minimal free resolution of every module in PATH."""
    _resolutions(path, cap, fmt, with_maps=True)


@cli.command()
@click.argument("path", type=click.Path(path_type=Path))
@click.option("--cap", type=click.IntRange(min=1), default=None, help="Resolution step cap.")
@_format_option
def betti(path: Path, cap: Optional[int], fmt: Optional[str]) -> None:
    """Print the Betti table of every module in PATH."""
    _resolutions(path, cap, fmt, with_maps=False)


@cli.command()
@click.argument("path", type=click.Path(path_type=Path))
@click.option(
    "--only",
    type=click.Choice([c.value for c in CheckName]),
    multiple=True,
    help="Run only these checks (repeatable).",
)
@_check_options
def check(
    path: Path,
    only: Sequence[str],
    emax: Optional[int],
    cap: Optional[int],
    oracle: bool,
    fmt: Optional[str],
) -> None:
    """Run the checks declared in PATH."""
    instance = _load(path)
    selected = {CheckName(name) for name in only}

    def requests(i: ProblemInstance) -> List[CheckRequest]:
        found = i.effective_checks()
        return [r for r in found if not selected or r.name in selected]

    reports = _verify([instance], requests, emax, cap, oracle)
    raise click.exceptions.Exit(_emit(reports, fmt))


@cli.command()
@click.argument("path", type=click.Path(path_type=Path))
@_check_options
def dutta(path: Path, emax: Optional[int], cap: Optional[int], oracle: bool, fmt: Optional[str]) -> None:
    """Dutta sequences of the declared dutta targets, or of every module and complex."""
    instance = _load(path)

    def requests(i: ProblemInstance) -> List[CheckRequest]:
        declared = [r for r in i.checks if r.name is CheckName.DUTTA]
        if declared:
            return declared
        targets = list(i.modules) + list(i.complexes)
        return [CheckRequest(name=CheckName.DUTTA, target=t) for t in targets]

    reports = _verify([instance], requests, emax, cap, oracle)
    raise click.exceptions.Exit(_emit(reports, fmt))


@cli.command()
@click.argument(
    "directory",
    type=click.Path(file_okay=False, path_type=Path),
    default=SUITE_DIR,
    required=False,
)
@_check_options
def suite(directory: Path, emax: Optional[int], cap: Optional[int], oracle: bool, fmt: Optional[str]) -> None:
    """Run every *.inst file of DIRECTORY (the bundled suite by default)."""
    paths = sorted(Path(directory).glob("*.inst"))
    if not paths:
        click.echo(f"{directory}: no instance files", err=True)
        raise click.exceptions.Exit(EXIT_INPUT)
    instances = [_load(p) for p in paths]
    reports = _verify(instances, lambda i: i.effective_checks(), emax, cap, oracle)
    logger.info("suite_completed", instances=len(instances), failed=sum(r.failed for r in reports))
    raise click.exceptions.Exit(_emit(reports, fmt))


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
