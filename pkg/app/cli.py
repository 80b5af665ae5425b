"""Command-line interface for algext."""

from __future__ import annotations

import logging
import time
from collections.abc import Callable
from enum import Enum
from pathlib import Path
from typing import Any

import typer
from rich.console import Console
from rich.logging import RichHandler

from app.render import render_instance, render_report
from lib.api import Workbench
from lib.documents import dump_document, load_instance, load_module
from lib.errors import InconsistencyError, ValidationFailure
from lib.gallery import fixture_names
from lib.harness import harness_aliases, harness_names
from lib.models import ReportDocument
from lib.settings import get_settings

app = typer.Typer(
    name="algext",
    help="Exact-arithmetic workbench for graded ring extensions.",
    add_completion=False,
)

console = Console()
err_console = Console(stderr=True)


class OutputFormat(str, Enum):
    JSON = "json"
    TEXT = "text"


def get_workbench() -> Workbench:
    """Get the workbench facade."""
    return Workbench()


def configure_logging(level: str) -> None:
    """Send library records to stderr through rich; stdout carries reports only."""
    logging.basicConfig(
        level=level.upper(),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


@app.callback()
def main(
    log_level: str | None = typer.Option(
        None, "--log-level", help="Logging level (DEBUG, INFO, WARNING, ERROR)"
    ),
) -> None:
    """Decide and certify Galois, separability and differential properties."""
    configure_logging(log_level or get_settings().log_level)


def _fail(error: Exception, code: int) -> typer.Exit:
    err_console.print(f"[red]✗[/red] {type(error).__name__}: {error}")
    return typer.Exit(code=code)


def _compute(build: Callable[[], ReportDocument], timing: bool) -> ReportDocument:
    start = time.perf_counter()
    try:
        report = build()
    except ValidationFailure as e:
        raise _fail(e, 2) from e
    except InconsistencyError as e:
        raise _fail(e, 3) from e
    if timing:
        report = report.model_copy(update={"timing": round(time.perf_counter() - start, 6)})
    return report


def _write(text: str, out: Path | None) -> None:
    if out is None:
        typer.echo(text, nl=False)
        return
    out.write_text(text, encoding="utf-8")
    err_console.print(f"[green]✓[/green] Written to {out}")


def _emit(report: ReportDocument, output: OutputFormat, out: Path | None) -> None:
    if output is OutputFormat.JSON:
        exclude = {"timing"} if report.timing is None else None
        _write(report.model_dump_json(indent=2, exclude=exclude) + "\n", out)
        return
    if out is None:
        render_report(report, console)
        return
    with out.open("w", encoding="utf-8") as handle:
        render_report(report, Console(file=handle, width=100))
    err_console.print(f"[green]✓[/green] Written to {out}")


def _run(
    build: Callable[[], ReportDocument], output: OutputFormat, out: Path | None, timing: bool
) -> ReportDocument:
    report = _compute(build, timing)
    _emit(report, output, out)
    return report


INSTANCE_ARGUMENT = typer.Argument(
    ..., exists=True, dir_okay=False, help="Instance document (algext.instance JSON)"
)
FORMAT_OPTION = typer.Option(OutputFormat.JSON, "--format", "-f", help="Output format")
OUT_OPTION = typer.Option(None, "--out", "-o", help="Write the report here instead of stdout")
TIMING_OPTION = typer.Option(False, "--timing", help="Record elapsed seconds in the report")
CAP_OPTION = typer.Option(
    None, "--cap", help="Resolution cap (defaults to ALGEXT_RESOLUTION_CAP)"
)
UNFAITHFUL_OPTION = typer.Option(
    False, "--allow-unfaithful", help="Accept a non-injective action and record it"
)


@app.command("check-galois")
def check_galois(
    instance: Path = INSTANCE_ARGUMENT,
    allow_unfaithful: bool = UNFAITHFUL_OPTION,
    output: OutputFormat = FORMAT_OPTION,
    out: Path | None = OUT_OPTION,
    timing: bool = TIMING_OPTION,
) -> None:
    """Decide whether the group action makes the algebra Galois over the base."""
    wb = get_workbench()
    arguments = {"instance": str(instance), "allow_unfaithful": allow_unfaithful}
    _run(
        lambda: wb.check_galois(load_instance(instance, allow_unfaithful), arguments),
        output,
        out,
        timing,
    )


@app.command("dual-basis")
def dual_basis(
    instance: Path = INSTANCE_ARGUMENT,
    allow_unfaithful: bool = UNFAITHFUL_OPTION,
    output: OutputFormat = FORMAT_OPTION,
    out: Path | None = OUT_OPTION,
    timing: bool = TIMING_OPTION,
) -> None:
    """Dual basis of a Galois extension and its projectivity data."""
    wb = get_workbench()
    arguments = {"instance": str(instance), "allow_unfaithful": allow_unfaithful}
    _run(
        lambda: wb.dual_basis(load_instance(instance, allow_unfaithful), arguments),
        output,
        out,
        timing,
    )


@app.command("check-separable")
def check_separable(
    instance: Path = INSTANCE_ARGUMENT,
    output: OutputFormat = FORMAT_OPTION,
    out: Path | None = OUT_OPTION,
    timing: bool = TIMING_OPTION,
) -> None:
    """Search for a separability idempotent and test B_0 for zero divisors."""
    wb = get_workbench()
    arguments = {"instance": str(instance)}
    _run(lambda: wb.check_separable(load_instance(instance), arguments), output, out, timing)


@app.command()
def concentrate(
    instance: Path = INSTANCE_ARGUMENT,
    output: OutputFormat = FORMAT_OPTION,
    out: Path | None = OUT_OPTION,
    timing: bool = TIMING_OPTION,
) -> None:
    """Push a separability idempotent into bidegree (0, 0) or report why it sticks."""
    wb = get_workbench()
    arguments = {"instance": str(instance)}
    _run(lambda: wb.concentrate(load_instance(instance), arguments), output, out, timing)


@app.command()
def kaehler(
    instance: Path = INSTANCE_ARGUMENT,
    output: OutputFormat = FORMAT_OPTION,
    out: Path | None = OUT_OPTION,
    timing: bool = TIMING_OPTION,
) -> None:
    """Module of Kähler differentials I/I² and the universal derivation."""
    wb = get_workbench()
    arguments = {"instance": str(instance)}
    _run(lambda: wb.kaehler(load_instance(instance), arguments), output, out, timing)


@app.command()
def hh1(
    instance: Path = INSTANCE_ARGUMENT,
    output: OutputFormat = FORMAT_OPTION,
    out: Path | None = OUT_OPTION,
    timing: bool = TIMING_OPTION,
) -> None:
    """A nonzero class in first Hochschild homology, if there is one."""
    wb = get_workbench()
    arguments = {"instance": str(instance)}
    _run(lambda: wb.hh1(load_instance(instance), arguments), output, out, timing)


@app.command()
def tor(
    m: Path = typer.Argument(..., exists=True, dir_okay=False, help="Module document for M"),
    n: Path = typer.Argument(..., exists=True, dir_okay=False, help="Module document for N"),
    p: int = typer.Option(0, "--p", "-p", help="Homological degree"),
    cap: int | None = CAP_OPTION,
    output: OutputFormat = FORMAT_OPTION,
    out: Path | None = OUT_OPTION,
    timing: bool = TIMING_OPTION,
) -> None:
    """Tor_p(M, N) over the base ring, with the table up to p."""
    wb = get_workbench()
    arguments = {"m": str(m), "n": str(n), "p": p, "cap": cap}
    _run(lambda: wb.tor(load_module(m), load_module(n), p, cap, arguments), output, out, timing)


@app.command("graded-tor")
def graded_tor(
    b: Path = typer.Argument(..., exists=True, dir_okay=False, help="Graded module document B"),
    c: Path = typer.Argument(..., exists=True, dir_okay=False, help="Graded module document C"),
    p: int = typer.Option(0, "--p", "-p", help="Homological degree"),
    q: int = typer.Option(0, "--q", "-q", help="Internal degree"),
    cap: int | None = CAP_OPTION,
    output: OutputFormat = FORMAT_OPTION,
    out: Path | None = OUT_OPTION,
    timing: bool = TIMING_OPTION,
) -> None:
    """Sum of Tor_p(B_i, C_j) over i + j = q, piece by piece."""
    wb = get_workbench()
    arguments = {"b": str(b), "c": str(c), "p": p, "q": q, "cap": cap}
    _run(
        lambda: wb.graded_tor(load_module(b), load_module(c), p, q, cap, arguments),
        output,
        out,
        timing,
    )


@app.command("tensor-self")
def tensor_self(
    m: Path = typer.Argument(..., exists=True, dir_okay=False, help="Module document for M"),
    output: OutputFormat = FORMAT_OPTION,
    out: Path | None = OUT_OPTION,
    timing: bool = TIMING_OPTION,
) -> None:
    """Whether M ⊗ M is nonzero."""
    wb = get_workbench()
    arguments = {"m": str(m)}
    _run(lambda: wb.tensor_self(load_module(m), arguments), output, out, timing)


@app.command("group-cohomology")
def group_cohomology(
    instance: Path = INSTANCE_ARGUMENT,
    s: int = typer.Option(0, "--s", "-s", help="Cohomological degree"),
    cap: int | None = CAP_OPTION,
    allow_unfaithful: bool = UNFAITHFUL_OPTION,
    output: OutputFormat = FORMAT_OPTION,
    out: Path | None = OUT_OPTION,
    timing: bool = TIMING_OPTION,
) -> None:
    """H^s(G, B) from the bar complex, with the table up to s."""
    wb = get_workbench()
    arguments = {"instance": str(instance), "s": s, "cap": cap}
    _run(
        lambda: wb.group_cohomology(load_instance(instance, allow_unfaithful), s, cap, arguments),
        output,
        out,
        timing,
    )


@app.command()
def gallery(
    name: str | None = typer.Argument(None, help="Fixture name; omit to list fixtures"),
    output: OutputFormat = FORMAT_OPTION,
    out: Path | None = OUT_OPTION,
) -> None:
    """Print a named fixture as an instance document."""
    if name is None:
        console.print(f"\n[bold]Fixtures ({len(fixture_names())}):[/bold]")
        for fixture in fixture_names():
            console.print(f"  • {fixture}")
        console.print()
        return
    wb = get_workbench()
    try:
        document = wb.fixture_document(name)
    except ValidationFailure as e:
        raise _fail(e, 2) from e
    except InconsistencyError as e:
        raise _fail(e, 3) from e
    if output is OutputFormat.JSON:
        _write(dump_document(document), out)
    else:
        render_instance(document, console)


def _degree_range(value: str | None) -> tuple[int, int] | None:
    if value is None:
        return None
    try:
        low, high = (int(part) for part in value.split(","))
    except ValueError as e:
        raise typer.BadParameter(f"expected LOW,HIGH, got '{value}'") from e
    return low, high


@app.command()
def fuzz(
    harness: str | None = typer.Argument(None, help="Harness name; omit to list harnesses"),
    trials: int | None = typer.Option(None, "--trials", "-n", help="Number of trials"),
    seed: int | None = typer.Option(None, "--seed", help="Master seed"),
    max_rank: int | None = typer.Option(None, "--max-rank", help="Largest algebra rank"),
    degree_range: str | None = typer.Option(
        None, "--degree-range", help="Generator degrees as LOW,HIGH (e.g. --degree-range=-2,2)"
    ),
    jobs: int | None = typer.Option(None, "--jobs", "-j", help="Worker processes"),
    replay: int | None = typer.Option(None, "--replay", help="Re-run the trial with this seed"),
    output: OutputFormat = FORMAT_OPTION,
    out: Path | None = OUT_OPTION,
    timing: bool = TIMING_OPTION,
) -> None:
    """Run a property harness over seeded generated instances."""
    if harness is None:
        console.print(f"\n[bold]Harnesses ({len(harness_names())}):[/bold]")
        for name in harness_names():
            aliases = ", ".join(harness_aliases(name))
            console.print(f"  • {name}" + (f" [dim]({aliases})[/dim]" if aliases else ""))
        console.print()
        return
    wb = get_workbench()
    bounds = _degree_range(degree_range)
    arguments: dict[str, Any] = {
        "harness": harness,
        "trials": trials,
        "seed": seed,
        "max_rank": max_rank,
        "degree_range": list(bounds) if bounds else None,
    }
    if replay is not None:
        arguments["replay"] = str(replay)
        report = _run(
            lambda: wb.replay(harness, replay, max_rank, bounds, arguments), output, out, timing
        )
        if report.verdicts["status"] == "counterexample":
            raise typer.Exit(code=3)
        return
    report = _run(
        lambda: wb.fuzz(harness, trials, seed, max_rank, bounds, jobs, arguments)[0],
        output,
        out,
        timing,
    )
    if not report.verdicts["passed"]:
        err_console.print(f"[red]✗[/red] {report.verdicts['counterexamples']} counterexample(s)")
        raise typer.Exit(code=3)


if __name__ == "__main__":
    app()
