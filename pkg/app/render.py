"""Rich text rendering of reports and instance documents."""

from __future__ import annotations

from typing import Any

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from lib.models import InstanceDocument, ReportDocument

_SHOWN_TRIALS = 20


def _mark(value: Any) -> str:
    if value is True:
        return "[green]✓[/green]"
    if value is False:
        return "[red]✗[/red]"
    return "-" if value is None else str(value)


def _verdicts_table(report: ReportDocument) -> Table:
    table = Table(title=f"algext {report.command}", show_header=True, header_style="bold magenta")
    table.add_column("Verdict", style="cyan")
    table.add_column("Value")
    for name, value in report.verdicts.items():
        table.add_row(name, _mark(value))
    return table


def _bigraded_table(rows: list[dict[str, Any]], index_name: str) -> Table:
    table = Table(title="Nonzero pieces", show_header=True, header_style="bold magenta")
    table.add_column(index_name, justify="right")
    table.add_column("degree", justify="right")
    table.add_column("invariants", style="green")
    for row in rows:
        table.add_row(str(row["index"]), str(row["degree"]), row["invariants"]["text"])
    return table


def _trials_table(trials: list[dict[str, Any]]) -> Table:
    table = Table(
        title="Counterexamples and exhausted trials",
        show_header=True,
        header_style="bold magenta",
    )
    table.add_column("Trial", justify="right")
    table.add_column("Seed", style="cyan")
    table.add_column("Status")
    table.add_column("Family")
    table.add_column("Degrees", style="dim")
    for trial in trials[:_SHOWN_TRIALS]:
        table.add_row(
            str(trial["trial"]),
            trial["seed"],
            trial["status"],
            trial["family"],
            " ".join(str(d) for d in trial["degrees"]),
        )
    return table


def _element_line(label: str, payload: dict[str, Any] | None) -> str:
    return f"[cyan]{label}[/cyan]: {payload['text'] if payload else '-'}"


def render_report(report: ReportDocument, console: Console) -> None:
    """Print a report as tables; JSON stays the source of truth."""
    console.print(_verdicts_table(report))
    evidence = report.evidence
    if report.command in ("tor", "group-cohomology") and evidence.get("table"):
        index_name = "p" if report.command == "tor" else "s"
        console.print(_bigraded_table(evidence["table"], index_name))
    if report.command == "check-separable":
        console.print(_element_line("idempotent", evidence["separability"]["idempotent"]))
        witness = evidence["regularity"]["witness"]
        if witness:
            console.print(_element_line("zero divisor", witness["left"]))
            console.print(_element_line("annihilated", witness["right"]))
    if report.command == "concentrate":
        concentration = evidence["concentration"]
        console.print(_element_line("idempotent", concentration["idempotent"]))
        console.print(f"[cyan]removed degrees[/cyan]: {concentration['removed_degrees']}")
        if concentration["witness"]:
            console.print(_element_line("zero divisor", concentration["witness"]["right"]))
    if report.command == "hh1" and evidence.get("witness"):
        witness = evidence["witness"]
        console.print(_element_line(witness["label"] or "class", witness["tensor"]))
    if report.command == "dual-basis":
        for pair in evidence["pairs"]:
            console.print(f"  x = {pair['x']['text']}   y = {pair['y']['text']}")
    if report.command == "fuzz":
        _render_fuzz(report, console)
    if report.timing is not None:
        console.print(f"[dim]{report.timing:.3f}s[/dim]")


def _render_fuzz(report: ReportDocument, console: Console) -> None:
    evidence = report.evidence
    if "trial" in evidence:
        trial = evidence["trial"]
        console.print(f"seed {trial['seed']}: {trial['status']} ({trial['family']})")
        console.print(trial["detail"])
        return
    console.print(f"[dim]{evidence['description']}[/dim]")
    notable = [t for t in evidence["trials"] if t["status"] in ("counterexample", "exhausted")]
    if notable:
        console.print(_trials_table(notable))
        console.print(
            f"[dim]replay one with: algext fuzz {evidence['harness']} --replay SEED[/dim]"
        )
    if evidence["rejections"]:
        console.print(f"[dim]generator rejections: {evidence['rejections']}[/dim]")
    if report.verdicts["passed"]:
        console.print("[green]✓[/green] No counterexample found")


def render_instance(document: InstanceDocument, console: Console) -> None:
    """Basis table of an instance document."""
    algebra = document.algebra
    table = Table(
        title=f"Algebra over {document.base}", show_header=True, header_style="bold magenta"
    )
    table.add_column("Basis", style="cyan")
    table.add_column("Degree", justify="right")
    table.add_column("Unit", justify="right", style="dim")
    for name, degree, unit in zip(algebra.names, algebra.degrees, algebra.unit, strict=True):
        table.add_row(name, str(degree), unit)
    console.print(table)
    details = [f"commutative: {algebra.commutative}", f"constants: {len(algebra.constants)}"]
    if document.group is not None:
        details.append(f"group of order {len(document.group.table)} acting")
    console.print(Panel("\n".join(details), title="Structure", border_style="blue"))
