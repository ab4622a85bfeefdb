"""Command-line interface for domino-cycles."""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional

import typer
from rich.console import Console
from rich.progress import BarColumn, Progress, TextColumn
from rich.table import Table

from . import __version__
from .config import DEFAULT_CONFIG_FILE, SAMPLE_CONFIG, find_config_file, load_config, setting
from .core_model import SignedPermutation, group_order
from .cycles import all_cycles, cycle_through, mmt, move_through
from .equivalence import (
    sim_key,
    sim_partition,
    verify_theorem,
    witness_chain,
)
from .errors import EXIT_USAGE, EXIT_VERIFICATION, DcyError, ResourceBoundError
from .insertion import TableauPair, rs, rs_inverse
from .report import chain_lines, display_report, save_report
from .structure import cycle_structure_set, forest, gamma
from .tableau import DominoTableau, load_tableau, render, serialize, to_json

app = typer.Typer(help="Domino tableaux, cycles and equivalence classes in type B_n")
console = Console()
progress_console = Console(stderr=True)


@app.callback()
def callback():
    """Domino tableaux, cycles and equivalence classes in type B_n."""


def _settings(config_path: Optional[Path]) -> Dict[str, Any]:
    try:
        return load_config(config_path)
    except FileNotFoundError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(EXIT_USAGE)
    except Exception as e:
        console.print(f"[red]Error loading configuration:[/red] {str(e)}")
        raise typer.Exit(EXIT_USAGE)


def _format(fmt: Optional[str], config_path: Optional[Path] = None) -> str:
    fmt = fmt or setting(_settings(config_path), "output", "format")
    if fmt not in ("text", "json"):
        console.print(f"[red]Error:[/red] unknown format '{fmt}' (use text or json)")
        raise typer.Exit(EXIT_USAGE)
    return fmt


def _fail(error: DcyError) -> None:
    console.print(f"[red]Error:[/red] {error}")
    raise typer.Exit(error.exit_code)


def _read_tableau(path: Path) -> DominoTableau:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        console.print(f"[red]Error:[/red] cannot read {path}: {e}")
        raise typer.Exit(EXIT_USAGE)
    return load_tableau(text)


def _show_tableau(title: str, tableau: DominoTableau) -> None:
    console.print(f"[bold]{title}[/bold] (rank {tableau.rank}, shape {tableau.shape})")
    console.print(render(tableau) or "(empty)", highlight=False)


def _emit_json(data: Any, out: Optional[Path]) -> None:
    text = json.dumps(data, indent=2)
    if out:
        out.write_text(text + "\n", encoding="utf-8")
        console.print(f"[green]Saved[/green] to {out}")
    else:
        console.print_json(text)


@app.command()
def version():
    """Show the version of domino-cycles."""
    console.print(f"domino-cycles version: {__version__}")


@app.command()
def init(
    path: Optional[Path] = typer.Option(
        None, "--path", "-p", help="Directory where to create the .dcy file"
    )
):
    """Initialize a new .dcy configuration file."""
    target_path = Path.cwd() if path is None else path
    config_path = target_path / DEFAULT_CONFIG_FILE

    if config_path.exists():
        console.print(
            f"[yellow]Warning:[/yellow] {DEFAULT_CONFIG_FILE} file already exists at {config_path}"
        )
        if not typer.confirm("Do you want to overwrite it?"):
            console.print("Initialization cancelled.")
            return

    config_path.write_text(SAMPLE_CONFIG, encoding="utf-8")
    console.print(f"[green]Successfully created[/green] {DEFAULT_CONFIG_FILE} file at {config_path}")


@app.command()
def config(
    config_path: Optional[Path] = typer.Option(
        None, "--file", "-f", help="Path to .dcy file"
    )
):
    """Display the effective configuration."""
    if config_path is None:
        found_path = find_config_file()
        if found_path:
            console.print(f"Using config file: [bold]{found_path}[/bold]")
        else:
            console.print(f"[yellow]No {DEFAULT_CONFIG_FILE} file found, using defaults.[/yellow]")
    settings = _settings(config_path)

    table = Table(show_header=True)
    table.add_column("Setting")
    table.add_column("Value")
    for section, values in settings.items():
        if isinstance(values, dict):
            for key, value in values.items():
                table.add_row(f"{section}.{key}", str(value))
        else:
            table.add_row(section, str(values))
    console.print(table)


@app.command("rs")
def cmd_rs(
    word: str = typer.Argument(..., help="Signed word, e.g. '3 -1 2'"),
    rank: int = typer.Option(0, "--rank", "-r", min=0, help="Rank of the core"),
    fmt: Optional[str] = typer.Option(None, "--format", help="text or json"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write JSON here"),
):
    """Compute G_r(w) = (S_r(w), T_r(w))."""
    fmt = _format(fmt)
    try:
        w = SignedPermutation.parse(word)
        pair = rs(w, rank)
    except DcyError as e:
        _fail(e)
    if fmt == "json" or out:
        _emit_json({"word": list(w.word), "left": to_json(pair.left), "right": to_json(pair.right)}, out)
        return
    _show_tableau("S", pair.left)
    _show_tableau("T", pair.right)


@app.command("inverse-rs")
def cmd_inverse_rs(
    left: Path = typer.Argument(..., help="Left tableau file"),
    right: Path = typer.Argument(..., help="Right tableau file"),
):
    """Recover w from a same-shape pair (S, T)."""
    try:
        w = rs_inverse(TableauPair(_read_tableau(left), _read_tableau(right)))
    except DcyError as e:
        _fail(e)
    console.print(str(w) or "(empty word)", highlight=False)


@app.command("cycles")
def cmd_cycles(
    tableau_file: Path = typer.Argument(..., help="Tableau file (JSON or text)"),
    fmt: Optional[str] = typer.Option(None, "--format", help="text or json"),
):
    """List the cycles of a tableau with endpoints, forest and cycle structure set."""
    fmt = _format(fmt)
    try:
        tableau = _read_tableau(tableau_file)
        infos = all_cycles(tableau)
        trees = forest(tableau)
        cs = cycle_structure_set(tableau)
    except DcyError as e:
        _fail(e)
    if fmt == "json":
        _emit_json(
            {"cycles": [c.to_json() for c in infos], "forest": trees.to_json(), "cs": cs.to_json()},
            None,
        )
        return
    if not infos:
        console.print("[yellow]No cycles: the tableau is empty.[/yellow]")
        return
    table = Table(show_header=True)
    table.add_column("Cycle", style="cyan")
    table.add_column("Kind")
    table.add_column("S_b")
    table.add_column("S_f")
    for info in infos:
        table.add_row(
            str(info.cycle),
            info.kind.value,
            str(info.s_b) if info.s_b else "",
            str(info.s_f) if info.s_f else "",
        )
    console.print(table)
    console.print(f"Forest: {trees}", highlight=False)
    console.print(
        "cs(T): " + ", ".join(f"({b},{f})" for b, f in cs) if len(cs) else "cs(T): empty",
        highlight=False,
    )


@app.command("move")
def cmd_move(
    tableau_file: Path = typer.Argument(..., help="Tableau file (JSON or text)"),
    labels: List[int] = typer.Argument(..., help="Labels whose cycles are moved through"),
    fmt: Optional[str] = typer.Option(None, "--format", help="text or json"),
):
    """Move through the cycles containing the given labels."""
    fmt = _format(fmt)
    try:
        tableau = _read_tableau(tableau_file)
        chosen = {cycle_through(k, tableau).labels for k in labels}
        moved = move_through(tableau, chosen)
    except DcyError as e:
        _fail(e)
    if fmt == "json":
        console.print_json(serialize(moved))
    else:
        _show_tableau("MT(T, U)", moved)


@app.command("mmt")
def cmd_mmt(
    left: Path = typer.Argument(..., help="Left tableau file"),
    right: Path = typer.Argument(..., help="Right tableau file"),
    fmt: Optional[str] = typer.Option(None, "--format", help="text or json"),
):
    """Apply the minimal moving-through map to a same-shape pair."""
    fmt = _format(fmt)
    try:
        result = mmt(TableauPair(_read_tableau(left), _read_tableau(right)))
    except DcyError as e:
        _fail(e)
    if fmt == "json":
        _emit_json({"left": to_json(result.left), "right": to_json(result.right)}, None)
        return
    _show_tableau("S", result.left)
    _show_tableau("T", result.right)


@app.command("gamma")
def cmd_gamma(
    tableau_file: Path = typer.Argument(..., help="Tableau whose shape and cs(T) are used"),
    fmt: Optional[str] = typer.Option(None, "--format", help="text or json"),
):
    """Build Gamma(T): same shape and cycle structure set, hook-shaped open cycles."""
    fmt = _format(fmt)
    try:
        tableau = _read_tableau(tableau_file)
        result = gamma(tableau.shape, tableau.rank, cycle_structure_set(tableau))
    except DcyError as e:
        _fail(e)
    if fmt == "json":
        console.print_json(serialize(result))
    else:
        _show_tableau("Gamma(T)", result)


def _bound(bound: Optional[int], config_path: Optional[Path]) -> int:
    if bound is not None:
        return bound
    return setting(_settings(config_path), "verify", "max_n")


@app.command("classes")
def cmd_classes(
    n: int = typer.Option(..., "-n", min=0, help="Size of the signed permutations"),
    rank: int = typer.Option(0, "--rank", "-r", min=0, help="Rank of the core"),
    fmt: Optional[str] = typer.Option(None, "--format", help="text or json"),
    bound: Optional[int] = typer.Option(None, "--bound", help="Largest n allowed"),
    config_path: Optional[Path] = typer.Option(None, "--file", "-f", help="Path to .dcy file"),
):
    """List the ~r classes of H_n."""
    fmt = _format(fmt, config_path)
    limit = _bound(bound, config_path)
    if n > limit:
        _fail(ResourceBoundError(f"n = {n} exceeds the bound {limit}"))
    classes = sim_partition(n, rank)
    if fmt == "json":
        _emit_json([[str(w) for w in members] for members in classes], None)
        return
    console.print(f"{len(classes)} classes of ~{rank} on H_{n} ({group_order(n)} elements)")
    for i, members in enumerate(classes, start=1):
        console.print(f"{i}: " + " | ".join(str(w) for w in members), highlight=False)


@app.command("verify")
def cmd_verify(
    n: int = typer.Option(..., "-n", min=0, help="Size of the signed permutations"),
    rank: int = typer.Option(0, "--rank", "-r", min=0, help="Rank of the core"),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", min=1, help="Worker processes"),
    fmt: Optional[str] = typer.Option(None, "--format", help="text or json"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Save report (.json, .md, text)"),
    bound: Optional[int] = typer.Option(None, "--bound", help="Largest n allowed"),
    config_path: Optional[Path] = typer.Option(None, "--file", "-f", help="Path to .dcy file"),
):
    """Check that ~r and <~>r partition H_n identically."""
    fmt = _format(fmt, config_path)
    settings = _settings(config_path)
    workers = workers or setting(settings, "verify", "workers")
    limit = _bound(bound, config_path)
    try:
        with Progress(
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TextColumn("{task.completed}/{task.total}"),
            console=progress_console,
            transient=True,
        ) as progress:
            total = group_order(n) if n <= limit else 0
            task = progress.add_task(f"H_{n}, r = {rank}", total=total)
            report = verify_theorem(
                n,
                rank,
                workers=workers,
                bound=limit,
                on_progress=lambda k: progress.advance(task, k),
            )
    except DcyError as e:
        _fail(e)

    if out:
        if not save_report(report, out):
            raise typer.Exit(EXIT_USAGE)
        console.print(f"[green]Saved[/green] report to {out}")
    elif fmt == "json":
        console.print_json(json.dumps(report.to_json()))
    else:
        display_report(report)
    if not report.equal:
        raise typer.Exit(EXIT_VERIFICATION)


@app.command("explain")
def cmd_explain(
    w: str = typer.Argument(..., help="First signed word"),
    y: str = typer.Argument(..., help="Second signed word"),
    rank: int = typer.Option(0, "--rank", "-r", min=0, help="Rank of the core"),
    fmt: Optional[str] = typer.Option(None, "--format", help="text or json"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Save chain (.json, .md, text)"),
):
    """Certify w ~r y by a chain of mmt-verified steps, or report why not."""
    fmt = _format(fmt)
    try:
        first, second = SignedPermutation.parse(w), SignedPermutation.parse(y)
        if first.n != second.n:
            console.print(f"Not equivalent: n differs ({first.n} and {second.n}).")
            return
        start, end = rs(first, rank).right, rs(second, rank).right
        if sim_key(start) != sim_key(end):
            console.print("Not equivalent: the right tableaux lie in different ~r classes.")
            if start.shape != end.shape:
                console.print(f"Shapes differ: {start.shape} and {end.shape}", highlight=False)
            return
        chain = witness_chain(start, end)
    except DcyError as e:
        _fail(e)

    if out:
        if not save_report(chain, out):
            raise typer.Exit(EXIT_USAGE)
        console.print(f"[green]Saved[/green] chain to {out}")
    elif fmt == "json":
        console.print_json(json.dumps(chain.to_json()))
    else:
        console.print(f"[green]Equivalent[/green] under ~{rank}", highlight=False)
        for line in chain_lines(chain):
            console.print(line, highlight=False)


@app.command("render")
def cmd_render(
    tableau_file: Path = typer.Argument(..., help="Tableau file (JSON or text)"),
    fmt: Optional[str] = typer.Option(None, "--format", help="text or json"),
):
    """Validate a tableau file and print it in the requested format."""
    fmt = _format(fmt)
    try:
        tableau = _read_tableau(tableau_file)
    except DcyError as e:
        _fail(e)
    if fmt == "json":
        console.print_json(serialize(tableau))
    else:
        console.print(render(tableau) or "(empty)", highlight=False)


if __name__ == "__main__":
    app()
