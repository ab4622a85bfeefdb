"""Display and export of verification reports and witness chains."""

import json
from pathlib import Path
from typing import List, Union

from rich.console import Console
from rich.table import Table

from .equivalence import EquivalenceReport, WitnessChain
from .tableau import render

console = Console()

Reportable = Union[EquivalenceReport, WitnessChain]


def report_lines(report: EquivalenceReport) -> List[str]:
    verdict = "coincide" if report.equal else "DIFFER"
    lines = [
        f"n = {report.n}, r = {report.rank}",
        f"~r classes: {len(report.classes_sim)}",
        f"<~>r classes: {len(report.classes_squig)}",
        f"partitions {verdict}",
    ]
    mismatched = [s for s in report.statistics if not s.involution_count_matches]
    if mismatched:
        lines.append(f"{len(mismatched)} classes break the 2^c involution count")
    return lines


def chain_lines(chain: WitnessChain) -> List[str]:
    lines = [f"chain of {len(chain)} tableaux, {len(chain.steps)} certified steps"]
    for i, step in enumerate(chain.steps, start=1):
        lines.append("")
        lines.append(f"step {i}: move cycle {{{','.join(map(str, sorted(step.changed)))}}}")
        for title, tableau in (
            ("T_i", step.before),
            ("T_i+1", step.after),
            ("S_i", step.left),
            ("S'_i", step.left_next),
            ("common mmt right tableau", step.merged),
        ):
            lines.append(f"{title}:")
            lines.append(render(tableau) or "(empty)")
    return lines


def _markdown(item: Reportable) -> str:
    if isinstance(item, EquivalenceReport):
        out = [f"# Equivalence report for H_{item.n}, rank {item.rank}", ""]
        out += [f"- {line}" for line in report_lines(item)]
        out += ["", "| class | size | shape | non-core cycles | involutions |", "|---|---|---|---|---|"]
        for i, stats in enumerate(item.statistics, start=1):
            shape = ",".join(map(str, stats.shape))
            out.append(
                f"| {i} | {stats.size} | ({shape}) | {stats.noncore_cycles} | {stats.involutions} |"
            )
        return "\n".join(out) + "\n"
    out = ["# Witness chain", "", chain_lines(item)[0], ""]
    for i, step in enumerate(item.steps, start=1):
        out += [f"## Step {i}: cycle {sorted(step.changed)}", ""]
        for title, tableau in (
            ("T_i", step.before),
            ("T_i+1", step.after),
            ("S_i", step.left),
            ("S'_i", step.left_next),
            ("Common mmt right tableau", step.merged),
        ):
            out += [f"**{title}**", "", "```", render(tableau), "```", ""]
    return "\n".join(out)


def save_report(item: Reportable, output_path: Union[str, Path]) -> bool:
    """
    Save a report or witness chain to a file.

    The format follows the extension: .json, .md/.markdown, else plain text.

    Args:
        item: The report or chain to save
        output_path: Path where to save the file

    Returns:
        True if successful, False otherwise
    """
    output_path = Path(output_path)
    extension = output_path.suffix.lower()
    try:
        with open(output_path, "w", encoding="utf-8") as f:
            if extension == ".json":
                json.dump(item.to_json(), f, indent=2)
            elif extension in [".md", ".markdown"]:
                f.write(_markdown(item))
            elif isinstance(item, EquivalenceReport):
                f.write("\n".join(report_lines(item)) + "\n")
            else:
                f.write("\n".join(chain_lines(item)) + "\n")
        return True
    except OSError as e:
        console.print(f"[red]Error:[/red] Failed to save report to file: {str(e)}")
        return False


def format_classes_table(report: EquivalenceReport, limit: int = 20) -> Table:
    """Create a table summarising the first ~r classes of a report."""
    table = Table(show_header=True)
    table.add_column("#", style="cyan")
    table.add_column("Size")
    table.add_column("Shape", style="green")
    table.add_column("Non-core cycles")
    table.add_column("Members")
    for i, (members, stats) in enumerate(
        zip(report.classes_sim[:limit], report.statistics[:limit]), start=1
    ):
        preview = "; ".join(str(w) for w in members[:4])
        if len(members) > 4:
            preview += "; ..."
        table.add_row(
            str(i),
            str(stats.size),
            "(" + ",".join(map(str, stats.shape)) + ")",
            str(stats.noncore_cycles),
            preview,
        )
    return table


def display_report(report: EquivalenceReport) -> None:
    for line in report_lines(report):
        style = "green" if line.endswith("coincide") else None
        console.print(f"[{style}]{line}[/{style}]" if style else line)
    console.print(format_classes_table(report))
