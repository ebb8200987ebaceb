"""
Report model shared by every command, plus its rich text rendering.
"""

import hashlib
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field
from rich.console import Console
from rich.markup import escape
from rich.table import Table
from rich.tree import Tree

from algebra import __version__

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

STATUS_BY_EXIT = {EXIT_OK: "passed", EXIT_FAILED: "failed", EXIT_ERROR: "error"}


class Timing(BaseModel):
    seconds: float = 0.0


class Report(BaseModel):
    """One command invocation: what was asked, on which inputs, and what came out."""

    command: List[str]
    inputs_digest: str
    results: Dict[str, Any] = Field(default_factory=dict)
    status: str
    exit_code: int
    tool_version: str = __version__
    timing: Timing = Field(default_factory=Timing)

    def without_timing(self) -> Dict[str, Any]:
        return self.model_dump(exclude={"timing"})


def inputs_digest(argv: Sequence[str], files: Sequence[Path] = ()) -> str:
    """sha256 over the argument vector and the bytes of every input file."""
    h = hashlib.sha256()
    for arg in argv:
        h.update(arg.encode("utf-8"))
        h.update(b"\0")
    for path in files:
        h.update(Path(path).read_bytes())
    return h.hexdigest()


def report_schema() -> Dict[str, Any]:
    return Report.model_json_schema()


def _add(tree: Tree, key: str, value: Any):
    if isinstance(value, dict):
        branch = tree.add(f"[bold]{escape(key)}[/bold]")
        for k, v in value.items():
            _add(branch, str(k), v)
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        branch = tree.add(f"[bold]{escape(key)}[/bold] ({len(value)})")
        for i, v in enumerate(value):
            _add(branch, str(i), v)
    else:
        shown = ", ".join(str(v) for v in value) if isinstance(value, list) else value
        tree.add(escape(f"{key}: {shown}"))


def corpus_table(entries: List[Dict[str, Any]]) -> Table:
    table = Table(title="Corpus")
    table.add_column("entry")
    table.add_column("check")
    table.add_column("provenance")
    table.add_column("result")
    table.add_column("detail", overflow="fold")
    for e in entries:
        mark = "[green]pass[/green]" if e.get("passed") else "[red]FAIL[/red]"
        if e.get("experimental"):
            mark += " (experimental)"
        table.add_row(escape(e["id"]), e["check"], e["provenance"], mark, escape(e.get("detail", "")))
    return table


def render_text(report: Report, console: Optional[Console] = None):
    """Same fields as the JSON form, laid out as a tree (and a table for corpus runs)."""
    console = console or Console()
    tree = Tree(f"[bold]{escape(' '.join(report.command))}[/bold]  status: {report.status} (exit {report.exit_code})")
    results = dict(report.results)
    entries = results.pop("entries", None) if report.command[:1] == ["corpus"] else None
    for key, value in results.items():
        _add(tree, key, value)
    tree.add(f"inputs_digest: {report.inputs_digest}")
    tree.add(f"tool_version: {report.tool_version}")
    tree.add(f"timing: {report.timing.seconds:.3f}s")
    console.print(tree)
    if entries is not None:
        console.print(corpus_table(entries))
