"""
render.py
Human-readable rendering of a report document (the --format text view).
"""
from typing import Any, Dict

from rich import box
from rich.console import Console
from rich.rule import Rule
from rich.table import Table

VERDICT_STYLE = {
    "Perfect":                    ("green",  "✓", "perfectly distinguishable by LOCC"),
    "Probabilistic":              ("yellow", "⚠", "distinguishable with some probability"),
    "IndistinguishableCertified": ("red",    "✗", "cannot be perfectly distinguished by LOCC"),
    "NotCertified":               ("yellow", "⚠", "some party admits an informative measurement"),
    "Unknown":                    ("yellow", "⚠", "undecided"),
}


def _pairs(pairs) -> str:
    return " ".join(f"({j},{k})" for j, k in pairs) or "—"


def _fmt(x) -> str:
    return "—" if x is None else f"{x:.6g}"


def render_report(doc: Dict[str, Any], console: Console):
    console.print()
    console.print(Rule(f"[bold]locc-ops — {doc.get('command', 'report')}[/bold]"))
    console.print()

    verdict = doc.get("verdict")
    if verdict:
        color, mark, meaning = VERDICT_STYLE.get(verdict, ("white", "•", ""))
        console.print(f"[{color}]  {mark}  {verdict}[/{color}]  [dim]{meaning}[/dim]")
        console.print()

    # ── Orthogonality graph ────────────────────────────────────────────────
    rv = doc.get("relation_vector") or {}
    pattern = doc.get("pattern") or {}
    console.print(f"  Relation vector [bold]{tuple(rv.get('counts', ()))}[/bold]"
                  f"  canonical {tuple(rv.get('canonical', ()))}")
    if pattern:
        where = f" party {pattern['party']}" if pattern.get("party") else ""
        states = f" states {pattern['states']}" if pattern.get("states") else ""
        console.print(f"  Pattern [bold cyan]{pattern['kind']}[/bold cyan]{where}{states}")
    console.print()

    edges = Table(title="Orthogonality graph", box=box.ROUNDED, show_lines=True)
    edges.add_column("Party", style="cyan", justify="center")
    edges.add_column("Orthogonal pairs")
    edges.add_column("Count", justify="right")
    edges.add_column("Local rank", justify="right")
    ranks = doc.get("local_ranks") or []
    for party, pairs in sorted((doc.get("edges") or {}).items(), key=lambda kv: int(kv[0])):
        p = int(party)
        rank = str(ranks[p - 1]) if p - 1 < len(ranks) else "—"
        edges.add_row(party, _pairs(pairs), str(len(pairs)), rank)
    console.print(edges)

    # ── Success ────────────────────────────────────────────────────────────
    if doc.get("success") is not None:
        console.print()
        sim = doc.get("simulation") or {}
        table = Table(title="Identification probability", box=box.ROUNDED)
        table.add_column("State", style="cyan", justify="center")
        table.add_column("Success", justify="right")
        table.add_column("Dead branch", justify="right")
        dead = sim.get("dead_mass") or [None] * len(doc["success"])
        for label, s, d in zip(doc.get("labels", []), doc["success"], dead):
            style = "green" if abs(s - 1.0) <= 1e-9 else ("yellow" if s > 0 else "dim")
            table.add_row(str(label), f"[{style}]{_fmt(s)}[/{style}]", _fmt(d))
        console.print(table)
        console.print(f"  Overall (uniform prior): [bold]{_fmt(doc.get('overall'))}[/bold]")

    # ── Certificate / per-party evidence ───────────────────────────────────
    parties = (doc.get("certificate") or {}).get("parties") or doc.get("evidence") or []
    if parties:
        console.print()
        table = Table(title="Orthogonality-preserving measurements", box=box.ROUNDED, show_lines=True)
        table.add_column("Party", style="cyan", justify="center")
        table.add_column("Constraint pairs")
        table.add_column("Solution dim", justify="right")
        table.add_column("Verdict")
        for ev in parties:
            trivial = ev["verdict"] == "ProportionalIdentityOnSpan"
            mark = "[green]✓[/green]" if trivial else "[yellow]⚠[/yellow]"
            table.add_row(str(ev["party"]), _pairs(ev["constraint_pairs"]),
                          str(ev["dimension"]), f"{mark}  {ev['verdict']}")
        console.print(table)

    for finding in doc.get("findings") or []:
        console.print(f"  [dim]• {finding}[/dim]")
    console.print()
