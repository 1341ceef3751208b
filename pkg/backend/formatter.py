"""
Presentation formatters: DOT renderings of partitions and decompositions,
and short text summaries for the MCP tools.
"""
import itertools
from typing import Optional

from backend.core import edge_label, sequence_index, normalize
from backend.models import (
    DefiningSequence,
    OrientedDecomposition,
    PartitionLabeling,
    SolveOutcome,
    SolveStatus,
    VertexOrdering,
)

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]
STYLES = ["solid", "dashed", "dotted", "bold"]


def _part_style(d: int) -> str:
    return f'color="{PALETTE[d % len(PALETTE)]}" style={STYLES[(d // len(PALETTE)) % len(STYLES)]}'


def export_dot(p: PartitionLabeling, o: Optional[VertexOrdering] = None) -> str:
    """
    One subgraph per part. With an ordering every edge points to the later
    vertex; without one the graph is undirected. Edges are sorted so the
    output depends only on the inputs.
    """
    directed = o is not None
    arrow = "->" if directed else "--"
    pos = o.positions() if directed else None
    s = p.seq
    lines = [f'{"digraph" if directed else "graph"} "{s.canonical()}" {{']
    append = lines.append
    append('  graph [layout=circo label="{}"];'.format(s.canonical()))
    append("  node [shape=circle fontname=Arial];")
    for v in range(p.n):
        append(f"  {v};")
    for d in range(p.k):
        append(f"  subgraph part_{d} {{")
        append(f"    edge [{_part_style(d)} label={d}];")
        for u, v in itertools.combinations(range(p.n), 2):
            if edge_label(p, u, v) != d:
                continue
            if directed and pos[u] > pos[v]:
                u, v = v, u
            append(f"    {u} {arrow} {v};")
        append("  }")
    append("}")
    return "\n".join(lines) + "\n"


def export_decomposition_dot(dec: OrientedDecomposition, name: str = "decomposition") -> str:
    lines = [f'digraph "{name}" {{', "  graph [layout=circo];", "  node [shape=circle fontname=Arial];"]
    append = lines.append
    for d, part in enumerate(dec.parts):
        append(f"  subgraph part_{d} {{")
        append(f"    edge [{_part_style(d)} label={d}];")
        for tail, head in part:
            append(f"    {tail} -> {head};")
        append("  }")
    append("}")
    return "\n".join(lines) + "\n"


def format_sequence(s: DefiningSequence) -> str:
    return f"{s.canonical()} (k={s.k}, n={s.n}, index {sequence_index(normalize(s))})"


def format_outcome_summary(outcome: SolveOutcome) -> str:
    """
    Human-readable solve result.

    Returns:
        Multi-line text: sequence, verdict, witness (if any) and search effort
    """
    out = []
    out.append("=" * 60)
    out.append(format_sequence(outcome.sequence))
    out.append("=" * 60)
    if outcome.status == SolveStatus.SAT:
        out.append("Transitive orientation found.")
        out.append("Ordering: " + ", ".join(str(v) for v in outcome.witness.tau))
    elif outcome.status == SolveStatus.UNSAT:
        out.append("No transitive orientation exists.")
    else:
        out.append("Search stopped at the budget; the question is open for this sequence.")
    stats = outcome.stats
    out.append(f"Orientation classes: {stats.classes}, decisions: {stats.nodes}, conflicts: {stats.conflicts}")
    return "\n".join(out)


def format_standard_summary(s: DefiningSequence, order: Optional[VertexOrdering]) -> str:
    if order is None:
        return f"{format_sequence(s)}\nNo standard orientation (2k must divide n and the sequence may not jump)."
    return f"{format_sequence(s)}\nStandard ordering: " + ", ".join(str(v) for v in order.tau)
