from backend.constructions import walecki_paths
from backend.core import labeling
from backend.formatter import (
    export_decomposition_dot,
    export_dot,
    format_outcome_summary,
    format_sequence,
    format_standard_summary,
)
from backend.models import DefiningSequence, VertexOrdering
from backend.orient import standard_orientation
from backend.solver import solve

S6 = DefiningSequence(k=3, n=6, a=(0, 0, 0))
S12 = DefiningSequence(k=3, n=12, a=(0, 0, 0, 1, 2, 1))


def test_oriented_dot():
    text = export_dot(labeling(S6), standard_orientation(S6))
    assert text.startswith('digraph "k3n6:000"')
    assert text.count(" -> ") == 15
    assert text.count("subgraph part_") == 3
    # 5 -> 4 follows the ordering 0,1,2,5,4,3
    assert "    5 -> 4;" in text


def test_unoriented_dot():
    text = export_dot(labeling(DefiningSequence(k=3, n=3, a=(0,))))
    assert text.startswith("graph")
    assert text.count(" -- ") == 3


def test_dot_is_deterministic():
    p = labeling(S12)
    o = VertexOrdering(n=12, tau=(0, 6, 1, 7, 2, 8, 11, 5, 4, 10, 3, 9))
    assert export_dot(p, o) == export_dot(p, o)


def test_decomposition_dot():
    _, dec = walecki_paths(6)
    text = export_decomposition_dot(dec, "walecki6")
    assert text.startswith('digraph "walecki6"')
    assert text.count(" -> ") == 15
    assert text.count("subgraph part_") == 3


def test_format_sequence():
    assert format_sequence(S12) == "k3n12:000121 (k=3, n=12, index 16)"


def test_outcome_summaries():
    assert "Ordering:" in format_outcome_summary(solve(S12))
    unsat = format_outcome_summary(solve(DefiningSequence(k=3, n=3, a=(0,))))
    assert "No transitive orientation" in unsat
    assert "Ordering:" not in unsat


def test_standard_summary():
    assert format_standard_summary(S6, standard_orientation(S6)).endswith("Standard ordering: 0, 1, 2, 5, 4, 3")
    bad = DefiningSequence(k=3, n=6, a=(0, 0, 2))
    assert "No standard orientation" in format_standard_summary(bad, None)
