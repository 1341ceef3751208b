"""
End-to-end runs over the published examples and the full small sweeps.
"""
import itertools

import networkx as nx

from backend.analysis import conjecture_scan, non_completeness_witnesses, sweep
from backend.blowup import blow_up_sequence, detect_blow_up, lift_orientation
from backend.constructions import (
    alternation_defects,
    hamiltonian_cycles,
    is_spanning_cycle,
    is_spanning_path,
    part_digraph,
    walecki_paths,
)
from backend.core import labeling, normalized_sequences
from backend.models import DefiningSequence, SolveBudget, SolveStatus, VertexOrdering
from backend.orient import is_bitonic, reversal_report, standard_condition, standard_orientation
from backend.solver import oracle_solve, solve

PUBLISHED_12 = (0, 6, 1, 7, 2, 8, 11, 5, 4, 10, 3, 9)
PUBLISHED_24 = (0, 1, 2, 23, 22, 21, 3, 9, 4, 10, 20, 5, 11, 8, 7, 19, 6, 18, 12, 13, 14, 17, 16, 15)
S12 = DefiningSequence(k=3, n=12, a=(0, 0, 0, 1, 2, 1))
S24 = DefiningSequence(k=3, n=24, a=(0, 0, 0, 1, 2, 0, 0, 0, 1, 1, 2, 1))


def test_k6_has_four_solvable_sequences():
    records = sweep(3, 6)
    sat = [r for r in records if r.status == SolveStatus.SAT]
    assert [r.sequence.canonical() for r in sat] == ["k3n6:000", "k3n6:001", "k3n6:011", "k3n6:012"]
    assert all(is_bitonic(r.witness)[0] for r in sat)


def test_triangle():
    s = DefiningSequence(k=3, n=3, a=(0,))
    p = labeling(s)
    assert not any(
        reversal_report(p, VertexOrdering(n=3, tau=tau)).accepted for tau in itertools.permutations(range(3))
    )
    assert solve(s).status == SolveStatus.UNSAT


def test_published_n12():
    assert reversal_report(labeling(S12), VertexOrdering(n=12, tau=PUBLISHED_12)).accepted
    assert standard_orientation(S12) is None
    base = DefiningSequence(k=3, n=6, a=(0, 0, 0))
    lifted = lift_orientation(base, standard_orientation(base), S12)
    assert lifted.tau == PUBLISHED_12


def test_published_n24():
    assert reversal_report(labeling(S24), VertexOrdering(n=24, tau=PUBLISHED_24)).accepted
    assert not standard_condition(S24)
    assert detect_blow_up(S24) == []
    outcome = solve(S24, SolveBudget(seconds=60))
    assert outcome.status == SolveStatus.SAT


def test_solver_matches_oracle_on_small_instances():
    checked = 0
    for n in (3, 6, 9):
        for s in normalized_sequences(3, n):
            assert solve(s).status == oracle_solve(s).status
            checked += 1
    assert checked == 37


def test_two_part_partitions_are_all_standard():
    for n in (4, 8, 12):
        for a in itertools.product((0, 1), repeat=n // 2):
            s = DefiningSequence(k=2, n=n, a=a)
            assert reversal_report(labeling(s), standard_orientation(s)).accepted


def test_lifting_k6_bases():
    for a in ((0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, 2)):
        base = DefiningSequence(k=3, n=6, a=a)
        order = standard_orientation(base)
        for n in (12, 18):
            for value in range(3):
                target = blow_up_sequence(base, n, {6: value})
                assert reversal_report(labeling(target), lift_orientation(base, order, target)).accepted


def test_k12_sweep_respects_necessary_conditions():
    records = sweep(3, 12)
    assert len(records) == 243
    assert not any(r.status == SolveStatus.BUDGET_EXCEEDED for r in records)
    for r in records:
        if not (r.necessary_prefix.passed and r.necessary_jump.passed):
            assert r.status == SolveStatus.UNSAT
    gaps = non_completeness_witnesses(records)
    assert all(r.necessary_pass and r.status == SolveStatus.UNSAT for r in gaps)


def test_odd_n_has_no_solutions():
    report = conjecture_scan(3, [9, 15])
    assert [c.instances for c in report.counts] == [27, 729]
    assert report.sat_total == 0


def test_hamiltonian_decompositions():
    for n in range(4, 13, 2):
        _, dec = walecki_paths(n)
        assert all(is_spanning_path(n, part) and not alternation_defects(n, part) for part in dec.parts)
        union = part_digraph(n, [arc for part in dec.parts for arc in part])
        assert nx.is_directed_acyclic_graph(union)
    for n in range(3, 14, 2):
        dec = hamiltonian_cycles(n)
        first = part_digraph(n, dec.parts[0])
        for part in dec.parts:
            g = part_digraph(n, part)
            assert is_spanning_cycle(n, part)
            assert nx.is_isomorphic(first, g)
            assert g.in_degree(n - 1) == 0
        union = part_digraph(n, [arc for part in dec.parts for arc in part])
        assert nx.is_directed_acyclic_graph(union)
