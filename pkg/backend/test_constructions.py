import itertools

import networkx as nx
import pytest

from backend.constructions import (
    alternation_defects,
    compose_cycle_solutions,
    cycle_type_admits_partition,
    hamiltonian_cycles,
    is_spanning_cycle,
    is_spanning_path,
    part_digraph,
    walecki_paths,
)
from backend.core import labeling, part_edges
from backend.errors import BlockRejected, EvenN, MultipleFixedPoints, OddN, TooSmall
from backend.models import DefiningSequence, VertexOrdering
from backend.orient import standard_orientation

FIXED = (None, VertexOrdering(n=1, tau=(0,)))


def seq(k, n, a):
    return DefiningSequence(k=k, n=n, a=tuple(a))


def _union_is_acyclic(dec):
    arcs = [arc for part in dec.parts for arc in part]
    return nx.is_directed_acyclic_graph(part_digraph(dec.n, arcs))


def test_walecki_k6_details():
    s, dec = walecki_paths(6)
    assert s.a == (0, 1, 1)
    assert dec.k == 3
    assert dec.global_order.tau == (0, 5, 1, 4, 2, 3)
    assert dec.parts[0] == ((0, 1), (4, 2), (4, 3), (5, 1), (5, 2))


def test_walecki_smallest():
    s, dec = walecki_paths(4)
    assert s.a == (0, 1)
    assert all(is_spanning_path(4, part) for part in dec.parts)


@pytest.mark.parametrize("n,error", [(7, OddN), (2, TooSmall)])
def test_walecki_rejects(n, error):
    with pytest.raises(error):
        walecki_paths(n)


@pytest.mark.parametrize("n", range(4, 21, 2))
def test_walecki_paths_are_alternating_hamiltonian_paths(n):
    _, dec = walecki_paths(n)
    assert len(dec.parts) == n // 2
    for part in dec.parts:
        assert is_spanning_path(n, part)
        assert alternation_defects(n, part) == []
    assert _union_is_acyclic(dec)


@pytest.mark.parametrize("n", range(3, 14, 2))
def test_hamiltonian_cycles(n):
    dec = hamiltonian_cycles(n)
    apex = n - 1
    assert len(dec.parts) == (n - 1) // 2
    first = part_digraph(n, dec.parts[0])
    for part in dec.parts:
        assert is_spanning_cycle(n, part)
        assert len(alternation_defects(n, part)) == 1
        g = part_digraph(n, part)
        assert g.in_degree(apex) == 0 and g.out_degree(apex) == 2
        assert nx.is_isomorphic(first, g)
    assert _union_is_acyclic(dec)
    assert dec.global_order.tau[0] == apex


@pytest.mark.parametrize("n,error", [(8, EvenN), (1, TooSmall)])
def test_hamiltonian_cycles_rejects(n, error):
    with pytest.raises(error):
        hamiltonian_cycles(n)


def test_compose_single_block_is_the_partition():
    s = seq(3, 6, [0, 0, 0])
    dec = compose_cycle_solutions([(s, standard_orientation(s))])
    p = labeling(s)
    for d in range(3):
        assert sorted(tuple(sorted(arc)) for arc in dec.parts[d]) == part_edges(p, d)
    assert dec.permutation == (1, 2, 3, 4, 5, 0)


def test_compose_two_cycles():
    s = seq(3, 6, [0, 0, 0])
    block = (s, standard_orientation(s))
    dec = compose_cycle_solutions([block, block])
    assert dec.n == 12 and dec.k == 3
    assert dec.permutation == (1, 2, 3, 4, 5, 0, 7, 8, 9, 10, 11, 6)
    assert sum(len(part) for part in dec.parts) == 66
    assert _union_is_acyclic(dec)


@pytest.mark.parametrize("n", [7, 9, 11])
def test_fixed_point_and_paths_give_the_cycle_decomposition(n):
    s, paths = walecki_paths(n - 1)
    dec = compose_cycle_solutions([FIXED, (s, paths.global_order)])
    # the fixed point is vertex 0 here and the apex n-1 there
    relabel = {0: n - 1, **{v: v - 1 for v in range(1, n)}}
    cycles = hamiltonian_cycles(n)
    for mine, theirs in zip(dec.parts, cycles.parts):
        assert sorted((relabel[u], relabel[v]) for u, v in mine) == sorted(theirs)


def test_compose_rejects_two_fixed_points():
    s = seq(3, 6, [0, 0, 0])
    with pytest.raises(MultipleFixedPoints):
        compose_cycle_solutions([FIXED, FIXED, (s, standard_orientation(s))])


def test_compose_rejects_unaccepted_block():
    with pytest.raises(BlockRejected):
        compose_cycle_solutions([(seq(3, 6, [0, 0, 0]), VertexOrdering(n=6, tau=tuple(range(6))))])


def test_compose_rejects_inadmissible_cycle_type():
    s = seq(3, 6, [0, 0, 0])
    block = (s, standard_orientation(s))
    with pytest.raises(BlockRejected, match=r"cycle type \[6, 4\]"):
        compose_cycle_solutions([block, (None, VertexOrdering(n=4, tau=(0, 1, 2, 3)))])


@pytest.mark.parametrize("lengths,expected", [
    ([6, 6], True),
    ([1, 6], True),
    ([1, 1, 6], False),
    ([4], False),
    ([3, 12], True),
])
def test_cycle_type_admits_partition(lengths, expected):
    assert cycle_type_admits_partition(lengths, 3) is expected


def test_every_pair_is_covered_once():
    dec = hamiltonian_cycles(9)
    edges = [frozenset(arc) for part in dec.parts for arc in part]
    assert len(edges) == len(set(edges)) == len(list(itertools.combinations(range(9), 2)))
