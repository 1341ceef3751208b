"""
Decompositions of transitive tournaments into isomorphic oriented parts.

walecki_paths and hamiltonian_cycles build the alternating Hamiltonian path
and cycle decompositions; compose_cycle_solutions glues solutions for the
cycles of a non-cyclic permutation into one transitive tournament.
"""
import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from backend.core import edge_label, labeling, partition_exists
from backend.errors import (
    BlockRejected,
    EvenN,
    InternalContradiction,
    MultipleFixedPoints,
    OddN,
    TooSmall,
)
from backend.models import DefiningSequence, OrientedDecomposition, VertexOrdering
from backend.orient import reversal_report, standard_orientation

logger = logging.getLogger(__name__)

Arc = Tuple[int, int]
Block = Tuple[Optional[DefiningSequence], VertexOrdering]


def _orient(pairs, pos) -> Tuple[Arc, ...]:
    return tuple(sorted((u, v) if pos[u] < pos[v] else (v, u) for u, v in pairs))


def part_digraph(n: int, arcs: Sequence[Arc]) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(n))
    g.add_edges_from(arcs)
    return g


def is_spanning_path(n: int, arcs: Sequence[Arc]) -> bool:
    g = part_digraph(n, arcs).to_undirected()
    return g.number_of_edges() == n - 1 and nx.is_connected(g) and max(d for _, d in g.degree) <= 2


def is_spanning_cycle(n: int, arcs: Sequence[Arc]) -> bool:
    g = part_digraph(n, arcs).to_undirected()
    return nx.is_connected(g) and all(d == 2 for _, d in g.degree)


def alternation_defects(n: int, arcs: Sequence[Arc]) -> List[int]:
    """Vertices that are neither a source nor a sink of the part."""
    g = part_digraph(n, arcs)
    return [v for v in g if g.in_degree(v) and g.out_degree(v)]


def check_part_images(dec: OrientedDecomposition) -> None:
    """permutation^d carries the first oriented part onto part d."""
    perm = dec.permutation
    image = set(dec.parts[0])
    for d, part in enumerate(dec.parts):
        if image != set(part):
            raise InternalContradiction(f"part {d} is not the image of part 0")
        image = {(perm[u], perm[v]) for u, v in image}


def walecki_paths(n: int) -> Tuple[DefiningSequence, OrientedDecomposition]:
    if n % 2:
        raise OddN(f"Hamiltonian path decompositions need even n, got {n}")
    if n < 4:
        raise TooSmall(f"Hamiltonian path decompositions need n >= 4, got {n}")
    s = DefiningSequence(k=n // 2, n=n, a=tuple(i // 2 for i in range(1, n // 2 + 1)))
    order = standard_orientation(s)
    if order is None:
        raise InternalContradiction(f"{s.canonical()} has no standard orientation")
    p = labeling(s)
    pos = order.positions()
    by_label: Dict[int, List[Arc]] = {d: [] for d in range(s.k)}
    for u, v in itertools.combinations(range(n), 2):
        by_label[edge_label(p, u, v)].append((u, v))
    dec = OrientedDecomposition(
        n=n,
        k=s.k,
        parts=tuple(_orient(by_label[d], pos) for d in range(s.k)),
        global_order=order,
        permutation=tuple((v + 1) % n for v in range(n)),
    )
    for d, part in enumerate(dec.parts):
        if not is_spanning_path(n, part):
            raise InternalContradiction(f"part {d} of the n={n} decomposition is not a Hamiltonian path")
        if alternation_defects(n, part):
            raise InternalContradiction(f"part {d} of the n={n} decomposition is not alternating")
    check_part_images(dec)
    return s, dec


def _path_decomposition(m: int) -> Tuple[VertexOrdering, Tuple[Tuple[Arc, ...], ...]]:
    if m == 2:
        return VertexOrdering(n=2, tau=(0, 1)), (((0, 1),),)
    _, dec = walecki_paths(m)
    return dec.global_order, dec.parts


def hamiltonian_cycles(n: int) -> OrientedDecomposition:
    """
    Walecki paths on n-1 vertices plus the apex n-1, which is joined to both
    ends of every path and placed first, so all its edges point away from it.
    """
    if n % 2 == 0:
        raise EvenN(f"Hamiltonian cycle decompositions need odd n, got {n}")
    if n < 3:
        raise TooSmall(f"Hamiltonian cycle decompositions need n >= 3, got {n}")
    m, apex = n - 1, n - 1
    order, paths = _path_decomposition(m)
    parts = []
    for d, path in enumerate(paths):
        ends = (d, (m // 2 + d) % m)
        degree = part_digraph(m, path).to_undirected().degree
        if any(degree[e] != 1 for e in ends):
            raise InternalContradiction(f"{ends} are not the ends of path {d}")
        parts.append(tuple(sorted(path + tuple((apex, e) for e in ends))))
    dec = OrientedDecomposition(
        n=n,
        k=len(parts),
        parts=tuple(parts),
        global_order=VertexOrdering(n=n, tau=(apex,) + order.tau),
        permutation=tuple((v + 1) % m for v in range(m)) + (apex,),
    )
    for d, part in enumerate(dec.parts):
        if not is_spanning_cycle(n, part):
            raise InternalContradiction(f"part {d} of the n={n} decomposition is not a Hamiltonian cycle")
        if len(alternation_defects(n, part)) != 1:
            raise InternalContradiction(f"part {d} of the n={n} decomposition is not alternating off one vertex")
    check_part_images(dec)
    return dec


def cycle_type_admits_partition(cycle_lengths: Sequence[int], k: int) -> bool:
    """
    A sigma-k-partition exists for a permutation with these cycle lengths iff
    at most one cycle is a fixed point and every other length admits one.
    """
    fixed = sum(1 for length in cycle_lengths if length == 1)
    return fixed <= 1 and all(partition_exists(k, length) for length in cycle_lengths if length != 1)


def compose_cycle_solutions(blocks: Sequence[Block]) -> OrientedDecomposition:
    """
    Blocks are (sequence, accepted ordering) per cycle, in order; a fixed point
    is (None, VertexOrdering(n=1, tau=(0,))). Edges between blocks point toward
    the later block and are labelled by the position, mod k, of their end in
    the earlier block (the later one when the earlier is the fixed point).
    """
    if sum(1 for seq, _ in blocks if seq is None) > 1:
        raise MultipleFixedPoints("at most one block may be a fixed point")
    ks = {seq.k for seq, _ in blocks if seq is not None}
    if len(ks) != 1:
        raise BlockRejected(f"blocks must share a single k, got {sorted(ks)}")
    k = ks.pop()
    cycle_lengths = [order.n for _, order in blocks]
    if not cycle_type_admits_partition(cycle_lengths, k):
        raise BlockRejected(f"cycle type {cycle_lengths} admits no sigma-{k}-partition")

    offsets, lengths, labelings = [], [], []
    total = 0
    for b, (seq, order) in enumerate(blocks):
        if seq is None:
            if order.n != 1:
                raise BlockRejected(f"block {b}: a fixed point has one vertex, got {order.n}")
            labelings.append(None)
        else:
            p = labeling(seq)
            report = reversal_report(p, order)
            if not report.accepted:
                raise BlockRejected(f"block {b}: ordering reverses {report.first_violation}")
            labelings.append(p)
        offsets.append(total)
        lengths.append(order.n)
        total += order.n

    block_of = [b for b, length in enumerate(lengths) for _ in range(length)]

    def label(x: int, y: int) -> int:
        bx, by = block_of[x], block_of[y]
        if bx == by:
            return edge_label(labelings[bx], x - offsets[bx], y - offsets[bx])
        if bx > by:
            x, y, bx, by = y, x, by, bx
        if labelings[bx] is None:
            return (y - offsets[by]) % k
        return (x - offsets[bx]) % k

    tau = tuple(offsets[b] + v for b, (_, order) in enumerate(blocks) for v in order.tau)
    global_order = VertexOrdering(n=total, tau=tau)
    pos = global_order.positions()
    permutation = tuple(offsets[b] + (v - offsets[b] + 1) % lengths[b] for v, b in enumerate(block_of))

    by_label: Dict[int, List[Arc]] = {d: [] for d in range(k)}
    for x, y in itertools.combinations(range(total), 2):
        d = label(x, y)
        if (pos[x] < pos[y]) != (pos[permutation[x]] < pos[permutation[y]]) and d != k - 1:
            raise InternalContradiction(f"composed permutation reverses {{{x}, {y}}} with label {d}")
        if label(permutation[x], permutation[y]) != (d + 1) % k:
            raise InternalContradiction(f"label of {{{x}, {y}}} does not advance under the permutation")
        by_label[d].append((x, y))
    dec = OrientedDecomposition(
        n=total,
        k=k,
        parts=tuple(_orient(by_label[d], pos) for d in range(k)),
        global_order=global_order,
        permutation=permutation,
    )
    logger.debug("composed %d blocks into %d vertices", len(blocks), total)
    return dec
