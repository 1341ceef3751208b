"""
Vertex orderings, the reversal checker and the standard orientation.

An ordering tau stands for the transitive tournament that orients every edge
toward the vertex placed later. sigma_n reverses the edge {u, v} when
{u+1, v+1} is oriented the other way round; tau is accepted for a partition
when only label-(k-1) edges are reversed.
"""
import itertools
import logging
from typing import Iterator, List, Optional, Tuple

from backend.core import classify_steps, edge_label, labeling, shift_partition
from backend.errors import InternalContradiction, SizeMismatch, TooSmall
from backend.models import (
    DefiningSequence,
    OrientationReport,
    PartitionLabeling,
    Verdict,
    VertexOrdering,
)

logger = logging.getLogger(__name__)


def _check_size(p: PartitionLabeling, o: VertexOrdering) -> None:
    if o.n != p.n:
        raise SizeMismatch(f"ordering has {o.n} vertices, partition has {p.n}")


def reversal_report(p: PartitionLabeling, o: VertexOrdering) -> OrientationReport:
    _check_size(p, o)
    n, k = p.n, p.k
    pos = o.positions()
    reversed_edges = []
    first_violation = None
    for u, v in itertools.combinations(range(n), 2):
        if (pos[u] < pos[v]) != (pos[(u + 1) % n] < pos[(v + 1) % n]):
            label = edge_label(p, u, v)
            reversed_edges.append((u, v, label))
            if label != k - 1 and first_violation is None:
                first_violation = (u, v)
    return OrientationReport(
        k=k,
        n=n,
        reversed_edges=tuple(reversed_edges),
        verdict=Verdict.REJECT if first_violation else Verdict.ACCEPT,
        first_violation=first_violation,
    )


def accepts(p: PartitionLabeling, o: VertexOrdering) -> bool:
    """reversal_report(p, o).accepted, stopping at the first violation."""
    _check_size(p, o)
    n, k = p.n, p.k
    pos = o.positions()
    for u, v in itertools.combinations(range(n), 2):
        if (pos[u] < pos[v]) != (pos[(u + 1) % n] < pos[(v + 1) % n]) and edge_label(p, u, v) != k - 1:
            return False
    return True


def shift_ordering(o: VertexOrdering, c: int) -> VertexOrdering:
    return VertexOrdering(n=o.n, tau=tuple((v + c) % o.n for v in o.tau))


def dual_ordering(o: VertexOrdering) -> VertexOrdering:
    """Witness map from a partition to its dual: v -> n - v."""
    return VertexOrdering(n=o.n, tau=tuple((o.n - v) % o.n for v in o.tau))


def local_extrema(o: VertexOrdering) -> Tuple[List[int], List[int]]:
    """Local minima and maxima, comparing each vertex with v - 1 and v + 1 (mod n)."""
    n = o.n
    if n < 3:
        raise TooSmall(f"local extrema need n >= 3, got {n}")
    pos = o.positions()
    minima, maxima = [], []
    for v in range(n):
        left, right = pos[(v - 1) % n], pos[(v + 1) % n]
        if pos[v] < left and pos[v] < right:
            minima.append(v)
        elif pos[v] > left and pos[v] > right:
            maxima.append(v)
    return minima, maxima


def is_bitonic(o: VertexOrdering) -> Tuple[bool, Optional[int], Optional[int]]:
    minima, maxima = local_extrema(o)
    local_min = minima[0] if len(minima) == 1 else None
    local_max = maxima[0] if len(maxima) == 1 else None
    return local_min is not None and local_max is not None, local_min, local_max


def bitonic_orderings(n: int) -> Iterator[VertexOrdering]:
    """
    Every bitonic ordering of [n]: pick the first vertex, then grow the arc of
    placed vertices by one at its left or its right end.
    """
    if n < 3:
        raise TooSmall(f"bitonic orderings need n >= 3, got {n}")
    for start in range(n):
        for choices in itertools.product((0, 1), repeat=n - 2):
            tau = [start]
            lo, hi = start, start
            for go_right in choices:
                if go_right:
                    hi += 1
                    tau.append(hi % n)
                else:
                    lo -= 1
                    tau.append(lo % n)
            tau.append((lo - 1) % n)
            yield VertexOrdering(n=n, tau=tuple(tau))


def standard_condition(s: DefiningSequence) -> bool:
    return s.n % (2 * s.k) == 0 and not classify_steps(s).has_jump


def standard_orientation(s: DefiningSequence) -> Optional[VertexOrdering]:
    """
    The bitonic accepted ordering, or None when the sequence jumps or 2k does
    not divide n.

    Works on the normalized sequence (a_1 = 0) and maps the result back.
    The placed vertices always form the arc {j+1, ..., j+i}; the label of
    {j, j+i+1} decides which end grows: 0 extends to the left, k-1 to the
    right. Any other label would contradict the construction.
    """
    if not standard_condition(s):
        return None
    c = s.a[0]
    p = labeling(shift_partition(s, c))
    n, k = s.n, s.k
    tau = [0]
    j = n - 1
    for i in range(1, n - 1):
        label = edge_label(p, j, j + i + 1)
        if label == 0:
            tau.append(j % n)
            j -= 1
        elif label == k - 1:
            tau.append((j + i + 1) % n)
        else:
            raise InternalContradiction(
                f"{s.canonical()}: label {label} on {{{j % n}, {(j + i + 1) % n}}} at step {i}"
            )
    tau.append(j % n)
    ordering = VertexOrdering(n=n, tau=tuple(tau))
    logger.debug("standard orientation of %s: %s", s.canonical(), ordering.tau)
    return shift_ordering(ordering, -c)


def standard_orientations(s: DefiningSequence) -> List[VertexOrdering]:
    """All standard orderings: the canonical one shifted by multiples of k."""
    base = standard_orientation(s)
    if base is None:
        return []
    return sorted((shift_ordering(base, j * s.k) for j in range(s.n // s.k)), key=lambda o: o.tau)
