"""
Defining sequences and the cyclic edge labeling they induce.

Vertices are the integers 0..n-1 and labels the integers 0..k-1; all modular
reduction of both happens in edge_label.
"""
import itertools
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

import networkx as nx

from backend.errors import DivisibilityError, SelfLoopError
from backend.models import (
    DefiningSequence,
    PartitionLabeling,
    StepClassification,
    StepTag,
    check_partition_size,
)


def partition_exists(k: int, n: int) -> bool:
    try:
        check_partition_size(k, n)
    except DivisibilityError:
        return False
    return True


def validate_sequence(k: int, n: int, a: Sequence[int]) -> DefiningSequence:
    return DefiningSequence(k=k, n=n, a=tuple(a))


@lru_cache(maxsize=1024)
def labeling(s: DefiningSequence) -> PartitionLabeling:
    ext = [s.at(i) if i <= s.m else (s.at(s.n - i) + i) % s.k for i in range(1, s.n)]
    return PartitionLabeling(seq=s, ext=tuple(ext))


def edge_label(p: PartitionLabeling, u: int, v: int) -> int:
    n = p.n
    u, v = u % n, v % n
    if u == v:
        raise SelfLoopError(f"{{{u}, {v}}} is not an edge")
    return (p.ext[(v - u) % n - 1] + u) % p.k


def shift_partition(s: DefiningSequence, c: int) -> DefiningSequence:
    """
    Relabel every vertex v as v + c. Parts keep their names, so a_i drops by c;
    a witness ordering tau of s becomes tau + c.
    """
    return s.model_copy(update={"a": tuple((x - c) % s.k for x in s.a)})


def normalize(s: DefiningSequence) -> DefiningSequence:
    return shift_partition(s, s.a[0]) if s.a else s


def dual_partition(s: DefiningSequence) -> DefiningSequence:
    """b_i = (i - 1 - a_i) mod k; an involution."""
    return s.model_copy(update={"a": tuple((i - 1 - x) % s.k for i, x in enumerate(s.a, start=1))})


def classify_steps(s: DefiningSequence) -> StepClassification:
    tags = []
    for prev, nxt in zip(s.a, s.a[1:]):
        if nxt == prev:
            tags.append(StepTag.HALT)
        elif nxt == (prev + 1) % s.k:
            tags.append(StepTag.STEP)
        else:
            tags.append(StepTag.JUMP)
    return StepClassification(tags=tuple(tags))


def part_edges(p: PartitionLabeling, d: int) -> List[Tuple[int, int]]:
    """Edges of F_d as (u, v) with u < v, sorted."""
    return [(u, v) for u, v in itertools.combinations(range(p.n), 2) if edge_label(p, u, v) == d]


def part_graph(p: PartitionLabeling, d: int) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(p.n))
    g.add_edges_from(part_edges(p, d))
    return g


# -- enumeration of normalized sequences -------------------------------------

def space_size(k: int, n: int) -> int:
    return k ** (n // 2 - 1)


def normalized_sequences(k: int, n: int) -> Iterator[DefiningSequence]:
    """All sequences with a_1 = 0, in lexicographic order."""
    check_partition_size(k, n)
    for tail in itertools.product(range(k), repeat=n // 2 - 1):
        yield DefiningSequence(k=k, n=n, a=(0,) + tail)


def sequence_at_index(k: int, n: int, index: int) -> DefiningSequence:
    """Inverse of sequence_index."""
    digits = []
    for _ in range(n // 2 - 1):
        index, r = divmod(index, k)
        digits.append(r)
    return DefiningSequence(k=k, n=n, a=(0,) + tuple(reversed(digits)))


def sequence_index(s: DefiningSequence) -> int:
    """Lexicographic rank of a normalized sequence among normalized_sequences."""
    index = 0
    for x in s.a[1:]:
        index = index * s.k + x
    return index
