"""
Edge orbits of sigma_n and the orientation classes they force.

For an edge {u, v} with label != k-1 an accepted ordering must orient
{u+1, v+1} the same way, so "u before v" and "u+1 before v+1" are one
boolean. A union-find with parity merges those booleans; each resulting
class is one free orientation bit for the solver.
"""
import itertools
from collections import defaultdict
from typing import Dict, Iterator, List, Tuple

from backend.core import edge_label
from backend.models import PartitionLabeling

Pair = Tuple[int, int]


class ParityUnionFind:
    """
    Disjoint sets over hashable items where every item also carries a parity
    relative to its representative (union by size, path compression).
    """

    def __init__(self, items=()):
        self.parents = {}
        self.weights = {}
        self.parity = {}
        for item in items:
            self.parents[item] = item
            self.weights[item] = 1
            self.parity[item] = 0

    def find(self, item) -> Tuple[object, int]:
        if item not in self.parents:
            self.parents[item] = item
            self.weights[item] = 1
            self.parity[item] = 0
            return item, 0
        path = []
        root = item
        while self.parents[root] != root:
            path.append(root)
            root = self.parents[root]
        # compress, folding parities along the way (deepest first)
        acc = 0
        for node in reversed(path):
            acc ^= self.parity[node]
            self.parity[node] = acc
            self.parents[node] = root
        return root, self.parity[item] if path else 0

    def union(self, a, b, odd: int) -> bool:
        """Record value(a) xor value(b) == odd. False if that contradicts earlier unions."""
        root_a, par_a = self.find(a)
        root_b, par_b = self.find(b)
        if root_a == root_b:
            return (par_a ^ par_b) == odd
        if self.weights[root_a] < self.weights[root_b]:
            root_a, root_b = root_b, root_a
            par_a, par_b = par_b, par_a
        self.parents[root_b] = root_a
        self.parity[root_b] = par_a ^ par_b ^ odd
        self.weights[root_a] += self.weights[root_b]
        return True

    def __iter__(self):
        return iter(self.parents)

    def groups(self) -> Dict[object, List]:
        one_to_many = defaultdict(list)
        for item in self.parents:
            one_to_many[self.find(item)[0]].append(item)
        return dict(one_to_many)


class OrientationClasses:
    """
    literal[(u, v)] for u < v is (class id, negated): "u before v" equals
    class `id` when negated is False and its complement otherwise.
    """

    def __init__(self, n: int, literal: Dict[Pair, Tuple[int, bool]], count: int, conflict: bool):
        self.n = n
        self.literal = literal
        self.count = count
        self.conflict = conflict

    def lit(self, u: int, v: int) -> int:
        """DIMACS literal (class ids are 1-based) for "u before v"."""
        if u < v:
            cls, neg = self.literal[(u, v)]
            return -cls if neg else cls
        cls, neg = self.literal[(v, u)]
        return cls if neg else -cls

    def pairs(self) -> Iterator[Pair]:
        return iter(self.literal)


def orientation_classes(p: PartitionLabeling) -> OrientationClasses:
    n, k = p.n, p.k
    pairs = list(itertools.combinations(range(n), 2))
    uf = ParityUnionFind(pairs)
    conflict = False
    for u, v in pairs:
        if edge_label(p, u, v) == k - 1:
            continue
        a, b = (u + 1) % n, (v + 1) % n
        # "a before b" is stored on (min, max); a > b means the stored bit is flipped
        if not uf.union((u, v), (min(a, b), max(a, b)), int(a > b)):
            conflict = True
    ids = {}
    literal = {}
    for pair in pairs:
        root, par = uf.find(pair)
        if root not in ids:
            ids[root] = len(ids) + 1
        literal[pair] = (ids[root], bool(par))
    return OrientationClasses(n, literal, len(ids), conflict)
