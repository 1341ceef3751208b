"""
Blow-ups: sigma_n-partitions that repeat a sigma_m-partition's labels away
from the multiples of m, and the lifting of an accepted ordering of the base
to one of the blow-up.
"""
import logging
from typing import Dict, List, Optional

from backend.core import edge_label, labeling, partition_exists
from backend.errors import (
    BadMultiple,
    BaseOrderRejected,
    InternalContradiction,
    MissingFreeValue,
    NotABlowUp,
    SpuriousFreeValue,
)
from backend.models import BlowUpWitness, DefiningSequence, SolveBudget, VertexOrdering
from backend.orient import reversal_report, standard_orientation
from backend.solver import solve

logger = logging.getLogger(__name__)


def free_indices(m: int, n: int) -> List[int]:
    """Indices 1..n//2 divisible by m; their labels are not fixed by the base."""
    return list(range(m, n // 2 + 1, m))


def blow_up_sequence(base: DefiningSequence, n: int, free: Dict[int, int]) -> DefiningSequence:
    m = base.n
    if n % m:
        raise BadMultiple(f"n={n} is not a multiple of the base size {m}")
    wanted = set(free_indices(m, n))
    missing = sorted(wanted - set(free))
    if missing:
        raise MissingFreeValue(f"no label given for indices {missing}")
    spurious = sorted(set(free) - wanted)
    if spurious:
        raise SpuriousFreeValue(f"indices {spurious} are fixed by the base")
    ext = labeling(base).ext
    a = tuple(free[i] if i % m == 0 else ext[i % m - 1] for i in range(1, n // 2 + 1))
    return DefiningSequence(k=base.k, n=n, a=a)


def _free_values(s: DefiningSequence, m: int) -> Dict[int, int]:
    return {i: s.at(i) for i in free_indices(m, s.n)}


def is_blow_up_of(s: DefiningSequence, base: DefiningSequence) -> bool:
    if s.k != base.k or s.n % base.n:
        return False
    return blow_up_sequence(base, s.n, _free_values(s, base.n)) == s


def _seed(d: int) -> List[int]:
    """0, 1, d-1, 2, d-2, ..., ending at ceil(d/2)."""
    order = [0]
    j = 1
    while j < d - j:
        order += [j, d - j]
        j += 1
    if j == d - j:
        order.append(j)
    return order


def _swap_step(order: List[int], pairs, m: int, i: int, p, swaps: Dict) -> List[int]:
    k = p.k
    order = list(order)
    place = {x: t for t, x in enumerate(order)}
    for lo, hi in pairs:
        if edge_label(p, lo * m + i, hi * m + i) != k - 1:
            continue
        a, b = place[lo], place[hi]
        if abs(a - b) != 1:
            raise InternalContradiction(f"{lo} and {hi} are not adjacent in block {i}")
        order[a], order[b] = order[b], order[a]
        place[lo], place[hi] = b, a
        swaps[(lo, hi)] = swaps.get((lo, hi), 0) + 1
    return order


def _check_single_swaps(swaps: Dict, pairs, phase: str) -> None:
    for pair in pairs:
        if swaps.get(pair, 0) != 1:
            raise InternalContradiction(f"{phase}: pair {pair} swapped {swaps.get(pair, 0)} times")


def inner_orders(p, m: int, d: int) -> List[List[int]]:
    """Orders tau_0..tau_{m-1} of [d] used inside the blocks H_i = {jm + i}."""
    k = p.k
    orders = [_seed(d)]
    first = [(j, d - j) for j in range(1, d) if j < d - j]
    swaps = {}
    for i in range(k):
        orders.append(_swap_step(orders[-1], first, m, i, p, swaps))
    _check_single_swaps(swaps, first, "first phase")
    second = [(j, d - 1 - j) for j in range(d) if j < d - 1 - j]
    swaps = {}
    for i in range(k, 2 * k):
        orders.append(_swap_step(orders[-1], second, m, i, p, swaps))
    _check_single_swaps(swaps, second, "second phase")
    # orders now holds tau_0..tau_2k; later blocks repeat tau_2k
    return [orders[min(i, 2 * k)] for i in range(m)]


def _check_wraparound(p, m: int, d: int, last: List[int], first: List[int]) -> None:
    """Inner edges of H_{m-1} map into H_0; any flip there must carry label k-1."""
    at_last = {x: t for t, x in enumerate(last)}
    at_first = {x: t for t, x in enumerate(first)}
    for A in range(d):
        for B in range(d):
            if A == B or at_last[A] > at_last[B]:
                continue
            if at_first[(B + 1) % d] < at_first[(A + 1) % d]:
                if edge_label(p, A * m + m - 1, B * m + m - 1) != p.k - 1:
                    raise InternalContradiction(f"wrap-around flip of {A}, {B} in block {m - 1} is not label k-1")


def lift_orientation(
    base: DefiningSequence, base_order: VertexOrdering, target: DefiningSequence
) -> VertexOrdering:
    if not is_blow_up_of(target, base):
        raise NotABlowUp(f"{target.canonical()} is not a blow-up of {base.canonical()}")
    report = reversal_report(labeling(base), base_order)
    if not report.accepted:
        raise BaseOrderRejected(f"base ordering reverses {report.first_violation}")
    m, n = base.n, target.n
    d = n // m
    if d == 1:
        return base_order
    p = labeling(target)
    inner = inner_orders(p, m, d)
    _check_wraparound(p, m, d, inner[m - 1], inner[0])
    tau = [t * m + i for i in base_order.tau for t in inner[i]]
    lifted = VertexOrdering(n=n, tau=tuple(tau))
    check = reversal_report(p, lifted)
    if not check.accepted:
        raise InternalContradiction(f"lifted ordering for {target.canonical()} reverses {check.first_violation}")
    logger.debug("lifted %s to %s: %s", base.canonical(), target.canonical(), lifted.tau)
    return lifted


def detect_blow_up(
    s: DefiningSequence, budget: Optional[SolveBudget] = None, check_base: bool = True
) -> List[BlowUpWitness]:
    """
    Every proper divisor m of n for which s repeats the labels of the partition
    a_1..a_{m//2} on m vertices. Bases are flagged as standard and solved unless
    check_base is off.
    """
    witnesses = []
    for m in range(s.k, s.n):
        if s.n % m or not partition_exists(s.k, m):
            continue
        base = DefiningSequence(k=s.k, n=m, a=s.a[: m // 2])
        if not is_blow_up_of(s, base):
            continue
        witness = BlowUpWitness(m=m, base=base, free=_free_values(s, m))
        if check_base:
            witness = witness.model_copy(update={
                "base_standard": standard_orientation(base) is not None,
                "base_status": solve(base, budget).status,
            })
        witnesses.append(witness)
    return witnesses
