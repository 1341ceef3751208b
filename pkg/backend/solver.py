"""
Exact decision procedure for transitive sigma_n-orientations.

Every orientation bit "u before v" is collapsed onto its orbit class
(see backend.orbits), transitivity becomes "no directed triangle" over all
vertex triples, and the resulting CNF goes to a CDCL solver from pysat.
The oracle at the bottom is an independent depth-first search over orderings
used to cross-check the solver on small n.
"""
import itertools
import logging
import threading
import time
from typing import List, Optional

from pysat.formula import CNF
from pysat.solvers import Solver

from backend.core import edge_label, labeling
from backend.errors import InternalContradiction, TooLarge
from backend.models import (
    DefiningSequence,
    SolveBudget,
    SolveOutcome,
    SolveStats,
    SolveStatus,
    VertexOrdering,
)
from backend.orbits import OrientationClasses, orientation_classes
from backend.orient import reversal_report, shift_ordering

logger = logging.getLogger(__name__)

SAT_BACKEND = "g4"
ORACLE_MAX_N = 9


def triangle_formula(classes: OrientationClasses) -> CNF:
    """For u < v < w forbid u->v->w->u and its reverse."""
    formula = CNF()
    seen = set()
    for u, v, w in itertools.combinations(range(classes.n), 3):
        uv, vw, uw = classes.lit(u, v), classes.lit(v, w), classes.lit(u, w)
        for clause in ([-uv, -vw, uw], [uv, vw, -uw]):
            # both x and -x in a clause: always satisfied
            if any(-x in clause for x in clause):
                continue
            key = tuple(sorted(set(clause)))
            if key not in seen:
                seen.add(key)
                formula.append(list(key))
    return formula


def decode_model(classes: OrientationClasses, model: List[int]) -> VertexOrdering:
    """Vertices sorted by out-degree in the tournament; transitive means degrees n-1, ..., 0."""
    truth = {abs(x): x > 0 for x in model}
    n = classes.n
    out = [0] * n
    for u, v in classes.pairs():
        lit = classes.lit(u, v)
        if truth.get(abs(lit), False) == (lit > 0):
            out[u] += 1
        else:
            out[v] += 1
    tau = sorted(range(n), key=lambda v: -out[v])
    return VertexOrdering(n=n, tau=tuple(tau))


def _verified(s: DefiningSequence, o: VertexOrdering) -> VertexOrdering:
    report = reversal_report(labeling(s), o)
    if not report.accepted:
        raise InternalContradiction(f"{s.canonical()}: witness {o.tau} rejected at {report.first_violation}")
    return o


def solve(s: DefiningSequence, budget: Optional[SolveBudget] = None) -> SolveOutcome:
    budget = budget or SolveBudget()
    started = time.perf_counter()
    classes = orientation_classes(labeling(s))
    if classes.conflict:
        logger.debug("%s: orbit constraints contradict each other", s.canonical())
        return SolveOutcome(
            sequence=s,
            status=SolveStatus.UNSAT,
            stats=SolveStats(classes=classes.count, seconds=time.perf_counter() - started),
        )

    formula = triangle_formula(classes)
    with Solver(name=SAT_BACKEND, bootstrap_with=formula.clauses) as solver:
        solver.conf_budget(budget.nodes)
        timer = threading.Timer(budget.seconds, solver.interrupt)
        timer.start()
        try:
            result = solver.solve_limited(expect_interrupt=True)
        finally:
            timer.cancel()
        stats = solver.accum_stats()
        model = solver.get_model() if result else None

    witness = None
    if result is None:
        status = SolveStatus.BUDGET_EXCEEDED
    elif result:
        status = SolveStatus.SAT
        witness = _verified(s, decode_model(classes, model))
    else:
        status = SolveStatus.UNSAT
    outcome = SolveOutcome(
        sequence=s,
        status=status,
        witness=witness,
        stats=SolveStats(
            nodes=stats.get("decisions", 0),
            conflicts=stats.get("conflicts", 0),
            classes=classes.count,
            seconds=time.perf_counter() - started,
        ),
    )
    logger.debug(
        "%s: %d classes, %d clauses -> %s (%d decisions)",
        s.canonical(), classes.count, len(formula.clauses), status.value, outcome.stats.nodes,
    )
    return outcome


def _check_shift_closure(s: DefiningSequence, found: List[VertexOrdering]) -> None:
    taus = {o.tau for o in found}
    for o in found:
        if shift_ordering(o, s.k).tau not in taus:
            raise InternalContradiction(f"{s.canonical()}: solutions not closed under a shift by k at {o.tau}")


def enumerate(s: DefiningSequence, cap: Optional[int] = None) -> List[VertexOrdering]:
    """All accepted orderings (at most `cap`), sorted."""
    if cap is not None and cap <= 0:
        return []
    classes = orientation_classes(labeling(s))
    if classes.conflict:
        return []
    found = []
    with Solver(name=SAT_BACKEND, bootstrap_with=triangle_formula(classes).clauses) as solver:
        while cap is None or len(found) < cap:
            if not solver.solve():
                break
            model = solver.get_model()
            found.append(_verified(s, decode_model(classes, model)))
            # unmentioned classes decode as false, so block on the full assignment
            truth = {abs(x): x > 0 for x in model}
            solver.add_clause([-v if truth.get(v, False) else v for v in range(1, classes.count + 1)])
    found.sort(key=lambda o: o.tau)
    if cap is None or len(found) < cap:
        _check_shift_closure(s, found)
    return found


# -- brute-force oracle ------------------------------------------------------

def _oracle_search(s: DefiningSequence, first_only: bool):
    n, k = s.n, s.k
    if n > ORACLE_MAX_N:
        raise TooLarge(f"oracle enumerates n! orderings; n={n} exceeds {ORACLE_MAX_N}")
    p = labeling(s)
    free = [[u != v and edge_label(p, u, v) == k - 1 for v in range(n)] for u in range(n)]
    pos = [-1] * n
    tau = []
    found = []
    nodes = 0

    def consistent(x: int) -> bool:
        # edges {x, y} and {x-1, y-1} are the constraints that x can complete
        for y in tau:
            if y == x:
                continue
            for a, b in ((x, y), ((x - 1) % n, (y - 1) % n)):
                c, d = (a + 1) % n, (b + 1) % n
                if free[a][b] or min(pos[a], pos[b], pos[c], pos[d]) < 0:
                    continue
                if (pos[a] < pos[b]) != (pos[c] < pos[d]):
                    return False
        return True

    def extend() -> bool:
        nonlocal nodes
        nodes += 1
        if len(tau) == n:
            found.append(VertexOrdering(n=n, tau=tuple(tau)))
            return first_only
        for x in range(n):
            if pos[x] >= 0:
                continue
            pos[x] = len(tau)
            tau.append(x)
            if consistent(x) and extend():
                return True
            tau.pop()
            pos[x] = -1
        return False

    extend()
    return [_verified(s, o) for o in found], nodes


def oracle_solve(s: DefiningSequence) -> SolveOutcome:
    started = time.perf_counter()
    found, nodes = _oracle_search(s, first_only=True)
    return SolveOutcome(
        sequence=s,
        status=SolveStatus.SAT if found else SolveStatus.UNSAT,
        witness=found[0] if found else None,
        stats=SolveStats(nodes=nodes, seconds=time.perf_counter() - started),
    )


def oracle_enumerate(s: DefiningSequence) -> List[VertexOrdering]:
    found, _ = _oracle_search(s, first_only=False)
    return found
