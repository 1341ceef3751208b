"""
Necessary conditions for a transitive sigma_n-orientation and the sweep
harness that classifies every normalized sequence of a given (k, n).
"""
import logging
from multiprocessing import Pool
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from backend.blowup import detect_blow_up
from backend.core import (
    classify_steps,
    dual_partition,
    labeling,
    normalize,
    sequence_at_index,
    sequence_index,
    space_size,
)
from backend.errors import ConsistencyError, EvenN, InternalContradiction, SpaceTooLarge
from backend.models import (
    ConjectureCount,
    ConjectureReport,
    DefiningSequence,
    PredicateResult,
    SolveBudget,
    SolveOutcome,
    SolveStatus,
    StepTag,
    SweepOptions,
    SweepRecord,
    check_partition_size,
)
from backend.orient import reversal_report, standard_condition
from backend.solver import solve

logger = logging.getLogger(__name__)

PASS = PredicateResult(passed=True)


def necessary_prefix(s: DefiningSequence) -> PredicateResult:
    """
    On the normalized sequence: while no label k-1 has appeared among
    a_1..a_i, a_{i+1} may exceed a_i by at most one (as integers).
    """
    s = normalize(s)
    for i in range(1, s.m):
        if s.at(i) == s.k - 1:
            break
        if s.at(i + 1) > s.at(i) + 1:
            return PredicateResult(passed=False, index=i)
    return PASS


def necessary_jump(s: DefiningSequence) -> PredicateResult:
    """Before every jump there is a halt and k-1 steps, or a step and k-1 halts."""
    tags = classify_steps(s)
    halts = steps = 0
    for i, tag in enumerate(tags.tags, start=1):
        if tag == StepTag.JUMP:
            ok = (halts >= 1 and steps >= s.k - 1) or (steps >= 1 and halts >= s.k - 1)
            if not ok:
                return PredicateResult(passed=False, index=i)
        elif tag == StepTag.HALT:
            halts += 1
        else:
            steps += 1
    return PASS


def size_filter(s: DefiningSequence) -> PredicateResult:
    if s.n < 2 * s.k or s.n == 3 * s.k:
        return PredicateResult(passed=False)
    return PASS


def classify_sequence(s: DefiningSequence, budget: Optional[SolveBudget] = None) -> SweepRecord:
    witnesses = detect_blow_up(s, budget)
    outcome = solve(s, budget)
    return SweepRecord(
        index=sequence_index(normalize(s)),
        sequence=s,
        shift=s.a[0],
        standard=standard_condition(s),
        blowup=len(witnesses),
        blowup_solvable=any(w.base_status == SolveStatus.SAT for w in witnesses),
        necessary_prefix=necessary_prefix(s),
        necessary_jump=necessary_jump(s),
        size_filter=size_filter(s),
        status=outcome.status,
        witness=outcome.witness,
        dual=dual_partition(s).canonical(),
    )


# -- workers (module level so Pool can pickle them) ---------------------------

def _classify_job(job) -> SweepRecord:
    k, n, index, budget = job
    return classify_sequence(sequence_at_index(k, n, index), budget)


def _solve_job(job) -> SolveOutcome:
    k, n, index, budget = job
    return solve(sequence_at_index(k, n, index), budget)


def _run(fn: Callable, jobs: List, workers: int) -> List:
    if workers <= 1 or len(jobs) < 2:
        return [fn(job) for job in jobs]
    chunk = max(1, len(jobs) // (workers * 8))
    with Pool(workers) as pool:
        return list(pool.imap(fn, jobs, chunksize=chunk))


def _check_space(k: int, n: int, limit: int) -> int:
    check_partition_size(k, n)
    size = space_size(k, n)
    if size > limit:
        raise SpaceTooLarge(f"k={k}, n={n} has {size} normalized sequences, limit is {limit}")
    return size


def check_duals(records: Sequence[SweepRecord], budget: Optional[SolveBudget] = None) -> None:
    """Dual partitions are solvable together; raise ConsistencyError otherwise."""
    by_name = {r.sequence.canonical(): r for r in records}
    for record in records:
        if record.status == SolveStatus.BUDGET_EXCEEDED:
            continue
        other = by_name.get(record.dual)
        status = other.status if other else solve(dual_partition(record.sequence), budget).status
        if status != SolveStatus.BUDGET_EXCEEDED and status != record.status:
            raise ConsistencyError(f"{record.sequence.canonical()} is {record.status.value}, its dual is {status.value}")


def sweep(k: int, n: int, options: Optional[SweepOptions] = None) -> List[SweepRecord]:
    options = options or SweepOptions()
    size = _check_space(k, n, options.space_limit)
    stop = size if options.stop is None else min(options.stop, size)
    jobs = [(k, n, index, options.budget) for index in range(options.start, stop)]
    logger.info("sweep k=%d n=%d: %d sequences on %d workers", k, n, len(jobs), options.workers)
    records = sorted(_run(_classify_job, jobs, options.workers), key=lambda r: r.index)
    if options.check_duals:
        check_duals(records, options.budget)
    logger.info(
        "sweep k=%d n=%d done: %d sat", k, n, sum(r.status == SolveStatus.SAT for r in records)
    )
    return records


def merge_sweeps(*parts: Iterable[SweepRecord]) -> List[SweepRecord]:
    """Union of shards by sequence index; overlapping records must agree."""
    merged: Dict[tuple, SweepRecord] = {}
    for part in parts:
        for record in part:
            key = (record.sequence.k, record.sequence.n, record.index)
            seen = merged.get(key)
            if seen is not None and seen != record:
                raise ConsistencyError(f"shards disagree on {record.sequence.canonical()}")
            merged[key] = record
    return [merged[key] for key in sorted(merged)]


def non_completeness_witnesses(records: Iterable[SweepRecord]) -> List[SweepRecord]:
    """Sequences that pass every necessary predicate and still have no orientation."""
    return [r for r in records if r.necessary_pass and r.status == SolveStatus.UNSAT]


def conjecture_scan(
    k: int,
    n_list: Sequence[int],
    budget: Optional[SolveBudget] = None,
    workers: int = 1,
    space_limit: int = 200000,
) -> ConjectureReport:
    counts = []
    for n in n_list:
        if n % 2 == 0:
            raise EvenN(f"conjecture scans cover odd n only, got {n}")
        size = _check_space(k, n, space_limit)
        jobs = [(k, n, index, budget) for index in range(size)]
        outcomes = _run(_solve_job, jobs, workers)
        by_status = {status: 0 for status in SolveStatus}
        counterexamples = []
        for outcome in outcomes:
            by_status[outcome.status] += 1
            if outcome.status == SolveStatus.SAT:
                if not reversal_report(labeling(outcome.sequence), outcome.witness).accepted:
                    raise InternalContradiction(f"{outcome.sequence.canonical()}: witness fails re-check")
                logger.critical(
                    "odd-n counterexample %s with ordering %s", outcome.sequence.canonical(), outcome.witness.tau
                )
                counterexamples.append(outcome)
        logger.info("conjecture k=%d n=%d: %s", k, n, {s.value: c for s, c in by_status.items()})
        counts.append(ConjectureCount(
            n=n,
            instances=len(outcomes),
            unsat=by_status[SolveStatus.UNSAT],
            budget_exceeded=by_status[SolveStatus.BUDGET_EXCEEDED],
            sat=by_status[SolveStatus.SAT],
            counterexamples=tuple(counterexamples),
        ))
    return ConjectureReport(k=k, counts=tuple(counts))
