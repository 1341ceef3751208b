import pytest

from backend import solver
from backend.core import dual_partition, labeling, normalized_sequences, shift_partition
from backend.errors import TooLarge
from backend.models import DefiningSequence, SolveBudget, SolveStatus
from backend.orient import (
    dual_ordering,
    is_bitonic,
    reversal_report,
    shift_ordering,
    standard_orientation,
    standard_orientations,
)

N24 = (0, 0, 0, 1, 2, 0, 0, 0, 1, 1, 2, 1)


def seq(k, n, a):
    return DefiningSequence(k=k, n=n, a=tuple(a))


def accepted(s, o):
    return reversal_report(labeling(s), o).accepted


def test_triangle_is_unsat():
    outcome = solver.solve(seq(3, 3, [0]))
    assert outcome.status == SolveStatus.UNSAT
    assert outcome.witness is None


@pytest.mark.parametrize("n,a", [(12, (0, 0, 0, 1, 2, 1)), (24, N24)])
def test_published_sequences_are_sat(n, a):
    s = seq(3, n, a)
    outcome = solver.solve(s)
    assert outcome.status == SolveStatus.SAT
    assert accepted(s, outcome.witness)
    assert outcome.stats.classes > 0


def test_nothing_on_nine_vertices():
    for s in normalized_sequences(3, 9):
        assert solver.solve(s).status == SolveStatus.UNSAT


def test_enumerate_constant_k6():
    s = seq(3, 6, [0, 0, 0])
    found = solver.enumerate(s)
    assert [o.tau for o in found] == [o.tau for o in standard_orientations(s)]
    assert [o.tau for o in found] == [o.tau for o in solver.oracle_enumerate(s)]


def test_enumerate_empty_cases():
    assert solver.enumerate(seq(3, 6, [0, 0, 2])) == []
    assert solver.enumerate(seq(3, 3, [0])) == []


def test_enumerate_cap():
    s = seq(3, 12, [0, 0, 0, 1, 2, 1])
    assert len(solver.enumerate(s, cap=1)) == 1


@pytest.mark.parametrize("n", [3, 6, 9])
def test_solver_agrees_with_oracle(n):
    for s in normalized_sequences(3, n):
        assert solver.solve(s).status == solver.oracle_solve(s).status


def test_enumerate_agrees_with_oracle_k6():
    for s in normalized_sequences(3, 6):
        assert [o.tau for o in solver.enumerate(s)] == [o.tau for o in solver.oracle_enumerate(s)]


@pytest.mark.parametrize("n,a,expected", [
    (3, (0,), SolveStatus.UNSAT),
    (6, (0, 0, 0), SolveStatus.SAT),
    (9, (0, 0, 0, 0), SolveStatus.UNSAT),
])
def test_oracle_solve_decides_small_instances(n, a, expected):
    outcome = solver.oracle_solve(seq(3, n, a))
    assert outcome.status == expected
    assert outcome.stats.nodes >= 1


def test_enumerate_with_zero_cap_skips_the_solver(monkeypatch):
    def no_solver(*args, **kwargs):
        raise AssertionError("solver started")

    monkeypatch.setattr(solver, "Solver", no_solver)
    assert solver.enumerate(seq(3, 6, [0, 0, 0]), cap=0) == []


def test_oracle_finds_witness():
    s = seq(3, 6, [0, 1, 2])
    outcome = solver.oracle_solve(s)
    assert outcome.status == SolveStatus.SAT
    assert accepted(s, outcome.witness)
    assert outcome.stats.nodes > 0


def test_oracle_refuses_large_n():
    with pytest.raises(TooLarge):
        solver.oracle_solve(seq(3, 12, [0, 0, 0, 1, 2, 1]))


@pytest.mark.parametrize("n", [6, 12])
def test_dual_has_same_status(n):
    for s in normalized_sequences(3, n):
        mine, dual = solver.solve(s), solver.solve(dual_partition(s))
        assert mine.status == dual.status
        if mine.witness is not None:
            assert accepted(dual_partition(s), dual_ordering(mine.witness))


def test_shifts_have_same_status():
    for s in list(normalized_sequences(3, 12))[::10]:
        outcome = solver.solve(s)
        for c in (1, 2):
            shifted = shift_partition(s, c)
            assert solver.solve(shifted).status == outcome.status
            if outcome.witness is not None:
                assert accepted(shifted, shift_ordering(outcome.witness, c))


def test_standard_implies_sat():
    for s in normalized_sequences(3, 12):
        if standard_orientation(s) is not None:
            assert solver.solve(s).status == SolveStatus.SAT


def test_every_k6_witness_is_bitonic():
    for s in normalized_sequences(3, 6):
        outcome = solver.solve(s)
        if outcome.witness is not None:
            assert is_bitonic(outcome.witness)[0]


class _ExhaustedSolver:
    def __init__(self, name, bootstrap_with):
        self.clauses = bootstrap_with

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False

    def conf_budget(self, budget):
        pass

    def interrupt(self):
        pass

    def solve_limited(self, expect_interrupt=False):
        return None

    def accum_stats(self):
        return {"decisions": 7}

    def get_model(self):
        return None


def test_budget_exceeded_is_reported(monkeypatch):
    monkeypatch.setattr(solver, "Solver", _ExhaustedSolver)
    outcome = solver.solve(seq(3, 12, [0, 0, 0, 1, 2, 1]), SolveBudget(nodes=1, seconds=5))
    assert outcome.status == SolveStatus.BUDGET_EXCEEDED
    assert outcome.witness is None
    assert outcome.stats.nodes == 7
