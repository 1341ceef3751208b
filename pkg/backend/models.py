from enum import Enum
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from backend.errors import (
    AlphabetError,
    ConsistencyError,
    DivisibilityError,
    InternalContradiction,
    LengthError,
    OrderingError,
)


class FrozenModel(BaseModel):
    """Immutable value object; unknown fields are rejected on decode."""
    model_config = ConfigDict(frozen=True, extra="forbid")


def check_partition_size(k: int, n: int) -> None:
    """Raise DivisibilityError unless a sigma_n-k-partition of K_n exists."""
    if n < k:
        raise DivisibilityError(f"n={n} is smaller than k={k}")
    if n % k:
        raise DivisibilityError(f"k={k} does not divide n={n}")
    if k % 2 == 0 and n % (2 * k):
        raise DivisibilityError(f"k={k} is even, so 2k={2 * k} must divide n={n}")


class DefiningSequence(FrozenModel):
    """The labels a_1..a_{n//2} of the edges {0, j}; canonical id of a partition."""
    k: int = Field(ge=2, description="Number of parts")
    n: int = Field(ge=1, description="Number of vertices")
    a: Tuple[int, ...] = Field(description="Labels a_1..a_m, m = n // 2, in order")

    @model_validator(mode="after")
    def _check_invariants(self):
        check_partition_size(self.k, self.n)
        if len(self.a) != self.n // 2:
            raise LengthError(f"expected {self.n // 2} labels for n={self.n}, got {len(self.a)}")
        for i, label in enumerate(self.a, start=1):
            if not 0 <= label < self.k:
                raise AlphabetError(f"a_{i}={label} is outside 0..{self.k - 1}")
        return self

    @property
    def m(self) -> int:
        return self.n // 2

    def at(self, i: int) -> int:
        """a_i, 1-indexed."""
        if not 1 <= i <= self.m:
            raise IndexError(f"index {i} outside 1..{self.m}")
        return self.a[i - 1]

    def canonical(self) -> str:
        sep = "," if self.k > 10 else ""
        return f"k{self.k}n{self.n}:" + sep.join(str(x) for x in self.a)


class PartitionLabeling(FrozenModel):
    """
    Full edge-label oracle of a partition.

    ext[i - 1] is the label of the edge {0, i} for every distance 1 <= i < n,
    so the label of {u, v} is (ext((v - u) mod n) + u) mod k.
    """
    seq: DefiningSequence
    ext: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_extension(self):
        s = self.seq
        if len(self.ext) != s.n - 1:
            raise InternalContradiction(f"extended labels must cover distances 1..{s.n - 1}")
        for i in range(1, s.n):
            want = s.at(i) if i <= s.m else (s.at(s.n - i) + i) % s.k
            if self.ext[i - 1] != want:
                raise InternalContradiction(f"extended label at distance {i} is {self.ext[i - 1]}, expected {want}")
            # {u, u+i} seen from u+i is at distance n-i
            if (self.ext[i - 1] - self.ext[s.n - i - 1] - i) % s.k:
                raise InternalContradiction(f"labels at distances {i} and {s.n - i} disagree")
        return self

    @property
    def k(self) -> int:
        return self.seq.k

    @property
    def n(self) -> int:
        return self.seq.n


class StepTag(str, Enum):
    HALT = "halt"
    STEP = "step"
    JUMP = "jump"


class StepClassification(FrozenModel):
    """tags[i - 1] describes the move from a_i to a_{i+1}."""
    tags: Tuple[StepTag, ...]

    def at(self, i: int) -> StepTag:
        return self.tags[i - 1]

    def indices(self, tag: StepTag) -> Tuple[int, ...]:
        return tuple(i for i, t in enumerate(self.tags, start=1) if t == tag)

    @property
    def has_jump(self) -> bool:
        return StepTag.JUMP in self.tags


class VertexOrdering(FrozenModel):
    """tau(1)..tau(n); orienting every edge toward the later vertex gives T_n."""
    n: int = Field(ge=1)
    tau: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_bijection(self):
        if len(self.tau) != self.n:
            raise OrderingError(f"ordering lists {len(self.tau)} vertices, expected {self.n}")
        if sorted(self.tau) != list(range(self.n)):
            raise OrderingError("ordering is not a permutation of 0..n-1")
        return self

    def positions(self) -> list:
        """Inverse permutation: positions()[v] is the 0-based place of v."""
        pos = [0] * self.n
        for place, v in enumerate(self.tau):
            pos[v] = place
        return pos


class Verdict(str, Enum):
    ACCEPT = "accept"
    REJECT = "reject"


class OrientationReport(FrozenModel):
    """Edges whose orientation sigma_n reverses, as [u, v, label] with u < v."""
    k: int
    n: int
    reversed_edges: Tuple[Tuple[int, int, int], ...]
    verdict: Verdict
    first_violation: Optional[Tuple[int, int]] = None

    @model_validator(mode="after")
    def _check_verdict(self):
        bad = [(u, v) for u, v, label in self.reversed_edges if label != self.k - 1]
        if (self.verdict == Verdict.ACCEPT) != (not bad):
            raise InternalContradiction("verdict disagrees with the reversed edge labels")
        if self.first_violation != (bad[0] if bad else None):
            raise InternalContradiction("first_violation is not the first offending edge")
        return self

    @property
    def accepted(self) -> bool:
        return self.verdict == Verdict.ACCEPT


class SolveStatus(str, Enum):
    SAT = "sat"
    UNSAT = "unsat"
    BUDGET_EXCEEDED = "budget_exceeded"


class BlowUpWitness(FrozenModel):
    m: int = Field(description="Base size, a proper divisor of n")
    base: DefiningSequence
    free: Dict[int, int] = Field(description="Labels at the indices divisible by m")
    base_standard: Optional[bool] = Field(default=None, description="Base admits a standard orientation")
    base_status: Optional[SolveStatus] = Field(default=None, description="Solver verdict on the base")


class SolveBudget(FrozenModel):
    nodes: int = Field(default=10 ** 8, gt=0, description="Conflict budget handed to the SAT back end")
    seconds: float = Field(default=60.0, gt=0, description="Wall-clock limit")


class SolveStats(FrozenModel):
    nodes: int = Field(default=0, description="Decisions made by the search")
    conflicts: int = 0
    classes: int = Field(default=0, description="Orientation variables left after orbit collapse")
    seconds: float = 0.0


class SolveOutcome(FrozenModel):
    sequence: DefiningSequence
    status: SolveStatus
    witness: Optional[VertexOrdering] = None
    stats: SolveStats = Field(default_factory=SolveStats)

    @model_validator(mode="after")
    def _check_witness(self):
        if (self.status == SolveStatus.SAT) != (self.witness is not None):
            raise InternalContradiction("a witness is present exactly when the status is sat")
        if self.witness is not None and self.witness.n != self.sequence.n:
            raise InternalContradiction("witness size differs from the partition size")
        return self


class PredicateResult(FrozenModel):
    passed: bool
    index: Optional[int] = None

    def __str__(self) -> str:
        if self.passed:
            return "pass"
        return "fail" if self.index is None else f"fail@{self.index}"


class SweepRecord(FrozenModel):
    index: int = Field(description="Rank of the sequence among the normalized ones")
    sequence: DefiningSequence
    shift: int = Field(default=0, description="Shift applied to normalize a_1 to 0")
    standard: bool
    blowup: int = Field(description="Number of blow-up witnesses")
    blowup_solvable: bool = Field(default=False, description="Some witness has a sat base")
    necessary_prefix: PredicateResult
    necessary_jump: PredicateResult
    size_filter: PredicateResult
    status: SolveStatus
    witness: Optional[VertexOrdering] = None
    dual: str = Field(description="Canonical string of the dual partition")

    @property
    def necessary_pass(self) -> bool:
        return self.necessary_prefix.passed and self.necessary_jump.passed and self.size_filter.passed

    @model_validator(mode="after")
    def _check_columns(self):
        name = self.sequence.canonical()
        if self.standard and self.status == SolveStatus.UNSAT:
            raise ConsistencyError(f"{name}: standard but unsat")
        if self.blowup_solvable and self.status == SolveStatus.UNSAT:
            raise ConsistencyError(f"{name}: blow-up of a solvable base but unsat")
        if not self.necessary_pass and self.status == SolveStatus.SAT:
            raise ConsistencyError(f"{name}: fails a necessary condition but sat")
        return self


class SweepOptions(FrozenModel):
    budget: SolveBudget = Field(default_factory=SolveBudget)
    workers: int = Field(default=1, ge=1)
    start: int = Field(default=0, ge=0, description="First sequence index of the shard")
    stop: Optional[int] = Field(default=None, description="One past the last index; None runs to the end")
    check_duals: bool = True
    space_limit: int = Field(default=200000, gt=0)


class ConjectureCount(FrozenModel):
    n: int
    instances: int
    unsat: int
    budget_exceeded: int
    sat: int
    counterexamples: Tuple[SolveOutcome, ...] = ()


class ConjectureReport(FrozenModel):
    k: int
    counts: Tuple[ConjectureCount, ...]

    @property
    def sat_total(self) -> int:
        return sum(c.sat for c in self.counts)


class OrientedDecomposition(FrozenModel):
    """Parts of T_n as oriented edge lists, all consistent with global_order."""
    n: int
    k: int
    parts: Tuple[Tuple[Tuple[int, int], ...], ...]
    global_order: VertexOrdering
    permutation: Tuple[int, ...] = Field(description="Vertex map carrying part d onto part d+1")

    @model_validator(mode="after")
    def _check_decomposition(self):
        pos = self.global_order.positions()
        seen = set()
        for part in self.parts:
            for tail, head in part:
                if pos[tail] > pos[head]:
                    raise InternalContradiction(f"arc {tail}->{head} points against the global order")
                edge = frozenset((tail, head))
                if edge in seen or tail == head:
                    raise InternalContradiction(f"edge {{{tail}, {head}}} appears twice")
                seen.add(edge)
        if len(seen) != self.n * (self.n - 1) // 2:
            raise InternalContradiction("parts do not cover every edge of K_n")
        if sorted(self.permutation) != list(range(self.n)):
            raise InternalContradiction("permutation is not a bijection")
        return self
