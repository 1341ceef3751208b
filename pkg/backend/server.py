import logging
from contextlib import asynccontextmanager
from typing import List, Optional

import uvicorn
from fastapi import FastAPI, HTTPException
from fastapi.concurrency import run_in_threadpool
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel, Field

from backend import analysis, core, orient, solver
from backend.blowup import detect_blow_up
from backend.codec import parse_canonical, to_data
from backend.config import configure_logging, load_config
from backend.errors import SigmaError
from backend.formatter import export_dot
from backend.models import DefiningSequence, SolveBudget, VertexOrdering
from backend.store import initialize_store, load_outcome, save_outcome

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    config = load_config()
    configure_logging(config.log_level)
    app.state.config = config
    await initialize_store(config.db_path)
    yield


app = FastAPI(title="sigma-orient API", lifespan=lifespan)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


class SequenceData(BaseModel):
    k: int
    n: int
    a: List[int]

    def to_sequence(self) -> DefiningSequence:
        return DefiningSequence(k=self.k, n=self.n, a=tuple(self.a))


class CheckData(BaseModel):
    sequence: SequenceData
    tau: List[int] = Field(description="Vertex ordering tau(1)..tau(n)")


class SolveData(BaseModel):
    sequence: SequenceData
    nodes: Optional[int] = Field(default=None, gt=0)
    seconds: Optional[float] = Field(default=None, gt=0)


class DotData(BaseModel):
    sequence: SequenceData
    tau: Optional[List[int]] = None


def _bad_request(err: SigmaError) -> HTTPException:
    return HTTPException(status_code=400, detail=f"{type(err).__name__}: {err}")


@app.get("/sequence/{canonical}")
async def describe_sequence(canonical: str):
    """Step pattern, dual, necessary predicates and standard orientation of a sequence."""
    try:
        s = parse_canonical(canonical)
    except SigmaError as err:
        raise _bad_request(err)
    standard = orient.standard_orientation(s)
    return {
        "sequence": to_data(s),
        "index": core.sequence_index(core.normalize(s)),
        "steps": to_data(core.classify_steps(s)),
        "dual": core.dual_partition(s).canonical(),
        "necessary_prefix": str(analysis.necessary_prefix(s)),
        "necessary_jump": str(analysis.necessary_jump(s)),
        "size_filter": str(analysis.size_filter(s)),
        "standard": list(standard.tau) if standard else None,
    }


@app.post("/check")
async def check_ordering(data: CheckData):
    try:
        s = data.sequence.to_sequence()
        report = orient.reversal_report(core.labeling(s), VertexOrdering(n=len(data.tau), tau=tuple(data.tau)))
    except SigmaError as err:
        raise _bad_request(err)
    return to_data(report)


@app.post("/standard")
async def standard_orientation(data: SequenceData):
    try:
        s = data.to_sequence()
    except SigmaError as err:
        raise _bad_request(err)
    orders = await run_in_threadpool(orient.standard_orientations, s)
    return {"orderings": [list(o.tau) for o in orders]}


@app.post("/solve")
async def solve_sequence(data: SolveData):
    """Decide the sequence; settled answers are cached in the result store."""
    config = app.state.config
    try:
        s = data.sequence.to_sequence()
    except SigmaError as err:
        raise _bad_request(err)
    cached = await load_outcome(s.canonical(), config.db_path)
    if cached is not None:
        return {"cached": True, "outcome": to_data(cached)}
    budget = SolveBudget(nodes=data.nodes or config.node_budget, seconds=data.seconds or config.time_budget)
    outcome = await run_in_threadpool(solver.solve, s, budget)
    await save_outcome(outcome, config.db_path)
    return {"cached": False, "outcome": to_data(outcome)}


@app.post("/blowup/detect")
async def blowup_detect(data: SequenceData):
    try:
        s = data.to_sequence()
    except SigmaError as err:
        raise _bad_request(err)
    witnesses = await run_in_threadpool(detect_blow_up, s, app.state.config.budget)
    return {"witnesses": to_data(witnesses)}


@app.post("/dot", response_class=PlainTextResponse)
async def dot(data: DotData):
    try:
        s = data.sequence.to_sequence()
        order = VertexOrdering(n=len(data.tau), tau=tuple(data.tau)) if data.tau is not None else None
        return export_dot(core.labeling(s), order)
    except SigmaError as err:
        raise _bad_request(err)


@app.get("/")
async def root():
    """API root endpoint"""
    return {
        "message": "sigma-orient API",
        "endpoints": {
            "GET /sequence/{canonical}": "Classify a sequence such as k3n12:000121",
            "POST /check": "Reversal report of an ordering",
            "POST /standard": "Standard orientations",
            "POST /solve": "Decide a sequence (cached)",
            "POST /blowup/detect": "Blow-up witnesses",
            "POST /dot": "DOT rendering",
        },
    }


if __name__ == "__main__":
    uvicorn.run(app, host="0.0.0.0", port=8000)
