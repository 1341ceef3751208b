"""
JSON and CSV encodings of the domain objects.

JSON is pydantic's encoding of the frozen models (unknown fields are
rejected on decode). Any failure while decoding surfaces as ParseError with
the source location and the failing field path.
"""
import csv
import io
import json
import re
from pathlib import Path
from typing import Any, List, Optional, Type, TypeVar

from pydantic import BaseModel, TypeAdapter, ValidationError

from backend.core import dual_partition, normalize, sequence_index
from backend.errors import ParseError, SigmaError
from backend.models import (
    DefiningSequence,
    OrientationReport,
    PredicateResult,
    SolveOutcome,
    SolveStatus,
    SweepRecord,
    VertexOrdering,
)

M = TypeVar("M", bound=BaseModel)

CSV_COLUMNS = [
    "k", "n", "sequence", "standard", "blowup",
    "necessary_prefix", "necessary_jump", "size_filter", "status", "witness",
]

_CANONICAL = re.compile(r"^k(\d+)n(\d+):([0-9,]*)$")
_RECORDS = TypeAdapter(List[SweepRecord])


def _strip_timing(data: Any) -> Any:
    if isinstance(data, dict):
        return {
            key: ({k: v for k, v in value.items() if k != "seconds"} if key == "stats" else _strip_timing(value))
            for key, value in data.items()
        }
    if isinstance(data, list):
        return [_strip_timing(x) for x in data]
    return data


def to_data(obj: Any, timing: bool = False) -> Any:
    """Plain JSON-ready data for a model or a list of models."""
    if isinstance(obj, BaseModel):
        data = obj.model_dump(mode="json")
    elif isinstance(obj, (list, tuple)):
        data = [to_data(x, timing=True) for x in obj]
    else:
        data = obj
    return data if timing else _strip_timing(data)


def encode(obj: Any, timing: bool = False) -> str:
    """
    Deterministic JSON text. Wall-clock seconds in solver stats are dropped
    unless timing is requested, so identical inputs give identical bytes.
    """
    return json.dumps(to_data(obj, timing), indent=2)


def _location(location: Optional[str], err: ValidationError) -> str:
    first = err.errors()[0]
    path = ".".join(str(part) for part in first.get("loc", ()))
    return f"{location or '<input>'}:{path}" if path else (location or "<input>")


def _decode(model: Type[M], text: str, location: Optional[str]) -> M:
    try:
        return model.model_validate_json(text)
    except ValidationError as err:
        raise ParseError(err.errors()[0]["msg"], _location(location, err)) from err
    except SigmaError as err:
        raise ParseError(str(err), location or "<input>") from err


def decode_sequence(text: str, location: Optional[str] = None) -> DefiningSequence:
    return _decode(DefiningSequence, text, location)


def decode_ordering(text: str, location: Optional[str] = None) -> VertexOrdering:
    return _decode(VertexOrdering, text, location)


def decode_report(text: str, location: Optional[str] = None) -> OrientationReport:
    return _decode(OrientationReport, text, location)


def decode_outcome(text: str, location: Optional[str] = None) -> SolveOutcome:
    return _decode(SolveOutcome, text, location)


def decode_sweep(text: str, location: Optional[str] = None) -> List[SweepRecord]:
    try:
        return _RECORDS.validate_json(text)
    except ValidationError as err:
        raise ParseError(err.errors()[0]["msg"], _location(location, err)) from err
    except SigmaError as err:
        raise ParseError(str(err), location or "<input>") from err


# -- command-line arguments -----------------------------------------------------

def parse_canonical(text: str) -> DefiningSequence:
    """k3n12:000121, or k12n24:0,1,... when labels need more than one digit."""
    match = _CANONICAL.match(text.strip())
    if not match:
        raise ParseError(f"not a canonical sequence: {text!r}", "<argument>")
    k, n, body = int(match.group(1)), int(match.group(2)), match.group(3)
    labels = body.split(",") if "," in body else list(body)
    try:
        return DefiningSequence(k=k, n=n, a=tuple(int(x) for x in labels if x != ""))
    except SigmaError as err:
        raise ParseError(str(err), "<argument>") from err


def parse_sequence(arg: str) -> DefiningSequence:
    """A canonical string, or the path of a JSON file."""
    if _CANONICAL.match(arg.strip()):
        return parse_canonical(arg)
    path = Path(arg)
    if not path.is_file():
        raise ParseError(f"no such file and not a canonical sequence: {arg!r}", "<argument>")
    return decode_sequence(path.read_text(), str(path))


def parse_ordering(arg: str) -> VertexOrdering:
    """An inline list such as 0,6,1,7 or the path of a JSON file."""
    path = Path(arg)
    if path.is_file():
        return decode_ordering(path.read_text(), str(path))
    try:
        tau = tuple(int(x) for x in arg.split(","))
    except ValueError as err:
        raise ParseError(f"not an ordering: {arg!r}", "<argument>") from err
    try:
        return VertexOrdering(n=len(tau), tau=tau)
    except SigmaError as err:
        raise ParseError(str(err), "<argument>") from err


# -- CSV ------------------------------------------------------------------------

def _predicate(text: str) -> PredicateResult:
    if text == "pass":
        return PredicateResult(passed=True)
    if text == "fail":
        return PredicateResult(passed=False)
    if text.startswith("fail@"):
        return PredicateResult(passed=False, index=int(text[5:]))
    raise ValueError(f"bad predicate value {text!r}")


def records_to_csv(records: List[SweepRecord]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow([
            r.sequence.k,
            r.sequence.n,
            r.sequence.canonical(),
            int(r.standard),
            r.blowup,
            str(r.necessary_prefix),
            str(r.necessary_jump),
            str(r.size_filter),
            r.status.value,
            " ".join(str(v) for v in r.witness.tau) if r.witness else "",
        ])
    return out.getvalue()


def records_from_csv(text: str, location: Optional[str] = None) -> List[SweepRecord]:
    """Inverse of records_to_csv; blowup_solvable is not a CSV column and reads as False."""
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_COLUMNS:
        raise ParseError(f"expected columns {','.join(CSV_COLUMNS)}", location or "<csv>")
    records = []
    for line, row in enumerate(reader, start=2):
        where = f"{location or '<csv>'}:{line}"
        try:
            s = parse_canonical(row["sequence"])
            witness = None
            if row["witness"]:
                tau = tuple(int(v) for v in row["witness"].split())
                witness = VertexOrdering(n=len(tau), tau=tau)
            records.append(SweepRecord(
                index=sequence_index(normalize(s)),
                sequence=s,
                shift=s.a[0],
                standard=bool(int(row["standard"])),
                blowup=int(row["blowup"]),
                necessary_prefix=_predicate(row["necessary_prefix"]),
                necessary_jump=_predicate(row["necessary_jump"]),
                size_filter=_predicate(row["size_filter"]),
                status=SolveStatus(row["status"]),
                witness=witness,
                dual=dual_partition(s).canonical(),
            ))
        except (ValueError, SigmaError) as err:
            raise ParseError(str(err), where) from err
    return records
