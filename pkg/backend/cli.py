"""
Command-line interface.

    python -m backend.cli solve k3n12:000121
    python -m backend.cli sweep --k 3 --n 12 --format csv --out k3n12.csv

Data goes to stdout (or --out); diagnostics go to stderr. Exit codes:
0 success or sat, 1 negative result, 2 budget or resource limit,
64 usage or input error, 70 internal contradiction.
"""
import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from backend import analysis, blowup, codec, constructions, core, formatter, orient, solver
from backend.config import OutputFormat, ToolConfig, configure_logging, load_config
from backend.errors import SigmaError, UsageError
from backend.models import SolveStatus, SweepOptions
from backend.store import initialize_store, save_records

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_NEGATIVE, EXIT_RESOURCE, EXIT_USAGE = 0, 1, 2, 64

STATUS_EXIT = {
    SolveStatus.SAT: EXIT_OK,
    SolveStatus.UNSAT: EXIT_NEGATIVE,
    SolveStatus.BUDGET_EXCEEDED: EXIT_RESOURCE,
}


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so usage errors map to exit code 64."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class Session:
    """One CLI invocation: the effective config and the output sink."""

    def __init__(self, config: ToolConfig, out: Optional[str] = None):
        self.config = config
        self.out = out

    def emit(self, text: str) -> None:
        if not text.endswith("\n"):
            text += "\n"
        if self.out is None or self.out == "-":
            sys.stdout.write(text)
            return
        path = Path(self.out)
        if not path.is_absolute():
            path = Path(self.config.output_dir) / path
        path.write_text(text)
        logger.info("wrote %s", path)


def _free_values(text: str) -> dict:
    free = {}
    for item in filter(None, text.split(",")):
        index, sep, label = item.partition("=")
        if not sep:
            raise UsageError(f"free values look like 6=1,12=0; got {item!r}")
        try:
            free[int(index)] = int(label)
        except ValueError as err:
            raise UsageError(f"free values must be integers: {item!r}") from err
    return free


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError as err:
        raise UsageError(f"expected a comma separated list of integers, got {text!r}") from err


def _shard(text: str):
    start, sep, stop = text.partition(":")
    if not sep:
        raise UsageError(f"shards look like START:STOP, got {text!r}")
    try:
        return int(start or 0), (int(stop) if stop else None)
    except ValueError as err:
        raise UsageError(f"bad shard {text!r}") from err


# -- commands -----------------------------------------------------------------

def cmd_gen(args, session: Session) -> int:
    seqs = list(core.normalized_sequences(args.k, args.n))
    if args.canonical:
        session.emit("\n".join(s.canonical() for s in seqs))
    else:
        session.emit(codec.encode(seqs))
    return EXIT_OK


def cmd_label(args, session: Session) -> int:
    p = core.labeling(codec.parse_sequence(args.sequence))
    if args.edge:
        ends = _int_list(args.edge)
        if len(ends) != 2:
            raise UsageError(f"--edge takes u,v; got {args.edge!r}")
        u, v = ends
        session.emit(str(core.edge_label(p, u, v)))
    elif args.part is not None:
        session.emit(codec.encode([list(e) for e in core.part_edges(p, args.part)]))
    else:
        session.emit(codec.encode(p))
    return EXIT_OK


def cmd_check(args, session: Session) -> int:
    p = core.labeling(codec.parse_sequence(args.sequence))
    report = orient.reversal_report(p, codec.parse_ordering(args.ordering))
    session.emit(codec.encode(report))
    return EXIT_OK if report.accepted else EXIT_NEGATIVE


def cmd_standard(args, session: Session) -> int:
    s = codec.parse_sequence(args.sequence)
    if args.all:
        orders = orient.standard_orientations(s)
        session.emit(codec.encode(orders))
        return EXIT_OK if orders else EXIT_NEGATIVE
    order = orient.standard_orientation(s)
    if session.config.format == OutputFormat.DOT:
        session.emit(formatter.export_dot(core.labeling(s), order))
    else:
        session.emit(codec.encode(order) if order else "null")
    return EXIT_OK if order else EXIT_NEGATIVE


def _enumerate(s, cap, oracle: bool, session: Session) -> int:
    orders = solver.oracle_enumerate(s) if oracle else solver.enumerate(s, cap)
    if oracle and cap is not None:
        orders = orders[:cap]
    session.emit(codec.encode(orders))
    return EXIT_OK if orders else EXIT_NEGATIVE


def cmd_solve(args, session: Session) -> int:
    s = codec.parse_sequence(args.sequence)
    if args.all:
        return _enumerate(s, args.cap, args.oracle, session)
    outcome = solver.oracle_solve(s) if args.oracle else solver.solve(s, session.config.budget)
    if session.config.format == OutputFormat.DOT:
        # unsat and open outcomes render the unoriented partition
        session.emit(formatter.export_dot(core.labeling(s), outcome.witness))
    else:
        session.emit(codec.encode(outcome, timing=args.timing))
    return STATUS_EXIT[outcome.status]


def cmd_enumerate(args, session: Session) -> int:
    return _enumerate(codec.parse_sequence(args.sequence), args.cap, args.oracle, session)


def cmd_blowup(args, session: Session) -> int:
    if args.action == "make":
        s = blowup.blow_up_sequence(codec.parse_sequence(args.base), args.n, _free_values(args.free))
        session.emit(codec.encode(s))
        return EXIT_OK
    if args.action == "lift":
        order = blowup.lift_orientation(
            codec.parse_sequence(args.base), codec.parse_ordering(args.order), codec.parse_sequence(args.target)
        )
        session.emit(codec.encode(order))
        return EXIT_OK
    witnesses = blowup.detect_blow_up(codec.parse_sequence(args.sequence), session.config.budget)
    session.emit(codec.encode(witnesses))
    return EXIT_OK if witnesses else EXIT_NEGATIVE


def cmd_dual(args, session: Session) -> int:
    s = codec.parse_sequence(args.sequence)
    if args.order:
        session.emit(codec.encode(orient.dual_ordering(codec.parse_ordering(args.order))))
    else:
        session.emit(codec.encode(core.dual_partition(s)))
    return EXIT_OK


def cmd_classify(args, session: Session) -> int:
    session.emit(codec.encode(core.classify_steps(codec.parse_sequence(args.sequence))))
    return EXIT_OK


def cmd_necessary(args, session: Session) -> int:
    s = codec.parse_sequence(args.sequence)
    results = {
        "necessary_prefix": analysis.necessary_prefix(s),
        "necessary_jump": analysis.necessary_jump(s),
        "size_filter": analysis.size_filter(s),
    }
    session.emit(codec.encode({name: str(r) for name, r in results.items()}))
    return EXIT_OK if all(r.passed for r in results.values()) else EXIT_NEGATIVE


def cmd_hamiltonian(args, session: Session) -> int:
    if args.kind == "paths":
        _, dec = constructions.walecki_paths(args.n)
    else:
        dec = constructions.hamiltonian_cycles(args.n)
    if args.dot:
        Session(session.config, args.dot).emit(
            formatter.export_decomposition_dot(dec, name=f"hamiltonian {args.kind} n={args.n}")
        )
    session.emit(codec.encode(dec))
    return EXIT_OK


def cmd_sweep(args, session: Session) -> int:
    config = session.config
    start, stop = _shard(args.shard) if args.shard else (0, None)
    options = SweepOptions(
        budget=config.budget,
        workers=config.workers,
        start=start,
        stop=stop,
        check_duals=not args.no_dual_check,
        space_limit=config.space_limit,
    )
    records = analysis.sweep(args.k, args.n, options)
    if args.db:
        async def persist():
            await initialize_store(args.db)
            await save_records(records, args.db)
        asyncio.run(persist())
    if config.format == OutputFormat.CSV:
        session.emit(codec.records_to_csv(records))
    else:
        session.emit(codec.encode(records))
    if any(r.status == SolveStatus.BUDGET_EXCEEDED for r in records):
        return EXIT_RESOURCE
    return EXIT_OK


def cmd_conjecture(args, session: Session) -> int:
    config = session.config
    report = analysis.conjecture_scan(
        args.k, _int_list(args.odd_n), config.budget, config.workers, config.space_limit
    )
    session.emit(codec.encode(report, timing=args.timing))
    if report.sat_total:
        return EXIT_NEGATIVE
    if any(c.budget_exceeded for c in report.counts):
        return EXIT_RESOURCE
    return EXIT_OK


def cmd_export_dot(args, session: Session) -> int:
    p = core.labeling(codec.parse_sequence(args.sequence))
    order = codec.parse_ordering(args.order) if args.order else None
    session.emit(formatter.export_dot(p, order))
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="sigma-orient", description="Transitive sigma_n-orientations of cyclic edge partitions")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--out", help="Write data here instead of stdout")
    parser.add_argument("--nodes", type=int, help="Solver conflict budget per instance")
    parser.add_argument("--seconds", type=float, help="Solver time budget per instance")
    parser.add_argument("--workers", type=int, help="Worker processes for sweep and conjecture")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], help="Output format")
    sub = parser.add_subparsers(dest="command", required=True)

    def seq_command(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("sequence", help="Canonical string such as k3n12:000121, or a JSON file")
        p.set_defaults(handler=handler)
        return p

    p = sub.add_parser("gen", help="List all normalized sequences for k and n")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--canonical", action="store_true", help="One canonical string per line")
    p.set_defaults(handler=cmd_gen)

    p = seq_command("label", cmd_label, "Edge labels of a partition")
    p.add_argument("--edge", help="u,v: print the label of one edge")
    p.add_argument("--part", type=int, help="List the edges with this label")

    p = seq_command("check", cmd_check, "Reversal report of an ordering")
    p.add_argument("ordering", help="Inline list such as 0,6,1,7 or a JSON file")

    p = seq_command("standard", cmd_standard, "Standard (bitonic) orientation")
    p.add_argument("--all", action="store_true", help="Every standard ordering")

    for name, handler in (("solve", cmd_solve), ("enumerate", cmd_enumerate)):
        p = seq_command(name, handler, "Decide or list transitive orientations")
        p.add_argument("--cap", type=int, help="Stop after this many orderings")
        p.add_argument("--oracle", action="store_true", help="Use the brute-force search (n <= 9)")
        if name == "solve":
            p.add_argument("--all", action="store_true", help="List orderings instead of deciding")
            p.add_argument("--timing", action="store_true", help="Include wall-clock seconds in the output")

    p = sub.add_parser("blowup", help="Blow-up sequences and orientation lifting")
    p.set_defaults(handler=cmd_blowup)
    actions = p.add_subparsers(dest="action", required=True)
    make = actions.add_parser("make")
    make.add_argument("--base", required=True)
    make.add_argument("--n", type=int, required=True)
    make.add_argument("--free", default="", help="Labels at multiples of the base size, e.g. 6=1")
    lift = actions.add_parser("lift")
    lift.add_argument("--base", required=True)
    lift.add_argument("--order", required=True, help="Accepted ordering of the base")
    lift.add_argument("--target", required=True)
    detect = actions.add_parser("detect")
    detect.add_argument("sequence")

    p = seq_command("dual", cmd_dual, "Dual partition, or the dual of an ordering")
    p.add_argument("--order", help="Map this ordering to the dual partition")

    seq_command("classify", cmd_classify, "Halt/step/jump pattern")
    seq_command("necessary", cmd_necessary, "Necessary-condition predicates")

    p = sub.add_parser("hamiltonian", help="Hamiltonian path and cycle decompositions")
    p.add_argument("kind", choices=["paths", "cycles"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dot", help="Also write the decomposition as DOT")
    p.set_defaults(handler=cmd_hamiltonian)

    p = sub.add_parser("sweep", help="Classify every normalized sequence")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--shard", help="START:STOP range of sequence indices")
    p.add_argument("--db", help="Also store the records in this SQLite file")
    p.add_argument("--no-dual-check", action="store_true")
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("conjecture", help="Solve every sequence for odd n")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--odd-n", required=True, help="Comma separated odd multiples of k")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(handler=cmd_conjecture)

    p = seq_command("export-dot", cmd_export_dot, "DOT rendering of a partition")
    p.add_argument("--order", help="Orient edges by this ordering")
    return parser


def _format_from_suffix(out: Optional[str]) -> Optional[str]:
    """results.csv -> "csv"; None when the suffix names no output format."""
    if not out:
        return None
    suffix = Path(out).suffix.lstrip(".").lower()
    return suffix if suffix in {f.value for f in OutputFormat} else None


def _effective_config(args) -> ToolConfig:
    config = load_config()
    overrides = {
        "node_budget": args.nodes,
        "time_budget": args.seconds,
        "workers": args.workers,
        "format": args.format or _format_from_suffix(args.out),
    }
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if args.verbose:
        overrides["log_level"] = "DEBUG" if args.verbose > 1 else "INFO"
    # model_validate so overrides are checked like environment values
    return ToolConfig.model_validate({**config.model_dump(), **overrides})


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = _effective_config(args)
        configure_logging(config.log_level)
        return args.handler(args, Session(config, args.out))
    except SigmaError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.exit_code
    except ValidationError as err:
        print(f"error: invalid configuration: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
