"""Command-line entry point: ``conormal-lab run <session>``."""

from __future__ import annotations

import argparse
import sys
import time

from ..errors import ComputationLimitError, ConormalLabError
from ..groebner.engine import step_limit
from .commands import CommandError, Context, run_command
from .report import emit_report, make_document
from .session import parse_session

EXIT_OK, EXIT_CRITERION_FAILS, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3
FAILING_VERDICTS = {"fails", "contradiction"}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="conormal-lab", description="Run a conormal-lab session file.")
    sub = ap.add_subparsers(dest="action", required=True)
    run = sub.add_parser("run", help="run every command of a session file")
    run.add_argument("session", help="path to the session file")
    run.add_argument("--format", choices=("json", "text"), default="json")
    run.add_argument("--max-degree", type=int, default=4, help="largest graded component to materialize")
    run.add_argument("--seed", type=int, default=0, help="seed for random linear forms")
    run.add_argument("--step-limit", type=int, default=None, help="bound on Groebner reduction steps")
    run.add_argument("--timing", action="store_true", help="record elapsed time per command (breaks byte-identity)")
    run.add_argument("-o", "--output", help="write the report here instead of stdout")
    return ap


def _limit_error(exc: BaseException) -> bool:
    cause = exc.cause if isinstance(exc, CommandError) else exc
    return isinstance(cause, ComputationLimitError)


def run(args) -> int:
    try:
        session = parse_session(args.session)
    except (OSError, ConormalLabError) as exc:
        print(f"conormal-lab: {exc}", file=sys.stderr)
        return EXIT_INPUT
    settings = {"max_degree": args.max_degree, "seed": args.seed}
    if args.step_limit is not None:
        settings["step_limit"] = args.step_limit
    ctx = Context(session, args.max_degree, args.seed)
    results = []
    code = EXIT_OK
    with step_limit(args.step_limit):
        for cmd in session.commands:
            t0 = time.perf_counter()
            try:
                frag = run_command(ctx, cmd)
            except ConormalLabError as exc:
                print(f"conormal-lab: {exc}", file=sys.stderr)
                code = EXIT_LIMIT if _limit_error(exc) else EXIT_INPUT
                break
            if args.timing:
                frag["elapsed_seconds"] = round(time.perf_counter() - t0, 3)
            if frag.get("verdict") in FAILING_VERDICTS:
                code = EXIT_CRITERION_FAILS
            results.append(frag)
    doc = make_document(results, session.fingerprint, settings)
    data = emit_report(doc, args.format)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
