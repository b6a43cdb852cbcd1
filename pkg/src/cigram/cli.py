"""Command-line front end.

Exit codes: 0 every verdict passed, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import report
from .hypergroup import ConsistencyError, InvalidDataError
from .pipeline import CaseSpec, analyze_data

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

# subcommand -> (pipeline options, report builder)
COMMANDS = {
    "analyze": (dict(ode=True, invariants=True), report.full_report),
    "stokes": (dict(ode=False, invariants=False), report.stokes_report),
    "invariants": (dict(ode=False, invariants=True), report.invariants_report),
    "gram": (dict(ode=False, invariants=False), report.gram_report),
    "verify-ode": (dict(ode=True, invariants=False), report.ode_report),
}


def _passed(command: str, analysis) -> bool:
    if command == "analyze":
        return analysis.passed
    if command == "invariants":
        return analysis.verdicts.get("invariant_spanned_by_gram", False)
    if command == "verify-ode":
        return all(r.passed for r in analysis.ode)
    return True


def run_case(command: str, spec: CaseSpec, figures: str | None = None) -> tuple[dict, bool]:
    options, build = COMMANDS[command]
    analysis = analyze_data(spec, **options)
    if figures:
        from .figures import write_figures

        write_figures(analysis, figures)
    return build(analysis), _passed(command, analysis)


def parse_int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty integer list")
    return values


def load_case_file(path: str | Path, truncation: int | None = None) -> list[CaseSpec]:
    """Read ``[[case]]`` tables (name, q, d, optional truncation) from TOML."""
    with open(path, "rb") as fh:
        doc = tomllib.load(fh)
    cases = doc.get("case")
    if not isinstance(cases, list) or not cases:
        raise InvalidDataError(f"{path}: no [[case]] entries")
    specs = []
    for k, entry in enumerate(cases):
        if "q" not in entry or "d" not in entry:
            raise InvalidDataError(f"{path}: case {k + 1} needs both q and d")
        specs.append(CaseSpec.make(
            entry["q"], entry["d"],
            name=entry.get("name"),
            truncation=entry.get("truncation", truncation),
        ))
    return specs


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cigram",
        description="Hypergeometric groups of Calabi-Yau complete intersections: exact invariants, "
                    "Euler-form Gram matrices and Stokes matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--q", type=parse_int_list, help="weights q_0,...,q_N")
        src.add_argument("--case-file", help="TOML file with [[case]] tables")
        p.add_argument("--d", type=parse_int_list, help="degrees d_1,...,d_r")
        p.add_argument("--name", help="case name (single-case mode)")
        p.add_argument("--truncation", type=int, default=None, help="Frobenius truncation M (default 12)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--figures", metavar="DIR", help="also render PNG figures into DIR")
        p.add_argument("--jobs", type=int, default=1, help="cases processed in parallel")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.truncation is not None and args.truncation < 1:
        parser.error("--truncation must be at least 1")
    try:
        if args.case_file:
            specs = load_case_file(args.case_file, args.truncation)
        else:
            if args.d is None:
                parser.error("--d is required with --q")
            specs = [CaseSpec.make(args.q, args.d, name=args.name, truncation=args.truncation)]
    except (InvalidDataError, OSError, tomllib.TOMLDecodeError) as exc:
        print(f"cigram: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    try:
        if args.jobs > 1 and len(specs) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                futures = [pool.submit(run_case, args.command, s, args.figures) for s in specs]
                results = [f.result() for f in futures]  # input order, not completion order
        else:
            results = [run_case(args.command, s, args.figures) for s in specs]
    except ConsistencyError as exc:
        print(f"cigram: internal consistency check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL

    objs = [obj for obj, _ in results]
    if args.format == "json":
        text = report.dumps(objs if args.case_file else objs[0])
    else:
        text = "\n".join(report.render_text(args.command, obj) for obj in objs)

    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK if all(ok for _, ok in results) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
