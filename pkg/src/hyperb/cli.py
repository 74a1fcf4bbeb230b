"""Command-line front end: bound tables, verification sweeps, coloring
construction, exact solving, and rank/unrank debugging.

Exit codes: 0 success, 2 I/O or usage failure, 3 infeasible request, 4 solver budget
exhausted.  Identical invocations (including seeds) produce byte-identical
output files; wall-clock timings go to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import bcoloring, bounds, compression, neighborhoods
from .errors import InfeasibleError, IntegrityError
from .subsets import GroundSet, format_subset, parse_subset, rank, unrank

EXIT_OK = 0
EXIT_IO = 2
EXIT_USAGE = 2  # argparse convention; shares the code with I/O failures
EXIT_INFEASIBLE = 3
EXIT_BUDGET = 4

DEFAULT_SAMPLES = 100_000


def _parse_range(text: str) -> list[int]:
    """Parse '7' or '5..12' into a list of integers."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        start, stop = int(lo), int(hi)
        if stop < start:
            return []
        return list(range(start, stop + 1))
    return [int(text)]


def _emit(payload: dict, output: str | None) -> int:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    return _write_text(text, output)


def _write_text(text: str, output: str | None) -> int:
    if output is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(output, "w") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {output}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_table(args) -> int:
    n_values = _parse_range(args.n)
    p_values = _parse_range(args.p) if args.p else None
    rows = bounds.bound_table(n_values, p_values)
    if args.format == "csv":
        return _write_text(bounds.table_to_csv(rows), args.output)
    return _emit(bounds.table_to_json_dict(rows), args.output)


def _verify_reports(args) -> list[neighborhoods.VerifyReport]:
    theorem = args.theorem
    reports = []
    if theorem in ("close", "open"):
        runner = (
            neighborhoods.verify_close_inequality
            if theorem == "close"
            else neighborhoods.verify_open_inequality
        )
        n_values = _parse_range(args.n)
        for n in n_values:
            p_values = _parse_range(args.p) if args.p else list(range(1, n))
            for p in p_values:
                if args.exhaustive:
                    reports.append(runner(n, p, "exhaustive"))
                else:
                    reports.append(
                        runner(n, p, "sample", samples=args.samples, seed=args.seed)
                    )
    elif theorem == "simplicial":
        for n in _parse_range(args.n):
            reports.append(neighborhoods.verify_initial_segment_closure(n))
    elif theorem == "fixpoint":
        for n in _parse_range(args.n):
            reports.append(compression.verify_fixpoint_classification(n))
    elif theorem == "closedform":
        for n in _parse_range(args.n):
            if args.p:
                p_values = _parse_range(args.p)
            else:
                p_values = [
                    p
                    for p in range(1, n)
                    if neighborhoods.ClosedFormParams.in_range(n, p)
                ]
            for p in p_values:
                reports.append(neighborhoods.verify_closed_form(n, p))
    elif theorem == "section":
        for n in _parse_range(args.n):
            if args.exhaustive:
                reports.append(neighborhoods.verify_section_identity(n, "exhaustive"))
            else:
                reports.append(
                    neighborhoods.verify_section_identity(
                        n, "sample", samples=args.samples, seed=args.seed
                    )
                )
    elif theorem == "compression":
        for n in _parse_range(args.n):
            if args.exhaustive:
                reports.append(compression.verify_compression_inequality(n, "exhaustive"))
            else:
                reports.append(
                    compression.verify_compression_inequality(
                        n, "sample", samples=args.samples, seed=args.seed
                    )
                )
    elif theorem == "r3s":
        reports.append(bounds.verify_r_ge_3s(args.n_max))
    else:
        raise ValueError(f"unknown theorem {theorem!r}")
    return reports


def cmd_verify(args) -> int:
    if args.theorem != "r3s" and not args.n:
        print(f"error: --theorem {args.theorem} requires --n", file=sys.stderr)
        return EXIT_USAGE
    if args.theorem == "coset":
        n_values = _parse_range(args.n)
        q_values = _parse_range(args.q) if args.q else [2]
        results = []
        ok = True
        for n in sorted(n_values):
            for q in sorted(q_values):
                p_values = _parse_range(args.p) if args.p else [n - 1]
                for p in sorted(p_values):
                    try:
                        cert = bcoloring.verify_coset_bcoloring(n, q, p)
                    except IntegrityError as exc:
                        ok = False
                        results.append({"n": n, "q": q, "p": p, "error": str(exc)})
                        continue
                    gated = bounds.hamming_gate(n, q, p)
                    results.append(
                        {
                            "n": n,
                            "q": q,
                            "p": p,
                            "gated": gated,
                            "certificate": cert.as_json_dict(),
                        }
                    )
                    if gated and not cert.valid_b:
                        ok = False
        payload = {"schema": 1, "command": "verify", "theorem": "coset", "results": results}
        code = _emit(payload, args.output)
        if code != EXIT_OK:
            return code
        return EXIT_OK if ok else 1
    try:
        if args.theorem in ("close", "open", "section", "compression") and not args.exhaustive:
            if args.seed is None:
                print("error: sample mode requires --seed", file=sys.stderr)
                return EXIT_USAGE
        started = time.monotonic()
        reports = _verify_reports(args)
        elapsed = time.monotonic() - started
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    payload = {
        "schema": 1,
        "command": "verify",
        "theorem": args.theorem,
        "reports": [r.as_json_dict() for r in reports],
    }
    code = _emit(payload, args.output)
    if code != EXIT_OK:
        return code
    violations = sum(len(r.violations) for r in reports)
    print(
        f"verify {args.theorem}: {len(reports)} report(s), "
        f"{violations} violation(s), {elapsed:.1f}s",
        file=sys.stderr,
    )
    return EXIT_OK if violations == 0 else 1


def cmd_solve(args) -> int:
    if (args.hypercube is None) == (args.hamming is None):
        print("error: pass exactly one of --hypercube N or --hamming N,Q", file=sys.stderr)
        return EXIT_USAGE
    if args.hypercube is not None:
        g = bcoloring.hypercube_power(int(args.hypercube), args.p)
    else:
        n_text, q_text = args.hamming.split(",", 1)
        g = bcoloring.hamming_power(int(n_text), int(q_text), args.p)
    budget = bcoloring.SolveBudget(max_nodes=args.max_nodes, max_seconds=args.max_seconds)
    started = time.monotonic()
    result = bcoloring.exact_b_chromatic(g, budget)
    elapsed = time.monotonic() - started
    cert = bcoloring.validate_coloring(g, result.coloring)
    payload = {
        "schema": 1,
        "command": "solve",
        "graph": {"kind": g.kind, "n": g.n, "q": g.q, "p": g.p},
        "value": result.value,
        "exact": result.exact,
        "nodes": result.nodes,
        "note": result.note,
        "witness": bcoloring.coloring_to_json(g, result.coloring),
        "certificate": cert.as_json_dict(),
    }
    code = _emit(payload, args.output)
    if code != EXIT_OK:
        return code
    status = f"b = {result.value}" if result.exact else f"b >= {result.value} (budget)"
    print(f"solve: {status}, {result.nodes} nodes, {elapsed:.1f}s", file=sys.stderr)
    return EXIT_OK if result.exact else EXIT_BUDGET


def cmd_color(args) -> int:
    coloring = bcoloring.coset_coloring(args.n, args.q)
    payload = {
        "schema": 1,
        "command": "color",
        "coloring": {
            "kind": "hamming",
            "n": args.n,
            "q": args.q,
            "k": coloring.k,
            "assignment": list(coloring.assignment),
        },
    }
    if args.p is not None:
        g = bcoloring.hamming_power(args.n, args.q, args.p)
        cert = bcoloring.validate_coloring(g, coloring)
        payload["coloring"]["p"] = args.p
        payload["certificate"] = cert.as_json_dict()
    return _emit(payload, args.output)


def cmd_rank(args) -> int:
    g = GroundSet.range(args.n)
    if (args.subset is None) == (args.rank is None):
        print("error: pass exactly one of --subset or --rank", file=sys.stderr)
        return EXIT_USAGE
    if args.subset is not None:
        x = parse_subset(args.subset, g)
        payload = {
            "schema": 1,
            "command": "rank",
            "n": args.n,
            "subset": format_subset(x),
            "rank": rank(x).value,
        }
    else:
        x = unrank(args.rank, g)
        payload = {
            "schema": 1,
            "command": "rank",
            "n": args.n,
            "subset": format_subset(x),
            "rank": args.rank,
        }
    return _emit(payload, args.output)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperb",
        description=(
            "Exact bounds, verification sweeps, and b-colorings for powers of "
            "hypercubes and Hamming graphs."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="emit a bound table over an (n, p) grid")
    p_table.add_argument("--n", required=True, help="dimension or range, e.g. 5..12")
    p_table.add_argument("--p", help="power or range; default 1..n per n")
    p_table.add_argument("--format", choices=("csv", "json"), default="csv")
    p_table.add_argument("--output")
    p_table.set_defaults(func=cmd_table)

    p_verify = sub.add_parser("verify", help="run a verification sweep")
    p_verify.add_argument(
        "--theorem",
        required=True,
        choices=(
            "close",
            "open",
            "simplicial",
            "fixpoint",
            "closedform",
            "section",
            "compression",
            "r3s",
            "coset",
        ),
    )
    p_verify.add_argument("--n", help="dimension or range")
    p_verify.add_argument("--p", help="power or range")
    p_verify.add_argument("--q", help="alphabet size or range (coset)")
    p_verify.add_argument("--n-max", type=int, default=64, help="sweep limit (r3s)")
    p_verify.add_argument("--exhaustive", action="store_true")
    p_verify.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p_verify.add_argument("--seed", type=int)
    p_verify.add_argument("--output")
    p_verify.set_defaults(func=cmd_verify)

    p_solve = sub.add_parser("solve", help="exact b-chromatic number of one instance")
    p_solve.add_argument("--hypercube", help="dimension n")
    p_solve.add_argument("--hamming", help="dimension and alphabet as N,Q")
    p_solve.add_argument("--p", type=int, required=True)
    p_solve.add_argument("--max-nodes", type=int, default=5_000_000)
    p_solve.add_argument("--max-seconds", type=float, default=45.0)
    p_solve.add_argument("--output")
    p_solve.set_defaults(func=cmd_solve)

    p_color = sub.add_parser("color", help="emit the coset coloring of Z_q^n")
    p_color.add_argument("--n", type=int, required=True)
    p_color.add_argument("--q", type=int, required=True)
    p_color.add_argument("--p", type=int, help="also validate on the p-th power")
    p_color.add_argument("--output")
    p_color.set_defaults(func=cmd_color)

    p_rank = sub.add_parser("rank", help="rank/unrank a subset in the subset order")
    p_rank.add_argument("--n", type=int, required=True)
    p_rank.add_argument("--subset", help='subset notation, e.g. "{1,3}"')
    p_rank.add_argument("--rank", type=int)
    p_rank.add_argument("--output")
    p_rank.set_defaults(func=cmd_rank)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, IntegrityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
