"""Command-line interface: ``bubblepat <command> ...``.

Exit codes: 0 success, 2 bad input, 3 verification failure, 4 precondition
(a set containing a non-good pattern), 5 horizon over the cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from bubblepat import __version__, oracle, suites
from bubblepat.basis import inverse_basis, inverse_basis_set
from bubblepat.classification import classify
from bubblepat.errors import (
    ContainsBadPermutation,
    HorizonExceeded,
    ParseError,
)
from bubblepat.operators import OperatorChain, trace_chain
from bubblepat.perm import (
    format_perm,
    parse_permutation,
    parse_permutation_set,
    sort_perms,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VERIFY = 3
EXIT_PRECONDITION = 4
EXIT_HORIZON = 5


class CommandFailed(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _report(command: str, inputs: dict, result, started: float) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "result": result,
        "elapsed_ms": int((time.perf_counter() - started) * 1000),
        "version": __version__,
    }


def _emit(args, report: dict, text: str) -> None:
    if args.json:
        payload = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    else:
        payload = text if text.endswith("\n") else text + "\n"
    sys.stdout.write(payload)
    if getattr(args, "out", None):
        Path(args.out).write_text(payload)


# --- commands ------------------------------------------------------------------


def cmd_apply(args) -> int:
    started = time.perf_counter()
    perm = parse_permutation(args.perm)
    chain = OperatorChain.parse(args.chain)
    if args.k is not None:
        if args.k < 0:
            raise ParseError("-k must be non-negative")
        chain = chain ** args.k if args.k > 0 else None
    images = trace_chain(perm, chain) if chain is not None else [perm]
    result = {
        "image": format_perm(images[-1]),
        "trace": [format_perm(q) for q in images],
    }
    inputs = {"perm": format_perm(perm), "chain": args.chain, "k": args.k}
    lines = []
    if args.trace:
        steps = ["input"] + [op.value for op in chain.steps] if chain else ["input"]
        lines += [f"{tag:>5}: {format_perm(q)}" for tag, q in zip(steps, images)]
    lines.append(format_perm(images[-1]))
    _emit(args, _report("apply", inputs, result, started), "\n".join(lines))
    return EXIT_OK


def cmd_classify(args) -> int:
    started = time.perf_counter()
    perm = parse_permutation(args.perm)
    cl = classify(perm)
    verdict = "good" if cl.good else "not good"
    text = f"{format_perm(perm)}: case {cl.case.value}, {verdict}"
    if cl.reduced is not None:
        text += f", reduces to {format_perm(cl.reduced)}"
    _emit(args, _report("classify", {"perm": format_perm(perm)}, cl.to_json(), started), text)
    return EXIT_OK


def cmd_basis(args) -> int:
    started = time.perf_counter()
    perms = parse_permutation_set(args.perms)
    inputs = {
        "perms": [format_perm(p) for p in perms],
        "verify": args.verify,
        "horizon": args.horizon,
    }
    try:
        if len(perms) == 1:
            result = inverse_basis(
                perms[0], cross_check=True if args.verify else None, horizon=args.horizon, workers=args.workers
            )
        else:
            result = inverse_basis_set(
                perms, cross_check=args.verify, horizon=args.horizon, workers=args.workers
            )
    except ContainsBadPermutation as exc:
        raise CommandFailed(EXIT_PRECONDITION, f"ContainsBadPermutation({format_perm(exc.perm)}): {exc}")
    if result.is_class:
        text = "basis: " + ", ".join(format_perm(b, compact=True) for b in result.sorted_basis())
    else:
        w = result.witness
        text = (
            "not a class; witness theta1 = "
            f"{format_perm(w.theta1, compact=True)}, theta2 = {format_perm(w.theta2, compact=True)}"
        )
    text += f"\ncase: {result.case_used.case.value}"
    if args.verify:
        text += f"\ncross_checked: {str(result.cross_checked).lower()}"
    _emit(args, _report("basis", inputs, result.to_json(), started), text)
    if args.verify and not result.cross_checked:
        sys.stderr.write("cross-check against the brute-force oracle failed\n")
        return EXIT_VERIFY
    return EXIT_OK


def cmd_enumerate(args) -> int:
    started = time.perf_counter()
    basis = sort_perms(parse_permutation_set(args.basis))
    spec = oracle.ClassSpec(basis)
    cache = args.cache or os.environ.get("BUBBLEPAT_CACHE")
    cs = oracle.count_av(spec, args.horizon, workers=args.workers, cache_dir=cache)
    g = oracle.growth_estimate(cs)
    inputs = {"basis": [format_perm(b) for b in spec.ordered()], "horizon": args.horizon}
    result = {
        "counts": {str(n): c for n, c in cs.counts.items()},
        "growth_points": [round(r, 6) for r in cs.growth_points],
        "growth_estimate": {"value": round(g, 6), "n": max(cs.counts), "kind": "finite-horizon root"},
    }
    text = cs.to_csv() + f"# finite-horizon estimate a_{max(cs.counts)}^(1/{max(cs.counts)}) = {g:.6f}\n"
    _emit(args, _report("enumerate", inputs, result, started), text)
    return EXIT_OK


def cmd_verify(args) -> int:
    started = time.perf_counter()
    horizon = args.horizon
    checks = suites.run_suite(args.suite, horizon, workers=args.workers)
    ok = all(c.ok for c in checks)
    inputs = {"suite": args.suite, "horizon": horizon}
    result = {"passed": ok, "checks": [c.to_json() for c in checks]}
    lines = [c.line() for c in checks]
    lines.append(f"{args.suite}: {'all checks passed' if ok else 'FAILED'} "
                 f"({sum(c.ok for c in checks)}/{len(checks)})")
    _emit(args, _report("verify", inputs, result, started), "\n".join(lines))
    return EXIT_OK if ok else EXIT_VERIFY


def render_diagram(perm, highlight=()) -> str:
    """ASCII plot of the points (i, perm[i]); value n is the top row."""
    n = len(perm)
    marks = set(highlight)
    rows = []
    for value in range(n, 0, -1):
        cells = []
        for i, v in enumerate(perm, start=1):
            if v == value:
                cells.append("○" if i in marks else "●")
            else:
                cells.append("·")
        rows.append(" ".join(cells))
    return "\n".join(rows)


def cmd_diagram(args) -> int:
    started = time.perf_counter()
    perm = parse_permutation(args.perm)
    highlight: list[int] = []
    if args.highlight:
        for pos, token in enumerate(args.highlight.replace(" ", "").split(","), start=1):
            if not token.isdigit() or not 1 <= int(token) <= len(perm):
                raise ParseError(f"highlight position {token!r} out of range 1..{len(perm)}", pos)
            highlight.append(int(token))
    grid = render_diagram(perm, highlight)
    points = [[i, v] for i, v in enumerate(perm, start=1)]
    result = {"grid": grid.split("\n"), "points": points, "highlight": highlight}
    inputs = {"perm": format_perm(perm), "highlight": highlight}
    _emit(args, _report("diagram", inputs, result, started), grid)
    return EXIT_OK


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON command report")
    common.add_argument("--out", metavar="PATH", help="also write the output to PATH")
    common.add_argument("--workers", type=int, default=1, metavar="INT", help="worker processes")
    common.add_argument("--cache", metavar="DIR", help="count-table cache (or BUBBLEPAT_CACHE)")

    parser = argparse.ArgumentParser(
        prog="bubblepat",
        description="One-pass bubble sort and preimages of permutation classes.",
    )
    parser.add_argument("--version", action="version", version=f"bubblepat {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("apply", parents=[common], help="apply an operator chain")
    p.add_argument("perm")
    p.add_argument("--chain", default="B", help='operators, rightmost first: "B", "SB", "B^3"')
    p.add_argument("-k", type=int, default=None, help="repeat the whole chain k times")
    p.add_argument("--trace", action="store_true", help="print every intermediate pass")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("classify", parents=[common], help="case analysis of a pattern")
    p.add_argument("perm")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("basis", parents=[common], help="basis of {s : B(s) avoids the patterns}")
    p.add_argument("perms", help="one permutation, or a comma-separated set")
    p.add_argument("--verify", action="store_true", help="cross-check with the brute-force oracle")
    p.add_argument("-n", "--horizon", type=int, default=None, help="oracle horizon (default |pi|+3)")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("enumerate", parents=[common], help="count Av(basis) by length")
    p.add_argument("basis", help="comma-separated basis")
    p.add_argument("-n", "--horizon", type=int, default=8)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="run an exhaustive verification suite")
    p.add_argument("suite", choices=sorted(suites.SUITES))
    p.add_argument("-n", "--horizon", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("diagram", parents=[common], help="ASCII plot of a permutation")
    p.add_argument("perm")
    p.add_argument("--highlight", default="", help="1-based positions drawn as white dots")
    p.set_defaults(func=cmd_diagram)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except CommandFailed as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except HorizonExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_HORIZON


if __name__ == "__main__":
    sys.exit(main())
