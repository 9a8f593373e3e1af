"""Command-line front end.

Exit codes: 0 success, 1 a verification failure or broken identity,
2 a usage, parse or domain error.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from typing import Sequence

from .cotransition import cotransition_grothendieck, cotransition_schubert, minimal_pivot, valid_pivots
from .errors import (
    CapacityError, ConsistencyError, DomainError, ExpansionError, FormatError, LubViolation,
    NotDivisibleError,
)
from .perm import (
    Permutation, covers_above, dominant_part, essential_set, format_one_line, length,
    parse_permutation, rothe_diagram,
)
from .pipedream import (
    enumerate_nonreduced, enumerate_reduced, format_pipe_dream, grothendieck_pipe_polynomial,
    pipe_polynomial, render_pipe_dream,
)
from .poly import COHOMOLOGICAL, K, parse_poly, render
from .schubert import expand, grothendieck_demazure, schubert_dd
from .verify import DEFAULT_SEED, SUITES, run_suite

SCHUBERT_ROUTES = {"dd": schubert_dd, "pipedream": pipe_polynomial, "cotransition": cotransition_schubert}
GROTHENDIECK_ROUTES = {
    "demazure": grothendieck_demazure,
    "pipedream": grothendieck_pipe_polynomial,
    "cotransition": cotransition_grothendieck,
}
FAMILIES = {"cohomology": COHOMOLOGICAL, "ktheory": K}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _perm_arg(text: str) -> Permutation:
    try:
        return parse_permutation(text)
    except FormatError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="schubcalc", description="Double Schubert and Grothendieck polynomials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("schubert", help="double Schubert polynomial A_π")
    p.add_argument("perm", type=_perm_arg)
    p.add_argument("--route", choices=sorted(SCHUBERT_ROUTES), default="pipedream")
    p.add_argument("--n", type=_positive)
    p.add_argument("--format", choices=["text", "latex", "json"], default="text")

    p = sub.add_parser("grothendieck", help="double Grothendieck polynomial A'_π")
    p.add_argument("perm", type=_perm_arg)
    p.add_argument("--route", choices=sorted(GROTHENDIECK_ROUTES), default="pipedream")
    p.add_argument("--n", type=_positive)
    p.add_argument("--format", choices=["text", "latex", "json"], default="text")

    p = sub.add_parser("pipedreams", help="enumerate pipe dreams")
    p.add_argument("perm", type=_perm_arg)
    p.add_argument("--n", type=_positive)
    p.add_argument("--nonreduced", action="store_true")
    p.add_argument("--count", action="store_true")
    p.add_argument("--render", choices=["ascii", "unicode"])

    p = sub.add_parser("diagram", help="Rothe diagram, essential set, dominant part")
    p.add_argument("perm", type=_perm_arg)

    p = sub.add_parser("covers", help="Bruhat covers inside S_n")
    p.add_argument("perm", type=_perm_arg)
    p.add_argument("--n", type=_positive)

    p = sub.add_parser("pivot", help="co-transition pivots")
    p.add_argument("perm", type=_perm_arg)
    p.add_argument("--n", type=_positive)
    p.add_argument("--all", action="store_true")

    p = sub.add_parser("expand", help="expand a polynomial in the Schubert basis")
    p.add_argument("--poly", required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--format", choices=["text", "latex", "json"], default="text")

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--family", choices=sorted(FAMILIES), default="cohomology")
    p.add_argument("--suite", action="append", choices=["all", *SUITES])
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--json", action="store_true")
    return parser


def _ambient(p: Permutation, n: int | None) -> int:
    if n is None:
        return max(len(p), 1)
    if not p.in_S(n):
        raise DomainError(f"{p} does not lie in S_{n}")
    return n


def _cmd_polynomial(args, routes) -> str:
    n = _ambient(args.perm, args.n)
    return render(routes[args.route](args.perm, n), args.format)


def _cmd_pipedreams(args) -> str:
    n = _ambient(args.perm, args.n)
    enum = enumerate_nonreduced if args.nonreduced else enumerate_reduced
    dreams = enum(args.perm, n)
    if args.count:
        return str(len(dreams))
    if args.render:
        return "\n\n".join(render_pipe_dream(d, args.render) for d in dreams)
    return "\n\n".join(format_pipe_dream(d) for d in dreams)


def _cells(cells) -> str:
    return " ".join(f"({a},{b})" for a, b in sorted(cells)) or "none"


def _cmd_diagram(args) -> str:
    p = args.perm
    n = max(len(p), 1)
    d = rothe_diagram(p)
    return "\n".join([
        f"permutation {format_one_line(p.one_line(n))}",
        f"length {length(p)}",
        "rothe diagram:",
        d.render(n),
        f"essential set: {_cells(essential_set(p).cells)}",
        f"dominant part: {_cells(dominant_part(p).cells)}",
    ])


def _cmd_covers(args) -> str:
    n = _ambient(args.perm, args.n)
    covers = sorted(covers_above(args.perm, n), key=lambda s: s.key(n))
    return "\n".join(format_one_line(s.one_line(n)) for s in covers)


def _cmd_pivot(args) -> str:
    n = _ambient(args.perm, args.n)
    if args.all:
        return "\n".join(str(v) for v in valid_pivots(args.perm, n))
    return str(minimal_pivot(args.perm, n))


def _cmd_expand(args) -> str:
    f = parse_poly(args.poly)
    result = expand(f, args.n)
    if args.format == "json":
        return json.dumps(result.to_json())
    fmt = args.format
    return "\n".join(
        f"{format_one_line(s.one_line(args.n))}: {render(c, fmt)}" for s, c in result.sorted_items()
    )


def _cmd_verify(args) -> tuple[int, str]:
    suites = args.suite or ["all"]
    report = run_suite(args.n, FAMILIES[args.family], suites, args.seed)
    text = report.dumps() if args.json else report.table()
    return (0 if report.passed else 1), text


def run_cli(argv: Sequence[str]) -> tuple[int, str]:
    """Run one invocation; return (exit code, output or diagnostic text)."""
    parser = build_parser()
    buf = io.StringIO()
    try:
        with contextlib.redirect_stdout(buf):
            args = parser.parse_args(list(argv))
    except _UsageError as exc:
        return 2, str(exc)
    except SystemExit as exc:
        # --help and friends
        return (exc.code if isinstance(exc.code, int) else 0), buf.getvalue().rstrip("\n")
    try:
        if args.command == "schubert":
            return 0, _cmd_polynomial(args, SCHUBERT_ROUTES)
        if args.command == "grothendieck":
            return 0, _cmd_polynomial(args, GROTHENDIECK_ROUTES)
        if args.command == "pipedreams":
            return 0, _cmd_pipedreams(args)
        if args.command == "diagram":
            return 0, _cmd_diagram(args)
        if args.command == "covers":
            return 0, _cmd_covers(args)
        if args.command == "pivot":
            return 0, _cmd_pivot(args)
        if args.command == "expand":
            return 0, _cmd_expand(args)
        if args.command == "verify":
            return _cmd_verify(args)
    except (ConsistencyError, NotDivisibleError, LubViolation) as exc:
        return 1, f"error: {exc}"
    except (FormatError, DomainError, CapacityError, ExpansionError) as exc:
        return 2, f"error: {exc}"
    return 2, f"error: unknown command {args.command!r}"


def main(argv: Sequence[str] | None = None) -> int:
    code, text = run_cli(sys.argv[1:] if argv is None else argv)
    if text:
        print(text, file=sys.stderr if code == 2 else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
