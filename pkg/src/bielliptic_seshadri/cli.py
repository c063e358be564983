"""Command-line front end.

Exit codes: 0 success, 1 oracle violation or failed verification, 2 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import os
import sys

from .certificates import SCHEMA_VERSION, Certificate
from .harbourne_roe import (
    DEFAULT_MU,
    format_hr_table,
    hr_table_rows,
    verify_criterion,
)
from .oracle import REPLAY_CASES, SearchWindow, replay_contradiction, sweep
from .seshadri import best_known
from .surd import BoundValue
from .surfaces import DivisorClass, PointSpec, is_ample, self_intersection, serrano_table, surface

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _color(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _dump(record: dict) -> str:
    return json.dumps(record, indent=2, sort_keys=True)


def _bundle(text: str) -> DivisorClass:
    try:
        return DivisorClass.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _point(text: str) -> PointSpec:
    try:
        return PointSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _window(text: str) -> SearchWindow:
    try:
        return SearchWindow.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"window must be A,B,M with positive entries: {exc}")


def _bound_value(text: str) -> BoundValue:
    try:
        return BoundValue.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _ample_query(args) -> tuple:
    s = surface(args.type)
    if not is_ample(args.bundle):
        raise UsageError(f"bundle {args.bundle} is not ample (need a > 0 and b > 0)")
    return s, args.bundle


def _certificates_output(args, query: dict, certs: list[Certificate]) -> str:
    if args.format == "json":
        return _dump(
            {
                "schema_version": SCHEMA_VERSION,
                "query": query,
                "certificates": [c.to_dict() for c in certs],
            }
        )
    lines = [" ".join(f"{k}={v}" for k, v in query.items())]
    for c in certs:
        lines.append(c.describe())
        if c.witness:
            w = c.witness
            lines.append(
                f"  witness: class {w.candidate.cls} mults {list(w.candidate.mults)} "
                f"at {', '.join(map(str, w.points))}"
            )
        if args.verbose:
            lines += [f"  | {t}" for t in c.trace]
    return "\n".join(lines)


def cmd_bound(args) -> tuple[int, str]:
    s, L = _ample_query(args)
    p = PointSpec.arbitrary() if args.glob or args.point is None else args.point
    p.validate(s)
    certs = best_known(s, L, p=p)
    query = {"type": s.id, "bundle": str(L), "point": str(p)}
    return EXIT_OK, _certificates_output(args, query, certs)


def cmd_multipoint(args) -> tuple[int, str]:
    s, L = _ample_query(args)
    if args.r < 2:
        raise UsageError("multipoint queries need r >= 2")
    certs = best_known(s, L, r=args.r, mu=args.mu)
    query = {"type": s.id, "bundle": str(L), "r": args.r, "mu": args.mu}
    return EXIT_OK, _certificates_output(args, query, certs)


def cmd_hr_table(args) -> tuple[int, str]:
    rs = [args.r] if args.r is not None else list(range(2, 9))
    if any(r < 2 for r in rs):
        raise UsageError("r must be >= 2")
    if args.format == "json":
        rows = [
            {"r": r, "m": m, "k": ks} for r_ in rs for r, m, ks in hr_table_rows(r_, args.mu)
        ]
        return EXIT_OK, _dump({"schema_version": SCHEMA_VERSION, "mu": args.mu, "rows": rows})
    return EXIT_OK, format_hr_table(rs, args.mu)


def cmd_hr_verify(args) -> tuple[int, str]:
    s, L = _ample_query(args)
    if args.r < 2:
        raise UsageError("r must be >= 2")
    report = verify_criterion(args.r, args.mu, self_intersection(L))
    code = EXIT_OK if report.passed else EXIT_VIOLATION
    if args.format == "json":
        return code, _dump({"schema_version": SCHEMA_VERSION, "type": s.id, **report.to_dict()})
    lines = list(report.trace)
    if report.passed:
        lines.append(_color(f"PASS: eps(L,{args.r}) >= {report.bound} (~{report.bound.approx()})", "32"))
    else:
        failed = [str(c.triple) for c in report.checks if not c.passed]
        lines.append(_color(f"FAIL: {', '.join(failed)}", "31"))
    return code, "\n".join(lines)


def cmd_oracle(args) -> tuple[int, str]:
    s, L = _ample_query(args)
    points = args.point or [PointSpec.arbitrary()]
    w = SearchWindow(
        args.window.max_alpha, args.window.max_beta, args.window.max_mult,
        max_points=args.max_points,
    )
    verdict = sweep(
        s, L, points, w, args.claimed,
        use_xu=not args.no_xu, strips=args.workers, workers=args.workers,
    )
    code = EXIT_VIOLATION if verdict.violations else EXIT_OK
    if args.format == "json":
        return code, _dump(verdict.to_dict())
    lines = [
        f"type={s.id} bundle={L} points={','.join(map(str, points))} claimed={args.claimed} "
        f"window=({w.max_alpha},{w.max_beta},{w.max_mult}) xu={'on' if not args.no_xu else 'off'}"
    ]
    if verdict.violations:
        lines.append(_color(f"{len(verdict.violations)} violations", "31"))
        for h in verdict.violations:
            lines.append(f"  class {h.candidate.cls} mults {list(h.candidate.mults)} ratio {h.ratio}")
    else:
        lines.append(_color("no violations", "32"))
    lines.append(f"{len(verdict.achievers)} achievers")
    for h in verdict.achievers:
        where = "; ".join(",".join(map(str, pl)) for pl in h.placements)
        lines.append(f"  class {h.candidate.cls} mults {list(h.candidate.mults)} at {where}")
    return code, "\n".join(lines)


def cmd_replay(args) -> tuple[int, str]:
    replay = replay_contradiction(args.case)
    code = EXIT_OK if replay.inconsistent else EXIT_VIOLATION
    if args.format == "json":
        return code, _dump({"schema_version": SCHEMA_VERSION, **replay.to_dict()})
    return code, "\n".join(replay.lines)


def cmd_serrano_table(args) -> tuple[int, str]:
    rows = serrano_table()
    if args.format == "json":
        return EXIT_OK, _dump({"schema_version": SCHEMA_VERSION, "types": rows})
    out = ["type | G     | |G| | m_1..m_s | basis of Num(S) | mu | B-class"]
    for r in rows:
        mults = ",".join(map(str, r["singular_fiber_multiplicities"]))
        out.append(
            f"{r['type']:<4} | {r['group']:<5} | {r['group_order']:<3} | {mults:<8} | "
            f"{', '.join(r['basis']):<15} | {r['mu']:<2} | (0,{r['b_fiber_coeff']})"
        )
    return EXIT_OK, "\n".join(out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("-v", "--verbose", action="store_true", help="print certificate traces")

    bundle = argparse.ArgumentParser(add_help=False)
    bundle.add_argument("--type", type=int, required=True, choices=range(1, 8), metavar="1..7")
    bundle.add_argument("--bundle", type=_bundle, required=True, metavar="A,B",
                        help="line bundle of type (a,b)")

    parser = argparse.ArgumentParser(
        prog="bielliptic-seshadri",
        description="Certified Seshadri constants on hyperelliptic surfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "bound", parents=[common, bundle],
        help="single-point / global Seshadri constant",
        description="Single-point and global constants: type (1,1) theorem, type 1 exact "
        "value min(a,b), types 2-7 lower bound min(a,b), the 4/3 bound on type 2, "
        "and the sqrt(L^2) upper bound.",
    )
    where = p.add_mutually_exclusive_group()
    where.add_argument("--global", dest="glob", action="store_true",
                       help="global constant (infimum over all points)")
    where.add_argument("--point", type=_point,
                       help="arbitrary | very-general | general-fiber | singular:M")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser(
        "multipoint", parents=[common, bundle],
        help="Seshadri constant at r very general points",
        description="Harbourne-Roe criterion lower bound sqrt(L^2/r)*sqrt(1-1/(r mu)) "
        "and the sqrt(L^2/r) upper bound.",
    )
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--mu", type=int, default=DEFAULT_MU)
    p.set_defaults(func=cmd_multipoint)

    p = sub.add_parser(
        "hr-table", parents=[common],
        help="admissible (m,k) table of the Harbourne-Roe criterion",
        description="Admissible (r,m,k) for condition (2) of the Harbourne-Roe criterion: "
        "1 <= m < mu/(r-1), k^2 < r/(r-1) min(m, m+k), k != 0.",
    )
    p.add_argument("--r", type=int, default=None, help="single r (default: 2..8)")
    p.add_argument("--mu", type=int, default=DEFAULT_MU)
    p.set_defaults(func=cmd_hr_table)

    p = sub.add_parser(
        "hr-verify", parents=[common, bundle],
        help="verify every Harbourne-Roe hypothesis for (r, mu)",
        description="Checks the Harbourne-Roe criterion hypotheses with Xu-type and "
        "Riemann-Roch C^2 floors and Hodge index, exactly.",
    )
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--mu", type=int, default=DEFAULT_MU)
    p.set_defaults(func=cmd_hr_verify)

    p = sub.add_parser(
        "oracle", parents=[common, bundle],
        help="brute-force sweep for candidates beating a claimed bound",
        description="Enumerates curve classes and multiplicities in a window, filtering with "
        "the genus bound, the Xu-type lemma, Bezout and Hodge index.",
    )
    p.add_argument("--point", type=_point, action="append",
                   help="point position; repeat for several points (default: arbitrary)")
    p.add_argument("--claimed", type=_bound_value, required=True, help="e.g. 4/3 or sqrt(15/16)")
    p.add_argument("--window", type=_window, default=SearchWindow(8, 8, 6), metavar="A,B,M")
    p.add_argument("--max-points", type=int, default=3)
    p.add_argument("--no-xu", action="store_true", help="disable the Xu-type filter")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser(
        "replay", parents=[common],
        help="replay a case of the 4/3 bound on type 2",
        description="Re-derives the contradictions behind eps(L,x) >= 4/3 for L=(1,1) "
        "at a very general point of a type 2 surface.",
    )
    p.add_argument("--case", required=True, choices=sorted(REPLAY_CASES))
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser(
        "serrano-table", parents=[common],
        help="Serrano's table of Num(S) bases",
        description="Serrano's classification: group, multiple fibres and basis of Num(S) "
        "for the seven types.",
    )
    p.set_defaults(func=cmd_serrano_table)
    return parser


def run(argv: list[str]) -> tuple[int, str]:
    parser = build_parser()
    buf = io.StringIO()
    try:
        with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(buf):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else EXIT_USAGE), buf.getvalue().rstrip()
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        return EXIT_USAGE, f"error: {exc}"


def main(argv: list[str] | None = None) -> None:
    code, output = run(sys.argv[1:] if argv is None else argv)
    if output:
        print(output, file=sys.stderr if code == EXIT_USAGE else sys.stdout)
    sys.exit(code)


if __name__ == "__main__":
    main()
