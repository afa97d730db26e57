"""Command-line front end: ``quadfrieze <subcommand> [flags]``.

Exit codes: 0 success, 1 usage or validation error, 2 census complete only
relative to the quiddity bound (the census is still written).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import census, frieze, orders, reference, triangulate
from .eta import Stuck, is_quiddity_cycle, reduce_to_canonical
from .qint import field, format_element, parse_element

EXIT_OK, EXIT_USAGE, EXIT_INCOMPLETE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _tag(d):
    if d is None:
        return None
    try:
        return field(d)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} needs {', '.join(missing)}")


def _cycle(args):
    _require(args, "quiddity")
    try:
        return frieze.parse_cycle(args.quiddity, args.d)
    except ValueError as exc:
        raise UsageError(f"cannot parse --quiddity: {exc}") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _quiddity_text(cycle) -> str:
    return " ".join(format_element(c) for c in cycle)


# -- subcommands ---------------------------------------------------------------


def cmd_enumerate(args) -> tuple[str, int]:
    _require(args, "height")
    try:
        cfg = census.SearchConfig(
            _tag(args.d),
            args.height,
            args.bound_sq,
            census.Positivity.POSITIVE_ONLY if args.positive else census.Positivity.ALL,
            args.workers,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = census.enumerate_friezes(cfg, progress=args.progress)
    code = EXIT_OK if result.complete else EXIT_INCOMPLETE
    if args.format == "json":
        return _dump(census.census_to_json(result)), code
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["d", "height", "quiddity", "class"])
        for f, c in zip(result.friezes, result.classes):
            d = "" if cfg.d is None else cfg.d
            w.writerow([d, f.height, _quiddity_text(frieze.extract_quiddity(f)), c.value])
        return buf.getvalue(), code
    ring = "Z" if cfg.d is None else f"O_{cfg.d}"
    lines = [
        f"ring {ring}, height {cfg.height}, |q|^2 <= {cfg.quiddity_bound_sq}: {len(result)} friezes",
        result.completeness_note,
    ]
    lines += [f"  {c.value}: {k}" for c, k in result.counts.items() if k]
    for f, c in zip(result.friezes, result.classes):
        lines.append(f"({', '.join(format_element(q) for q in frieze.extract_quiddity(f))})  {c.value}")
    return "\n".join(lines) + "\n", code


def cmd_classify(args) -> tuple[str, int]:
    cyc = _cycle(args)
    try:
        f = frieze.from_quiddity(cyc)
    except frieze.NotAQuiddityCycle as exc:
        raise UsageError(str(exc)) from None
    cls, parity = frieze.classify_detail(f)
    rep = frieze.validate(f)
    if args.format == "json":
        out = frieze.frieze_to_json(f, cls)
        out["untwist_parity"] = parity
        out["validation"] = {"unimodular": rep.unimodular, "tame": rep.tame, "nonzero": rep.nonzero, "glide": rep.glide}
        return _dump(out), EXIT_OK
    if args.format == "csv":
        d = "" if args.d is None else args.d
        return f"d,height,quiddity,class\n{d},{f.height},{_quiddity_text(cyc)},{cls.value}\n", EXIT_OK
    return f"{cls.value}\n{frieze.pretty(f)}\n", EXIT_OK


def cmd_triangulations(args) -> tuple[str, int]:
    if args.n_gon is None and args.height is None:
        raise UsageError("triangulations needs --n-gon or --height")
    n_gon = args.n_gon if args.n_gon is not None else args.height + 3
    try:
        tris = triangulate.enumerate_triangulations(n_gon)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = [(t, triangulate.quiddity_of_triangulation(t)) for t in tris]
    if args.format == "json":
        data = [{"diagonals": t.to_json(), "quiddity": [int(c.x) for c in q]} for t, q in rows]
        return _dump({"n_gon": n_gon, "count": len(tris), "triangulations": data}), EXIT_OK
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n_gon", "diagonals", "quiddity"])
        for t, q in rows:
            w.writerow([n_gon, " ".join(f"{i}-{j}" for i, j in t.diagonals), _quiddity_text(q)])
        return buf.getvalue(), EXIT_OK
    lines = [f"{len(tris)} triangulations of the {n_gon}-gon"]
    lines += [f"{t.diagonals}  quiddity ({', '.join(str(int(c.x)) for c in q)})" for t, q in rows]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_reduce(args) -> tuple[str, int]:
    cyc = _cycle(args)
    try:
        trace = reduce_to_canonical(cyc, _tag(args.d))
    except Stuck as exc:
        raise UsageError(f"no rewrite applies to {_quiddity_text(exc.cycle)}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        return _dump(trace.to_json()), EXIT_OK
    lines = [_quiddity_text(trace.original)]
    for s in trace.steps:
        flip = "  (sign flip)" if s.sign_flip else ""
        lines.append(f"  rule {s.rule.value} at {s.position} -> {_quiddity_text(s.after)}{flip}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_quiddity_check(args) -> tuple[str, int]:
    ok = is_quiddity_cycle(_cycle(args))
    if args.format == "json":
        return _dump({"quiddity_cycle": ok}), EXIT_OK
    return ("true" if ok else "false") + "\n", EXIT_OK


def cmd_unit_search(args) -> tuple[str, int]:
    _require(args, "alpha")
    tag = _tag(args.d)
    try:
        alpha = parse_element(args.alpha, tag)
    except ValueError as exc:
        raise UsageError(f"cannot parse --alpha: {exc}") from None
    try:
        cert = orders.find_infinite_unit(alpha, tag or alpha.tag, args.power_budget, args.nmax)
    except orders.NoDenominator as exc:
        raise UsageError(str(exc)) from None
    except orders.BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return "", EXIT_USAGE
    if args.format == "json":
        return _dump(cert.to_json()), EXIT_OK
    return "\n".join(orders.certificate_lines(cert)) + "\n", EXIT_OK


def cmd_class_number(args) -> tuple[str, int]:
    _require(args, "d")
    h = orders.class_number(_tag(args.d))
    if args.format == "json":
        return _dump({"d": args.d, "class_number": h}), EXIT_OK
    return f"{h}\n", EXIT_OK


def cmd_verify_paper(args) -> tuple[str, int]:
    results = reference.run_checks()
    ok = all(r.ok for r in results)
    if args.format == "json":
        data = [{"check": r.name, "ok": r.ok, "detail": r.detail} for r in results]
        return _dump({"ok": ok, "checks": data}), EXIT_OK if ok else EXIT_USAGE
    width = max(len(r.name) for r in results)
    lines = [f"{'PASS' if r.ok else 'FAIL'}  {r.name.ljust(width)}  {r.detail}" for r in results]
    return "\n".join(lines) + "\n", EXIT_OK if ok else EXIT_USAGE


COMMANDS = {
    "enumerate": cmd_enumerate,
    "classify": cmd_classify,
    "triangulations": cmd_triangulations,
    "reduce": cmd_reduce,
    "quiddity-check": cmd_quiddity_check,
    "unit-search": cmd_unit_search,
    "class-number": cmd_class_number,
    "verify-paper": cmd_verify_paper,
}

_HELP = {
    "enumerate": "census of non-zero friezes of one height",
    "classify": "classify the frieze of a quiddity cycle",
    "triangulations": "triangulations of a polygon with their quiddity cycles",
    "reduce": "reduce a quiddity cycle to (0,0) or (1,1,1)",
    "quiddity-check": "test whether a sequence is a quiddity cycle",
    "unit-search": "find a unit of infinite order in Z[alpha]",
    "class-number": "class number of Q(sqrt(d))",
    "verify-paper": "replay the reference values",
}


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quadfrieze", description="Frieze patterns over imaginary quadratic integers.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)
    for name in COMMANDS:
        s = sub.add_parser(name, help=_HELP[name])
        s.add_argument("--d", type=int, help="square-free d < 0; omit for the rational integers")
        s.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
        s.add_argument("--out", help="write output to this file instead of stdout")
        if name in ("enumerate", "triangulations"):
            s.add_argument("--height", type=int)
        if name == "enumerate":
            s.add_argument("--bound-sq", type=_fraction, help="include entries with |q|^2 <= this")
            s.add_argument("--positive", action="store_true", help="positive rational integers only")
            s.add_argument("--workers", type=int, default=1)
            s.add_argument("--progress", action="store_true", help="progress on stderr")
        if name == "triangulations":
            s.add_argument("--n-gon", type=int)
        if name in ("classify", "reduce", "quiddity-check"):
            s.add_argument("--quiddity", help='entries separated by commas, e.g. "w, 1-w, w, 1-w"')
        if name == "unit-search":
            s.add_argument("--alpha", help='e.g. "-2/47+5/47*sqrt(-13)"')
            s.add_argument("--power-budget", type=int, default=12)
            s.add_argument("--nmax", type=int)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"quadfrieze: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
