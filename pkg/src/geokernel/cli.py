"""Command line entry point: ``geokernel {run,check-axioms,steiner-lehmus,approx}``."""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import verifier as V
from .constructions import build_sl_instance, sl_sign_law
from .errors import GeoError
from .exact import DEFAULT_FUEL, Fuel, approx, exact_cmp, format_exact, format_rational
from .kernel import Point
from .script import EvalError, ScriptError, approx_decimal, decimal, eval_script, parse_expr, parse_script, to_json


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {n}")
    return n


def default_fuel(env=os.environ) -> Fuel:
    raw = env.get("GEO_FUEL")
    if raw is None or raw == "":
        return DEFAULT_FUEL
    try:
        return Fuel(_positive(raw), DEFAULT_FUEL.precision_bits)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"GEO_FUEL: {exc}") from None


def _fuel(args) -> Fuel:
    return Fuel(args.fuel, DEFAULT_FUEL.precision_bits) if args.fuel else default_fuel()


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="geokernel", description="Exact constructive plane geometry toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="evaluate a .geo script")
    r.add_argument("file")
    r.add_argument("--fuel", type=_positive, help="witness search bound (default 2^16 or $GEO_FUEL)")
    r.add_argument("--precision", type=_positive, default=6, help="decimal digits in approximations")
    r.add_argument("--json", action="store_true", help="print the JSON report")

    c = sub.add_parser("check-axioms", help="property-test axioms in the coordinate model")
    c.add_argument("--samples", type=_positive, default=1000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--only", help="comma separated axiom tags (default U1..U13)")
    c.add_argument("--fuel", type=_positive)

    s = sub.add_parser("steiner-lehmus", help="build the bisector configuration of a triangle")
    s.add_argument("--triangle", required=True, help='"(ax,ay),(bx,by),(cx,cy)"')
    s.add_argument("--sweep", type=_positive, help="also check the sign law on N random triangles")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--fuel", type=_positive)

    a = sub.add_parser("approx", help="rational approximation of an arithmetic expression")
    a.add_argument("expr")
    a.add_argument("--k", type=_positive, required=True, help="tolerance 1/K")
    a.add_argument("--fuel", type=_positive)
    return p


# ---------------------------------------------------------------------------


def cmd_run(args, out) -> int:
    path = Path(args.file)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror or exc}") from None
    try:
        prog = parse_script(text)
    except ScriptError as exc:
        raise UsageError(f"{args.file}:{exc}") from None
    try:
        env = eval_script(prog, _fuel(args), base_dir=path.parent, precision=args.precision)
    except EvalError as exc:
        print(f"{args.file}:{exc}", file=sys.stderr)
        return 1
    if args.json:
        out.write(to_json(env))
    else:
        for r in env.results:
            print(f"{args.file}:{r.line}: {r.relation} {' '.join(r.args)}: {r.verdict}", file=out)
        for rec in env.constructions:
            for name, p in zip(rec.names, rec.result.points):
                xy = ", ".join(approx_decimal(c, args.precision) for c in (p.x, p.y))
                print(f"{name} = ({xy})", file=out)
    return 0 if env.all_hold else 1


def cmd_check_axioms(args, out) -> int:
    if args.only:
        try:
            axioms = [V.AxiomId.parse(t.strip()) for t in args.only.split(",") if t.strip()]
        except (KeyError, ValueError) as exc:
            raise UsageError(f"unknown axiom in --only: {exc}") from None
    else:
        axioms = list(V.U_AXIOMS)
    rep = V.run_suite(axioms, args.samples, args.seed, _fuel(args))
    out.write(rep.to_json() + "\n")
    return 0 if rep.ok and rep.gate_ok() else 1


_PAIR = re.compile(r"\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)")


def parse_triangle(text: str) -> tuple[Point, Point, Point]:
    pairs = _PAIR.findall(text)
    rest = _PAIR.sub("", text).replace(",", "").strip()
    if len(pairs) != 3 or rest:
        raise UsageError(f"--triangle needs three points like (0,0),(1,0),(0,1), got {text!r}")
    try:
        return tuple(Point.of(Fraction(x), Fraction(y)) for x, y in pairs)  # type: ignore[return-value]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--triangle coordinates must be rationals: {text!r}") from None


def cmd_steiner_lehmus(args, out) -> int:
    a, b, c = parse_triangle(args.triangle)
    fuel = _fuel(args)
    try:
        inst = build_sl_instance(a, b, c, fuel)
    except GeoError as exc:
        raise UsageError(f"degenerate triangle: {exc}") from None
    ay, cx = inst.bisector_sq_lengths
    ab, cb = inst.side_sq_lengths
    print(f"x = {inst.x}  (bisector from c)", file=out)
    print(f"y = {inst.y}  (bisector from a)", file=out)
    if exact_cmp(ay, cx) == 0:
        print(f"|ay|²=|cx|²={format_exact(ay)}", file=out)
    else:
        print(f"|ay|²={format_exact(ay)}  |cx|²={format_exact(cx)}", file=out)
    print(f"|ab|²={format_exact(ab)}  |cb|²={format_exact(cb)}", file=out)
    bis, side = exact_cmp(cx, ay), exact_cmp(cb, ab)
    print(f"isosceles: {'yes' if side == 0 else 'no'}", file=out)
    ok = inst.ok and bis == sl_sign_law(side)
    print(f"sign law: {'agrees' if bis == sl_sign_law(side) else 'VIOLATED'}", file=out)
    if not inst.ok:
        print("certificates: " + ", ".join(f"{c.relation}={c.verdict}" for c in inst.certificates), file=out)
    if args.sweep:
        rep = V.run_suite([V.AxiomId.SteinerLehmusSign], args.sweep, args.seed, fuel)
        summ = rep.by_axiom(V.AxiomId.SteinerLehmusSign)
        print("sweep: " + json.dumps(summ.to_dict()), file=out)
        ok = ok and summ.ok
    return 0 if ok else 1


def cmd_approx(args, out) -> int:
    fuel = _fuel(args)
    try:
        val = parse_expr(args.expr, fuel)
        q = approx(val, args.k)
    except ScriptError as exc:
        raise UsageError(f"approx: {exc}") from None
    except GeoError as exc:
        raise UsageError(f"approx: {type(exc).__name__}: {exc}") from None
    digits = len(str(args.k))
    print(f"{format_rational(q)}  ~ {decimal(q, digits)}  (within 1/{args.k})", file=out)
    return 0


_COMMANDS = {"run": cmd_run, "check-axioms": cmd_check_axioms,
             "steiner-lehmus": cmd_steiner_lehmus, "approx": cmd_approx}


def cli_main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
