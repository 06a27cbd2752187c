"""The ``.geo`` construction-script language.

    program := stmt*
    stmt    := "point" IDENT "=" "(" RAT "," RAT ")"
             | "let" IDENT ("," IDENT)* "=" IDENT "(" IDENT ("," IDENT)* ")"
             | "assert" REL IDENT+ ["@" INT]
             | "emit" ("json" | "svg") STRING
    RAT     := ["-"] INT ["/" INT]

Comments run from ``#`` to the end of the line.  Names are bound once, before
use; both are checked while parsing so errors carry a source position.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from . import constructions as C
from . import kernel as K
from .angles import AngleComparison, angle_cong, angle_lt, angle_sum_check
from .errors import GeoError
from .exact import (
    DEFAULT_FUEL, Fuel, approx, as_real, format_exact, format_rational, real_from_rational,
    real_inv, real_sqrt_nonneg, round_half_away,
)
from .kernel import AngleTriple, ExactComparison, Point, RelationKind, Segment
from .verdict import Verdict, WitnessIndex

KEYWORDS = ("point", "let", "assert", "emit")


class ScriptError(GeoError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}")
        self.line, self.col = line, col


class ScriptSyntaxError(ScriptError):
    def __init__(self, line: int, col: int, expected: set[str] | str, found: str = ""):
        exp = expected if isinstance(expected, str) else " or ".join(sorted(expected))
        super().__init__(f"expected {exp}" + (f", found {found!r}" if found else ""), line, col)
        self.expected = expected


class UnboundName(ScriptError):
    pass


class Rebind(ScriptError):
    pass


class EvalError(ScriptError):
    pass


# ---------------------------------------------------------------------------
# lexer


@dataclass(frozen=True)
class Token:
    kind: str       # KEYWORD IDENT INT STRING SYM EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>[()=,/@\-])
""", re.VERBOSE)


def tokenize(text: str) -> list[Token]:
    tokens, line, start, pos = [], 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - start + 1
        if m is None:
            raise ScriptSyntaxError(line, col, "a token", text[pos])
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind in ("ident", "int", "string", "sym"):
            word = m.group()
            if kind == "ident" and word in KEYWORDS:
                kind = "keyword"
            tokens.append(Token(kind.upper(), word, line, col))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - start + 1))
    return tokens


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class PointDecl:
    name: str
    x: Fraction
    y: Fraction
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Let:
    names: tuple[str, ...]
    func: str
    args: tuple[str, ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Assert:
    relation: str
    args: tuple[str, ...]
    fuel: int | None = None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Emit:
    format: str
    path: str
    line: int = field(default=0, compare=False)


Statement = PointDecl | Let | Assert | Emit


@dataclass(frozen=True)
class ScriptProgram:
    statements: tuple[Statement, ...]


# ---------------------------------------------------------------------------
# tables


def _snake(name: str) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", "_", name).lower()


def _angles(n):
    return lambda pts: [AngleTriple(*pts[i:i + 3]) for i in range(0, n, 3)]


# relation -> (arity, evaluator)
RELATIONS: dict[str, tuple[int, Callable[[list[Point], Fuel], Verdict]]] = {
    **{_snake(k.value): (k.arity, (lambda kind: lambda pts, f: K.relation(kind, pts, f))(k))
       for k in RelationKind},
    "gt": (4, lambda pts, f: K.seg_gt(Segment(*pts[:2]), Segment(*pts[2:]), f)),
    "left": (3, lambda pts, f: K.left(pts[0], Segment(*pts[1:]), f)),
    "angle_cong": (6, lambda pts, f: angle_cong(*_angles(6)(pts), f)),
    "angle_lt": (6, lambda pts, f: angle_lt(*_angles(6)(pts), f)),
    "angle_sum": (9, lambda pts, f: angle_sum_check(*_angles(9)(pts), f)),
}

CONSTRUCTIONS: dict[str, tuple[int, Callable[..., C.ConstructionResult]]] = {
    "midpoint": (2, C.midpoint),
    "extend": (4, C.extend),
    "straightedge_compass": (4, C.straightedge_compass),
    "compass_compass": (6, C.compass_compass),
    "plane_separation": (4, C.plane_separation),
    "outer_pasch": (5, C.outer_pasch),
    "parallelogram_fourth": (3, C.parallelogram_fourth),
    "bisector_foot": (3, C.bisector_foot),
}


def relation_name(word: str) -> str | None:
    for cand in (word, _snake(word)):
        if cand in RELATIONS:
            return cand
    return None


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.bound: set[str] = set()

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, expected):
        t = self.tok
        raise ScriptSyntaxError(t.line, t.col, expected, t.text or "end of input")

    def take(self, kind: str, text: str | None = None) -> Token:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            self.fail(repr(text) if text else kind)
        self.i += 1
        return t

    def peek(self, kind: str, text: str | None = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def use(self, t: Token) -> str:
        if t.text not in self.bound:
            raise UnboundName(f"name {t.text!r} used before it is bound", t.line, t.col)
        return t.text

    def bind(self, t: Token) -> str:
        if t.text in self.bound:
            raise Rebind(f"name {t.text!r} is already bound", t.line, t.col)
        self.bound.add(t.text)
        return t.text

    def rational(self) -> Fraction:
        neg = self.peek("SYM", "-")
        if neg:
            self.i += 1
        num = int(self.take("INT").text)
        den = 1
        if self.peek("SYM", "/"):
            self.i += 1
            t = self.take("INT")
            den = int(t.text)
            if den == 0:
                raise ScriptSyntaxError(t.line, t.col, "a nonzero denominator", t.text)
        q = Fraction(num, den)
        return -q if neg else q

    def program(self) -> ScriptProgram:
        stmts = []
        while not self.peek("EOF"):
            stmts.append(self.statement())
        return ScriptProgram(tuple(stmts))

    def statement(self) -> Statement:
        t = self.tok
        if t.kind != "KEYWORD":
            self.fail({"'point'", "'let'", "'assert'", "'emit'"})
        self.i += 1
        return getattr(self, "stmt_" + t.text)(t.line)

    def stmt_point(self, line: int) -> PointDecl:
        name = self.take("IDENT")
        self.take("SYM", "=")
        self.take("SYM", "(")
        x = self.rational()
        self.take("SYM", ",")
        y = self.rational()
        self.take("SYM", ")")
        return PointDecl(self.bind(name), x, y, line)

    def stmt_let(self, line: int) -> Let:
        names = [self.take("IDENT")]
        while self.peek("SYM", ","):
            self.i += 1
            names.append(self.take("IDENT"))
        self.take("SYM", "=")
        ft = self.take("IDENT")
        if ft.text not in CONSTRUCTIONS:
            raise ScriptSyntaxError(ft.line, ft.col, set(CONSTRUCTIONS), ft.text)
        self.take("SYM", "(")
        args = [self.use(self.take("IDENT"))]
        while self.peek("SYM", ","):
            self.i += 1
            args.append(self.use(self.take("IDENT")))
        close = self.take("SYM", ")")
        arity = CONSTRUCTIONS[ft.text][0]
        if len(args) != arity:
            raise ScriptSyntaxError(close.line, close.col, f"{arity} arguments to {ft.text}", str(len(args)))
        if len(names) != 1:
            raise ScriptSyntaxError(names[1].line, names[1].col, f"one name for {ft.text}", names[1].text)
        return Let(tuple(self.bind(n) for n in names), ft.text, tuple(args), line)

    def stmt_assert(self, line: int) -> Assert:
        rt = self.take("IDENT")
        rel = relation_name(rt.text)
        if rel is None:
            raise ScriptSyntaxError(rt.line, rt.col, "a relation name", rt.text)
        args = []
        while self.peek("IDENT"):
            args.append(self.use(self.take("IDENT")))
        fuel = None
        if self.peek("SYM", "@"):
            self.i += 1
            t = self.take("INT")
            fuel = int(t.text)
            if fuel < 1:
                raise ScriptSyntaxError(t.line, t.col, "a positive fuel", t.text)
        arity = RELATIONS[rel][0]
        if len(args) != arity:
            raise ScriptSyntaxError(rt.line, rt.col, f"{arity} points for {rel}", str(len(args)))
        return Assert(rel, tuple(args), fuel, line)

    def stmt_emit(self, line: int) -> Emit:
        fmt = self.take("IDENT")
        if fmt.text not in ("json", "svg"):
            raise ScriptSyntaxError(fmt.line, fmt.col, {"'json'", "'svg'"}, fmt.text)
        path = json.loads(self.take("STRING").text)
        return Emit(fmt.text, path, line)


def parse_script(text: str) -> ScriptProgram:
    return _Parser(text).program()


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def pretty(program: ScriptProgram) -> str:
    out = []
    for s in program.statements:
        if isinstance(s, PointDecl):
            out.append(f"point {s.name} = ({_fmt_rat(s.x)}, {_fmt_rat(s.y)})")
        elif isinstance(s, Let):
            out.append(f"let {', '.join(s.names)} = {s.func}({', '.join(s.args)})")
        elif isinstance(s, Assert):
            out.append(f"assert {s.relation} {' '.join(s.args)}" + (f" @ {s.fuel}" if s.fuel else ""))
        else:
            out.append(f"emit {s.format} {json.dumps(s.path, ensure_ascii=False)}")
    return "\n".join(out) + ("\n" if out else "")


# ---------------------------------------------------------------------------
# evaluation


@dataclass(frozen=True)
class AssertionResult:
    line: int
    relation: str
    args: tuple[str, ...]
    verdict: Verdict


@dataclass(frozen=True)
class ConstructionRecord:
    line: int
    names: tuple[str, ...]
    func: str
    args: tuple[str, ...]
    result: C.ConstructionResult


@dataclass
class EvalEnv:
    bindings: dict[str, Point] = field(default_factory=dict)
    results: list[AssertionResult] = field(default_factory=list)
    constructions: list[ConstructionRecord] = field(default_factory=list)
    emits: list[Emit] = field(default_factory=list)
    precision: int = 6

    @property
    def all_hold(self) -> bool:
        return all(r.verdict.is_holds for r in self.results)


def eval_script(program: ScriptProgram, fuel: Fuel = DEFAULT_FUEL, base_dir: str | Path | None = None,
                precision: int = 6, write: bool = True) -> EvalEnv:
    env = EvalEnv(precision=precision)
    for s in program.statements:
        if isinstance(s, PointDecl):
            env.bindings[s.name] = Point.of(s.x, s.y)
        elif isinstance(s, Let):
            fn = CONSTRUCTIONS[s.func][1]
            try:
                r = fn(*(env.bindings[a] for a in s.args), fuel=fuel)
            except GeoError as exc:
                raise EvalError(f"{s.func}: {exc}", s.line) from exc
            env.bindings.update(zip(s.names, r.points))
            env.constructions.append(ConstructionRecord(s.line, s.names, s.func, s.args, r))
        elif isinstance(s, Assert):
            f = fuel if s.fuel is None else Fuel(s.fuel, fuel.precision_bits)
            try:
                v = RELATIONS[s.relation][1]([env.bindings[a] for a in s.args], f)
            except GeoError as exc:
                raise EvalError(f"{s.relation}: {exc}", s.line) from exc
            env.results.append(AssertionResult(s.line, s.relation, s.args, v))
        else:
            env.emits.append(s)
    if write:
        from .svg import render_svg  # svg imports this module
        base = Path(base_dir) if base_dir is not None else Path.cwd()
        for e in env.emits:
            text = to_json(env) if e.format == "json" else render_svg(env)
            (base / e.path).write_text(text, encoding="utf-8")
    return env


# ---------------------------------------------------------------------------
# JSON


def decimal(q: Fraction, digits: int) -> str:
    n = round_half_away(Fraction(q) * 10 ** digits)
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


def approx_decimal(r, digits: int) -> str:
    """``digits`` decimals of a Real; three guard digits make the last one correctly rounded
    except within 1/10^(digits+3) of a tie."""
    return decimal(approx(r, 10 ** (digits + 3)), digits)


def point_json(p: Point, digits: int) -> dict:
    out: dict[str, Any] = {}
    if p.exact is not None:
        out["exact"] = [format_exact(c) for c in p.exact]
    out["approx"] = [approx_decimal(r, digits) for r in (p.x, p.y)]
    return out


def witness_json(w: Any, digits: int) -> Any:
    if isinstance(w, Point):
        return point_json(w, digits)
    if isinstance(w, WitnessIndex):
        return {"index": w.n}
    if isinstance(w, ExactComparison):
        return {"lhs": format_exact(w.lhs), "rhs": format_exact(w.rhs)}
    if isinstance(w, AngleComparison):
        return {"cos_sign": w.sign}
    if isinstance(w, K.Straddle):
        return {"x": point_json(w.x, digits), "y": point_json(w.y, digits)}
    if isinstance(w, Verdict):
        return {"verdict": str(w), "witness": witness_json(w.witness, digits)}
    if isinstance(w, dict):
        return {str(k): witness_json(v, digits) for k, v in w.items()}
    if isinstance(w, (list, tuple)):
        return [witness_json(v, digits) for v in w]
    if isinstance(w, Fraction):
        return format_rational(w)
    if w is None or isinstance(w, (bool, int, str)):
        return w
    return str(w)


def report(env: EvalEnv) -> dict:
    d = env.precision
    assertions = []
    for r in env.results:
        entry = {"line": r.line, "relation": r.relation, "args": list(r.args), "verdict": str(r.verdict)}
        if r.verdict.witness is not None:
            entry["witness"] = witness_json(r.verdict.witness, d)
        assertions.append(entry)
    constructions = [
        {"name": ", ".join(c.names), "line": c.line, "construction": c.func,
         "points": [point_json(p, d) for p in c.result.points],
         "certificates": [{"relation": cert.relation, "verdict": str(cert.verdict)}
                          for cert in c.result.certificates]}
        for c in env.constructions
    ]
    return {"assertions": assertions, "constructions": constructions}


def to_json(env: EvalEnv) -> str:
    return json.dumps(report(env), indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# arithmetic expressions for the ``approx`` command


_EXPR_RE = re.compile(r"\s*(?:(\d+)|(sqrt)|(.))")


def _expr_tokens(text: str) -> list[str]:
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _EXPR_RE.match(text, pos)
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok is None:
            break
        if m.group(3) and tok not in "+-*/()":
            raise ScriptSyntaxError(1, m.start(3) + 1, "a number, operator, parenthesis or sqrt", tok)
        out.append(tok)
        pos = m.end()
    return out


def parse_expr(text: str, fuel: Fuel = DEFAULT_FUEL):
    """Parse ``+ - * / ( ) sqrt`` over integer literals into a Real."""
    toks = _expr_tokens(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(want=None):
        nonlocal pos
        t = peek()
        if t is None or (want is not None and t != want):
            raise ScriptSyntaxError(1, pos + 1, repr(want) if want else "more input", t or "end of input")
        pos += 1
        return t

    def expr():
        v = term()
        while peek() in ("+", "-"):
            v = v + term() if take() == "+" else v - term()
        return v

    def term():
        v = factor()
        while peek() in ("*", "/"):
            if take() == "*":
                v = v * factor()
            else:
                v = v * real_inv(factor(), fuel)
        return v

    def factor():
        t = peek()
        if t == "-":
            take()
            return -factor()
        if t == "(":
            take()
            v = expr()
            take(")")
            return v
        if t == "sqrt":
            take()
            take("(")
            v = expr()
            take(")")
            return real_sqrt_nonneg(v, fuel)
        if t is not None and t.isdigit():
            take()
            return real_from_rational(Fraction(int(t)))
        raise ScriptSyntaxError(1, pos + 1, "a number, '(', '-' or sqrt", t or "end of input")

    v = expr()
    if peek() is not None:
        raise ScriptSyntaxError(1, pos + 1, "end of input", peek())
    return as_real(v)
