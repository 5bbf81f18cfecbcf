"""Batch front end: read a problem file, run one command, print a JSON report.

Problem files are line oriented::

    # comments and blank lines are ignored
    p=7
    vars=x,y
    ideal a = x^2+y^3
    cmd jumps a T=1 emax=4

Headers are ``p=``, ``vars=`` (or ``semigroup 2,3``) and optionally
``order=``. Definitions are ``ideal NAME = f, g, ...``, ``poly NAME = f`` and
``frac NAME = {0,1}``. The last line is ``cmd COMMAND ARGS...``.

Exit status: 0 computed, 1 inconclusive, 2 input or resource error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import isprime

from .dmod import construct_delta, generation_report, is_fpure_pair, verify_delta
from .errors import ExponentOverflowError, FrobkitError, ParseError, ResourceLimitError, UnstabilizedError
from .frobroot import descending_chain, frobenius_root
from .groebner import Ideal, limits
from .polyring import PolynomialRing, as_order, format_polynomial
from .semigroup import FracIdeal, NumericalSemigroup, chain_stabilize_frac, ffrt_decompose
from .testideal import (
    as_exponent,
    degree_bound_check,
    fpt_interval,
    fraction_text,
    jumping_exponents,
    nu,
    test_ideal_info,
)

COMMANDS = (
    "frob-root",
    "chain",
    "delta-cert",
    "fpure-pair",
    "test-ideal",
    "nu",
    "fpt",
    "jumps",
    "degree-check",
    "ffrt-decompose",
    "frac-chain",
)
SEMIGROUP_COMMANDS = ("ffrt-decompose", "frac-chain")
DEFAULT_EMAX = 4

EXIT_OK, EXIT_INCONCLUSIVE, EXIT_ERROR = 0, 1, 2


@dataclass
class Definition:
    kind: str  # "ideal", "poly" or "frac"
    name: str
    text: str
    value: object
    line: int


@dataclass
class ProblemSpec:
    p: Optional[int]
    variables: Optional[Tuple[str, ...]]
    semigroup: Optional[Tuple[int, ...]]
    order: str
    definitions: Dict[str, Definition]
    command: str
    positional: List[str]
    params: Dict[str, str]
    command_line: int
    ring: Optional[PolynomialRing] = None
    S: Optional[NumericalSemigroup] = None
    command_raw: str = ""

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "vars": None if self.variables is None else list(self.variables),
            "semigroup": None if self.semigroup is None else list(self.semigroup),
            "order": self.order,
            "definitions": [
                {"kind": d.kind, "name": d.name, "text": d.text}
                for d in sorted(self.definitions.values(), key=lambda d: d.line)
            ],
            "command": self.command,
            "arguments": list(self.positional),
            "options": dict(sorted(self.params.items())),
        }


_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")
_DEF = re.compile(r"(ideal|poly|frac)\s+([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(.*)$")


def _col(raw: str, piece: str, start: int = 0) -> int:
    idx = raw.find(piece, start)
    return (idx if idx >= 0 else start) + 1


def _parse_int(text: str, what: str, line: int, col: int) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {text.strip()!r}", line, col) from None


def _parse_frac_ideal(raw: str, text: str, S: NumericalSemigroup, line: int) -> FracIdeal:
    body = text.strip()
    col = _col(raw, body)
    if not (body.startswith("{") and body.endswith("}")):
        raise ParseError("fractional ideal must be written as {a,b,...}", line, col)
    items = [s for s in body[1:-1].split(",") if s.strip()]
    if not items:
        raise ParseError("fractional ideal needs at least one generator", line, col)
    return FracIdeal([_parse_int(s, "generator", line, col) for s in items], S)


def parse_problem(text: str, *, order: Optional[str] = None) -> ProblemSpec:
    """Parse and validate a problem; raises :class:`ParseError` with line and column."""
    p = variables = semigroup = None
    order_text = None
    definitions: Dict[str, Definition] = {}
    command = None
    ring = S = None
    pending: List[Tuple[int, str, str, str, str]] = []

    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if command is not None:
            raise ParseError("nothing may follow the cmd line", lineno, _col(raw, stripped))
        if stripped.startswith("cmd ") or stripped == "cmd":
            command = (lineno, raw, stripped)
            continue
        m = _DEF.match(stripped)
        if m:
            kind, name, body = m.groups()
            if name in definitions or any(name == d[2] for d in pending):
                raise ParseError(f"{name!r} is defined twice", lineno, _col(raw, name, raw.find(kind) + len(kind)))
            pending.append((lineno, kind, name, body, raw))
            continue
        sg = re.match(r"semigroup\s*(?:=|\s)\s*(.*)$", stripped)
        if sg:
            if semigroup is not None:
                raise ParseError("semigroup given twice", lineno, 1)
            items = [s for s in sg.group(1).split(",") if s.strip()]
            if not items:
                raise ParseError("semigroup needs generators", lineno, _col(raw, "semigroup"))
            semigroup = tuple(_parse_int(s, "semigroup generator", lineno, _col(raw, s)) for s in items)
            if any(n <= 0 for n in semigroup):
                raise ParseError("semigroup generators must be positive", lineno, _col(raw, sg.group(1)))
            continue
        if "=" in stripped:
            key, value = (s.strip() for s in stripped.split("=", 1))
            vcol = _col(raw, value, raw.find("=") + 1) if value else len(raw) + 1
            if key == "p":
                if p is not None:
                    raise ParseError("p given twice", lineno, 1)
                p = _parse_int(value, "p", lineno, vcol)
                if not isprime(p):
                    raise ParseError("p must be prime", lineno, vcol)
                continue
            if key == "vars":
                names = [v.strip() for v in value.split(",")]
                for v in names:
                    if not _NAME.match(v):
                        raise ParseError(f"bad variable name {v!r}", lineno, _col(raw, v, raw.find("=")) if v else vcol)
                if len(set(names)) != len(names):
                    raise ParseError("repeated variable name", lineno, vcol)
                variables = tuple(names)
                continue
            if key == "order":
                order_text = value
                continue
            raise ParseError(f"unknown header {key!r}", lineno, _col(raw, key))
        raise ParseError(f"cannot parse line: {stripped!r}", lineno, _col(raw, stripped))

    if command is None:
        raise ParseError("missing cmd line", len(lines) or 1, 1)
    cmd_line, cmd_raw, cmd_text = command
    words = cmd_text.split()[1:]
    if not words:
        raise ParseError("cmd needs a command name", cmd_line, _col(cmd_raw, "cmd"))
    name = words[0]
    if name not in COMMANDS:
        raise ParseError(f"unknown command {name!r}", cmd_line, _col(cmd_raw, name))
    positional: List[str] = []
    params: Dict[str, str] = {}
    for w in words[1:]:
        if "=" in w:
            k, v = w.split("=", 1)
            if k in params:
                raise ParseError(f"option {k!r} given twice", cmd_line, _col(cmd_raw, w))
            params[k] = v
        else:
            positional.append(w)

    order_name = order or order_text or "grevlex"
    try:
        as_order(order_name)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from None

    if name in SEMIGROUP_COMMANDS:
        if semigroup is None:
            raise ParseError(f"{name} needs a semigroup header", cmd_line, _col(cmd_raw, name))
        S = NumericalSemigroup(semigroup)
    else:
        if p is None:
            raise ParseError("missing p= header", cmd_line, 1)
        if variables is None:
            raise ParseError("missing vars= header", cmd_line, 1)
        ring = PolynomialRing(p, variables, order=order_name)

    for lineno, kind, dname, body, raw in pending:
        body_col = _col(raw, body, raw.find("=") + 1) if body else len(raw) + 1
        if kind == "frac":
            if S is None:
                if semigroup is None:
                    raise ParseError("frac definitions need a semigroup header", lineno, 1)
                S = NumericalSemigroup(semigroup)
            value = _parse_frac_ideal(raw, body, S, lineno)
        else:
            if ring is None:
                if p is None or variables is None:
                    raise ParseError(f"{kind} definitions need p= and vars= headers", lineno, 1)
                ring = PolynomialRing(p, variables, order=order_name)
            pieces = body.split(",") if kind == "ideal" else [body]
            polys = []
            offset = raw.find("=") + 1
            for piece in pieces:
                start = raw.find(piece, offset)
                offset = start + len(piece)
                if not piece.strip():
                    raise ParseError("empty polynomial", lineno, start + 1)
                try:
                    polys.append(ring.parse(piece))
                except ParseError as exc:
                    raise ParseError(exc.message, lineno, start + (exc.column or 1)) from None
                except FrobkitError as exc:
                    raise ParseError(str(exc), lineno, start + 1) from None
            value = Ideal(ring, polys) if kind == "ideal" else polys[0]
        definitions[dname] = Definition(kind, dname, body.strip(), value, lineno)

    for w in positional:
        if w not in definitions and not (name == "frac-chain" and w in ("R", "M")):
            raise ParseError(f"undefined name {w!r}", cmd_line, _col(cmd_raw, w, len("cmd ")))

    return ProblemSpec(
        p=p,
        variables=variables,
        semigroup=semigroup,
        order=order_name,
        definitions=definitions,
        command=name,
        positional=positional,
        params=params,
        command_line=cmd_line,
        ring=ring,
        S=S,
        command_raw=cmd_raw,
    )


class _Args:
    """Typed access to command options, recording every value used."""

    def __init__(self, spec: ProblemSpec, emax_flag: Optional[int]):
        self.spec = spec
        self.emax_flag = emax_flag
        self.used: Dict[str, object] = {}

    def _where(self, key: str) -> Tuple[int, int]:
        raw = self.spec.command_raw
        at = re.search(rf"(?<!\S){re.escape(key)}=", raw) if key else None
        if at is None:
            at = re.search(r"\bcmd\b", raw)
        return self.spec.command_line, (at.start() + 1) if at else 1

    def integer(self, key: str, default=None, minimum: int = 0) -> int:
        raw = self.spec.params.get(key)
        if raw is None:
            if default is None:
                raise ParseError(f"missing option {key}=", *self._where(key))
            value = default
        else:
            try:
                value = int(raw)
            except ValueError:
                raise ParseError(f"option {key} must be an integer, got {raw!r}", *self._where(key)) from None
        if value < minimum:
            raise ParseError(f"option {key} must be at least {minimum}", *self._where(key))
        self.used[key] = value
        return value

    def emax(self) -> int:
        default = DEFAULT_EMAX if self.emax_flag is None else self.emax_flag
        return self.integer("emax", default, minimum=1)

    def rational(self, key: str) -> Fraction:
        raw = self.spec.params.get(key)
        if raw is None:
            raise ParseError(f"missing option {key}=", *self._where(key))
        try:
            value = as_exponent(raw)
        except ValueError:
            raise ParseError(f"malformed rational {raw!r} for {key}", *self._where(key)) from None
        self.used[key] = fraction_text(value)
        return value

    def target(self, kind: str = "ideal"):
        spec = self.spec
        if len(spec.positional) != 1:
            raise ParseError(f"{spec.command} takes exactly one named {kind}", *self._where(""))
        d = spec.definitions[spec.positional[0]]
        if kind == "poly":
            if d.kind == "poly":
                return d.value
            if d.kind == "ideal" and len(d.value.generators) == 1:
                return d.value.generators[0]
            raise ParseError(f"{d.name!r} is not a single polynomial", *self._where(""))
        if d.kind == "poly":
            return Ideal(spec.ring, [d.value])
        if d.kind != "ideal":
            raise ParseError(f"{d.name!r} is not an ideal", *self._where(""))
        return d.value


def _generators(J: Ideal) -> List[str]:
    return [format_polynomial(g) for g in J.reduced_generators()]


def run(spec: ProblemSpec, *, emax: Optional[int] = None) -> Tuple[dict, int]:
    """Execute the command of ``spec``; returns the report and the exit code."""
    args = _Args(spec, emax)
    cmd = spec.command
    status, code = "computed", EXIT_OK
    extra: Dict[str, object] = {}

    if cmd == "frob-root":
        a = args.target()
        e = args.integer("e", 1)
        result: object = _generators(frobenius_root(a, e))
    elif cmd == "chain":
        x = args.target("poly")
        rep = descending_chain(x, args.emax())
        result = rep.to_dict()
        if not rep.stabilized:
            status, code = "inconclusive", EXIT_INCONCLUSIVE
            extra["reason"] = "unstabilized"
    elif cmd == "delta-cert":
        x = args.target("poly")
        if "e" in spec.params:
            e = args.integer("e")
            cert = construct_delta(x, e)
            result = {
                "exists": cert is not None,
                "certificate": None if cert is None else cert.to_dict(),
                "verified": cert is not None and verify_delta(cert),
            }
        else:
            rep = generation_report(x, args.emax())
            result = rep.to_dict()
            if not rep.positive:
                status, code = "inconclusive", EXIT_INCONCLUSIVE
                extra["reason"] = rep.message
    elif cmd == "fpure-pair":
        x = args.target("poly")
        result = is_fpure_pair(x, args.integer("e", 1, minimum=1))
    elif cmd == "test-ideal":
        a = args.target()
        t = args.rational("t")
        try:
            info = test_ideal_info(a, t)
        except UnstabilizedError as exc:
            result = None
            status, code = "inconclusive", EXIT_INCONCLUSIVE
            extra["reason"] = str(exc)
        else:
            result = {
                "generators": _generators(info.ideal),
                "start_level": info.start_level,
                "stable_level": info.level,
                "heuristic_stabilization": info.heuristic,
                "skoda_shift": info.skoda_shift,
            }
    elif cmd == "nu":
        a = args.target()
        result = nu(a, args.integer("e", 1, minimum=1))
    elif cmd == "fpt":
        a = args.target()
        iv = fpt_interval(a, args.emax())
        result = {
            "lower": fraction_text(iv.lower),
            "upper": fraction_text(iv.upper),
            "nu": iv.nu,
            "e": iv.e,
            "width": fraction_text(iv.width),
        }
    elif cmd == "jumps":
        a = args.target()
        T = args.rational("T")
        result = jumping_exponents(a, T, args.emax()).to_dict()
    elif cmd == "degree-check":
        a = args.target()
        t = args.rational("t")
        r = args.integer("r", spec.ring.nvars)
        result = {"passed": degree_bound_check(a, t, r), "bound": fraction_text(t * a.max_degree() + r)}
    elif cmd == "ffrt-decompose":
        S = spec.S
        if "q" in spec.params:
            q = args.integer("q", minimum=1)
        else:
            if spec.p is None:
                raise ParseError("ffrt-decompose needs q= (or p= with e=)", spec.command_line, 1)
            args.used["p"] = spec.p
            q = spec.p ** args.integer("e", 1)
        result = ffrt_decompose(S, q).to_dict()
    elif cmd == "frac-chain":
        S = spec.S
        p = spec.p
        if p is None:
            p = args.integer("p", minimum=2)
            if not isprime(p):
                raise ParseError("p must be prime", spec.command_line, 1)
        args.used["p"] = p
        x = args.integer("x")
        if x not in S:
            raise ParseError(f"x={x} is not in the semigroup", spec.command_line, 1)
        if spec.positional and spec.positional[0] not in ("R", "M"):
            d = spec.definitions[spec.positional[0]]
            if d.kind != "frac":
                raise ParseError(f"{d.name!r} is not a fractional ideal", spec.command_line, 1)
            M = d.value
        elif spec.positional and spec.positional[0] == "M":
            M = FracIdeal.normalization(S)
        else:
            M = FracIdeal.ring(S)
        rep = chain_stabilize_frac(x, M, args.emax(), p)
        result = rep.to_dict()
        if not rep.stabilized:
            status, code = "inconclusive", EXIT_INCONCLUSIVE
            extra["reason"] = "unstabilized"
    else:  # pragma: no cover - parse_problem rejects unknown commands
        raise ParseError(f"unknown command {cmd!r}", spec.command_line, 1)

    doc = {
        "command": cmd,
        "input": spec.to_dict(),
        "parameters": dict(sorted(args.used.items())),
        "status": status,
        "result": result,
    }
    doc.update(extra)
    return doc, code


def _error_doc(exc: Exception, kind: str, spec: Optional[ProblemSpec]) -> dict:
    err = {"kind": kind, "message": getattr(exc, "message", None) or str(exc)}
    if isinstance(exc, ParseError):
        err["line"] = exc.line
        err["column"] = exc.column
    doc = {"status": "error", "error": err}
    if spec is not None:
        doc["input"] = spec.to_dict()
        doc["command"] = spec.command
    return doc


def execute(text: str, *, emax: Optional[int] = None, order: Optional[str] = None) -> Tuple[dict, int]:
    """Parse and run; never raises for input or resource problems."""
    spec = None
    try:
        spec = parse_problem(text, order=order)
        return run(spec, emax=emax)
    except ParseError as exc:
        return _error_doc(exc, "input", spec), EXIT_ERROR
    except (ResourceLimitError, ExponentOverflowError) as exc:
        return _error_doc(exc, "resource", spec), EXIT_ERROR
    except (FrobkitError, ValueError) as exc:
        return _error_doc(exc, "input", spec), EXIT_ERROR


def render(doc: dict, indent: Optional[int] = 2) -> str:
    return json.dumps(doc, indent=indent, sort_keys=True, ensure_ascii=False) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frobkit",
        description="Run one characteristic-p computation described by a problem file.",
    )
    parser.add_argument("problem", nargs="?", help="problem file (default: standard input)")
    parser.add_argument("--emax", type=int, help="horizon for commands that take emax= (overridden by the file)")
    parser.add_argument("--order", choices=("grevlex", "lex"), help="monomial order for Groebner computations")
    parser.add_argument("--json-indent", type=int, default=2, help="JSON indentation; negative for compact output")
    parser.add_argument("--spair-cap", type=int, help="S-pair cap (default: $FROBKIT_SPAIR_CAP or 10^6)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        if ns.problem is None or ns.problem == "-":
            text = sys.stdin.read()
        else:
            with open(ns.problem, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"frobkit: cannot read {ns.problem}: {exc.strerror}", file=sys.stderr)
        sys.stdout.write(render({"status": "error", "error": {"kind": "input", "message": str(exc)}}))
        return EXIT_ERROR

    overrides = {} if ns.spair_cap is None else {"spair_cap": ns.spair_cap}
    with limits(**overrides):
        doc, code = execute(text, emax=ns.emax, order=ns.order)
    if code == EXIT_ERROR:
        err = doc["error"]
        where = ""
        if err.get("line") is not None:
            where = f"line {err['line']}, column {err.get('column') or 1}: "
        print(f"frobkit: {where}{err['message']}", file=sys.stderr)
    elif code == EXIT_INCONCLUSIVE:
        print(f"frobkit: inconclusive: {doc.get('reason', '')}", file=sys.stderr)
    indent = ns.json_indent if ns.json_indent is not None and ns.json_indent >= 0 else None
    sys.stdout.write(render(doc, indent))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
