"""Text and JSON forms of angles, coefficients, distributions and reports.

Angles are written ``"p/q"`` in turns.  Input also accepts ``"p/q pi"``
(radians as a multiple of pi).  Coefficients use a small expression grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := rational | 'z(' N ')' ['^' k] | 'i'
    rational := integer ['/' integer]

where ``z(N)`` is the primitive root exp(2 pi i / N) and ``i`` is ``z(4)``.
Distribution files look like::

    {"field_order": 8,
     "terms": [{"angle": "1/8", "order": 0, "coeff": "3/2*z(8)^3 - 1"}]}

with terms sorted by (angle, order) on output, and all output JSON has
sorted keys.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from typing import Any, Optional

from .circle import Arc
from .cyclotomic import CycloNumber, root_of_unity
from .distribution import Distribution
from .errors import InputError

__all__ = [
    "MAX_ORDER",
    "dist_from_json",
    "dist_to_json",
    "dumps",
    "format_angle",
    "format_pi",
    "load_instance",
    "parse_angle",
    "parse_cyclo",
    "render_text",
    "report_to_json",
]

MAX_ORDER = 8

_ANGLE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*(pi|π)?\s*$")
_TOKEN = re.compile(r"\s*(?:(\d+)|(z\(\s*\d+\s*\))|(i)\b|([-+*/^]))")


def format_angle(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def format_pi(x: Fraction) -> str:
    """A turn value as a multiple of pi, e.g. 1/8 -> 'π/4'."""
    r = 2 * Fraction(x)
    if r == 0:
        return "0"
    sign = "-" if r < 0 else ""
    r = abs(r)
    num = "" if r.numerator == 1 else str(r.numerator)
    den = "" if r.denominator == 1 else f"/{r.denominator}"
    return f"{sign}{num}π{den}"


def parse_angle(text: str, field: str = "angle") -> Fraction:
    """Parse ``"p/q"`` (turns) or ``"p/q pi"`` (radians); returns turns, unreduced."""
    if not isinstance(text, str):
        raise InputError(f"{field}: expected a string like \"1/8\", got {text!r}")
    m = _ANGLE.match(text)
    if not m:
        raise InputError(f"{field}: malformed angle {text!r}")
    num, den, pi = m.groups()
    den = int(den) if den is not None else 1
    if den == 0:
        raise InputError(f"{field}: zero denominator in angle {text!r}")
    value = Fraction(int(num), den)
    return value / 2 if pi else value


def parse_cyclo(text: str, field: str = "coeff") -> CycloNumber:
    """Parse a coefficient expression such as ``"3/2*z(8)^3 - 1/7*z(8) + 2"``."""
    if not isinstance(text, (str, int)):
        raise InputError(f"{field}: expected an expression string, got {text!r}")
    text = str(text)
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise InputError(f"{field}: unexpected character at column {pos + 1} in {text!r}")
        num, zeta, imag, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif zeta is not None:
            tokens.append(("zeta", int(zeta[2:-1])))
        elif imag is not None:
            tokens.append(("zeta", 4))
        else:
            tokens.append(("op", op))
        pos = m.end()
    if not tokens:
        raise InputError(f"{field}: empty expression")

    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None)

    def take():
        nonlocal i
        tok = peek()
        i += 1
        return tok

    def factor():
        kind, val = take()
        if kind == "num":
            if peek() == ("op", "/"):
                take()
                k2, den = take()
                if k2 != "num":
                    raise InputError(f"{field}: expected denominator in {text!r}")
                if den == 0:
                    raise InputError(f"{field}: zero denominator in {text!r}")
                return CycloNumber.coerce(Fraction(val, den))
            return CycloNumber.coerce(val)
        if kind == "zeta":
            if val < 1:
                raise InputError(f"{field}: root order must be positive in {text!r}")
            exp = 1
            if peek() == ("op", "^"):
                take()
                sign = 1
                if peek() == ("op", "-"):
                    take()
                    sign = -1
                k2, exp = take()
                if k2 != "num":
                    raise InputError(f"{field}: expected exponent in {text!r}")
                exp *= sign
            return root_of_unity(exp, val)
        raise InputError(f"{field}: unexpected token {val!r} in {text!r}")

    def term():
        value = factor()
        while peek() == ("op", "*"):
            take()
            value = value * factor()
        return value

    sign = 1
    if peek() in (("op", "-"), ("op", "+")):
        sign = -1 if take()[1] == "-" else 1
    total = term() * sign
    while i < len(tokens):
        kind, op = take()
        if kind != "op" or op not in "+-":
            raise InputError(f"{field}: expected + or - in {text!r}")
        t = term()
        total = total + t if op == "+" else total - t
    return total


# -- distributions ------------------------------------------------------------


def dist_to_json(f: Distribution) -> dict:
    return {
        "field_order": f.field_order,
        "terms": [{"angle": format_angle(x), "order": p, "coeff": str(c)}
                  for (x, p), c in f.items()],
    }


def dist_from_json(obj: Any, field: str = "distribution",
                   max_order: int = MAX_ORDER) -> Distribution:
    if not isinstance(obj, dict):
        raise InputError(f"{field}: expected an object")
    unknown = set(obj) - {"field_order", "terms"}
    if unknown:
        raise InputError(f"{field}: unknown keys {sorted(unknown)}")
    order = obj.get("field_order", 1)
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise InputError(f"{field}.field_order: expected a positive integer, got {order!r}")
    terms = obj.get("terms")
    if not isinstance(terms, list):
        raise InputError(f"{field}.terms: expected a list")
    items = []
    for k, t in enumerate(terms):
        where = f"{field}.terms[{k}]"
        if not isinstance(t, dict):
            raise InputError(f"{where}: expected an object")
        x = parse_angle(t.get("angle"), f"{where}.angle")
        p = t.get("order", 0)
        if not isinstance(p, int) or isinstance(p, bool) or not 0 <= p <= max_order:
            raise InputError(f"{where}.order: expected an integer in [0, {max_order}], got {p!r}")
        c = parse_cyclo(t.get("coeff", "1"), f"{where}.coeff")
        if order % c.order:
            try:
                c = c.demote(math.gcd(order, c.order))
            except ValueError:
                raise InputError(f"{where}.coeff: value does not lie in Q(z({order}))") from None
        items.append(((x, p), c))
    return Distribution(items, field_order=order)


def _locate(text: str, value) -> str:
    needle = json.dumps(value)
    pos = text.find(needle)
    if pos < 0:
        return ""
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return f" (line {line}, column {col})"


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None


def load_instance(text: str, source: str = "<input>") -> dict:
    """Parse an instance file: one or two named distributions plus parameters.

    A bare distribution object is accepted as ``{"f": ...}``.  Returns a dict
    with keys ``f``, optional ``g``, and any of ``n``, ``p``, ``mode``.
    """
    obj = loads(text, source)
    if not isinstance(obj, dict):
        raise InputError(f"{source}: expected a JSON object")
    if "terms" in obj:
        obj = {"f": obj}
    out: dict = {}
    try:
        for name in ("f", "g"):
            if name in obj:
                out[name] = dist_from_json(obj[name], name)
        for key in ("n", "p"):
            if key in obj:
                v = obj[key]
                if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                    raise InputError(f"{key}: expected a positive integer, got {v!r}")
                out[key] = v
        if "mode" in obj:
            if obj["mode"] not in ("pair", "reflection", "power"):
                raise InputError(f"mode: unknown mode {obj['mode']!r}")
            out["mode"] = obj["mode"]
    except InputError as exc:
        bad = re.search(r"'(.*)'|\"(.*)\"", str(exc))
        hint = _locate(text, bad.group(1) or bad.group(2)) if bad else ""
        raise InputError(f"{source}: {exc}{hint}") from None
    if "f" not in out:
        raise InputError(f"{source}: no distribution 'f' in instance")
    return out


def instance_to_json(**items) -> dict:
    out = {}
    for k, v in items.items():
        if isinstance(v, Distribution):
            out[k] = dist_to_json(v)
        elif v is not None:
            out[k] = v
    return out


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- reports ------------------------------------------------------------------


def _arc(a: Optional[Arc], open_: bool = False) -> Optional[dict]:
    if a is None:
        return None
    out = {"inf": format_angle(a.inf), "sup": format_angle(a.sup)}
    if open_:
        out["open"] = True
    return out


def _q(x) -> Optional[str]:
    return None if x is None else format_angle(x)


def _c(z) -> Optional[str]:
    return None if z is None else str(z)


def report_to_json(result, **extra) -> dict:
    """JSON mirror of an analyzer result (rationals as strings)."""
    from .titchmarsh import CorollaryVerdict, Decomposition, TitchmarshReport

    if isinstance(result, CorollaryVerdict):
        out = report_to_json(result.report)
        out.update(kind="corollary_n2", lhs=result.lhs, rhs=result.rhs, agree=result.agree,
                   sign=result.alpha, lambda_rhs=_q(result.lam_rhs),
                   if_direction=result.if_direction)
    elif isinstance(result, TitchmarshReport):
        out = {
            "kind": "pair", "n": result.n,
            "I": _arc(result.I), "J": _arc(result.J), "K": _arc(result.K),
            "annihilated": result.annihilated,
            "lambda": _q(result.lam), "lambda_max": _q(result.lam_max), "rho": _q(result.rho),
            "alpha": _c(result.alpha), "beta": _c(result.beta),
            "alpha_sup": _c(result.alpha_sup), "beta_sup": _c(result.beta_sup),
            "certificates": [
                {"name": c.name, "subject": c.subject, "root": str(c.root),
                 "window": _arc(c.window, open_=True), "claim": c.claim,
                 "value": _q(c.value), "verified": c.verified}
                for c in result.certificates],
        }
    elif isinstance(result, Decomposition):
        out = {"kind": "reflection", "applicable": True, "I": _arc(result.I),
               "mu": dist_to_json(result.mu), "nu": dist_to_json(result.nu),
               "alpha_case": result.alpha_case}
    elif result is None:
        out = {"kind": "reflection", "applicable": False}
    elif isinstance(result, Arc):
        out = {"kind": "power", "K": _arc(result)}
    else:
        raise TypeError(f"cannot serialize {type(result).__name__}")
    out.update(extra)
    return out


def _fmt_turns(s: Optional[str]) -> str:
    if s is None:
        return "-"
    return f"{s} turn ({format_pi(Fraction(s))})"


def _fmt_arc(a: Optional[dict]) -> str:
    if a is None:
        return "-"
    lo, hi = Fraction(a["inf"]), Fraction(a["sup"])
    br = ("(", ")") if a.get("open") else ("[", "]")
    return (f"{br[0]}{format_angle(lo)}, {format_angle(hi)}{br[1]} turns"
            f"  = {br[0]}{format_pi(lo)}, {format_pi(hi)}{br[1]}")


def render_text(report: dict) -> str:
    """Human-readable rendering of :func:`report_to_json` output, in turns and pi."""
    lines = [f"kind: {report['kind']}"]
    for key in ("n", "p"):
        if key in report:
            lines.append(f"{key}: {report[key]}")
    for key in ("I", "J", "pI", "K"):
        if key in report:
            lines.append(f"{key}: {_fmt_arc(report[key])}")
    if report["kind"] in ("pair", "corollary_n2"):
        if report["annihilated"]:
            lines.append("f*g = 0 (annihilation: lambda and rho undefined)")
        else:
            lines.append(f"lambda: {_fmt_turns(report['lambda'])}")
            lines.append(f"rho: {_fmt_turns(report['rho'])}")
        for key in ("alpha", "beta", "alpha_sup", "beta_sup"):
            if report.get(key) is not None:
                lines.append(f"{key}: {report[key]}")
        for c in report["certificates"]:
            what = c["claim"] if c["value"] is None else f"{c['claim']} = {c['value']}"
            lines.append(f"  [{'ok' if c['verified'] else 'FAIL'}] {c['name']}: "
                         f"sum root^k S_(k/n) {c['subject']} on {_fmt_arc(c['window'])}: {what}")
    if report["kind"] == "corollary_n2":
        lines.append(f"lambda > 0: {report['lhs']}; symmetry side: {report['rhs']}; "
                     f"agree: {report['agree']}")
    if report["kind"] == "reflection":
        if not report["applicable"]:
            lines.append("supp f*f# is not inside {0, 1/2}: not applicable")
        else:
            for key in ("mu", "nu"):
                terms = report[key]["terms"]
                body = " + ".join(f"({t['coeff']})*delta^({t['order']})[{t['angle']}]"
                                  for t in terms) or "0"
                lines.append(f"{key}: {body}")
            lines.append(f"alpha case: {report['alpha_case']}")
    for v in report.get("oracle", []):
        status = "pass" if v["passed"] else "FAIL"
        lines.append(f"oracle {v['name']}: {status}" + (f" ({v['detail']})" if v["detail"] else ""))
    return "\n".join(lines) + "\n"

