"""Reading and writing polynomials.

Grammar (whitespace ignored)::

    expr   := sign? term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := base ("^" "-"? uint)?
    base   := var | uint | "(" expr ")"
    var    := ("x" | "y" | "X" | "Y") uint

Lowercase variables give a cohomological polynomial, uppercase a K-mode
one.  Negative exponents are K-mode only and only on unit monomials
(``X1^-1``), which is how Laurent terms are written back out.
"""

from __future__ import annotations

import json
import re
from typing import Any

from ..errors import DomainError, FormatError, PolySyntaxError
from .polynomial import COHOMOLOGICAL, K, MODES, Monomial, Polynomial, trim

__all__ = ["parse_poly", "render", "to_json", "from_json", "MAX_EXPONENT"]

MAX_EXPONENT = 10_000

_TOKEN = re.compile(r"\s*(?:(?P<var>[xyXY])(?P<idx>\d+)|(?P<int>\d+)|(?P<op>[-+*^()]))")


class _Parser:
    def __init__(self, text: str, mode: str | None):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        self.mode = mode
        self.pos = 0
        self._tokenize()

    def _tokenize(self) -> None:
        text, at = self.text, 0
        while at < len(text):
            if text[at:].strip() == "":
                break
            m = _TOKEN.match(text, at)
            if not m:
                col = at + len(text[at:]) - len(text[at:].lstrip())
                raise PolySyntaxError(f"unexpected character {text[col]!r}", col, text)
            start = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
            if m.group("var"):
                self.tokens.append(("var", m.group("var") + m.group("idx"), start))
            elif m.group("int") is not None:
                self.tokens.append(("int", m.group("int"), start))
            else:
                self.tokens.append(("op", m.group("op"), start))
            at = m.end()
        self.tokens.append(("end", "", len(text)))

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value: str) -> None:
        kind, val, at = self.take()
        if kind != "op" or val != value:
            raise PolySyntaxError(f"expected {value!r}", at, self.text)

    def parse(self) -> Polynomial:
        result = self.expr()
        kind, val, at = self.peek()
        if kind != "end":
            raise PolySyntaxError(f"unexpected {val!r}", at, self.text)
        return result

    def _const(self, c: int) -> Polynomial:
        return Polynomial.constant(c, self.mode or COHOMOLOGICAL)

    def expr(self) -> Polynomial:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        result = self.term()
        if sign < 0:
            result = -result
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                result = self._combine(result, rhs, val)
            else:
                return result

    def _combine(self, a: Polynomial, b: Polynomial, op: str) -> Polynomial:
        a, b = self._align(a), self._align(b)
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        return a * b

    def _align(self, p: Polynomial) -> Polynomial:
        # constants parsed before the first variable are re-tagged once the mode is known
        if self.mode and p.mode != self.mode:
            return Polynomial(p.terms, self.mode)
        return p

    def term(self) -> Polynomial:
        result = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                result = self._combine(result, self.factor(), "*")
            else:
                return result

    def factor(self) -> Polynomial:
        base = self.base()
        kind, val, _ = self.peek()
        if not (kind == "op" and val == "^"):
            return base
        self.take()
        negative = False
        kind, val, at = self.peek()
        if kind == "op" and val == "-":
            self.take()
            negative = True
        kind, val, at = self.take()
        if kind != "int":
            raise PolySyntaxError("expected an exponent", at, self.text)
        e = int(val)
        if e > MAX_EXPONENT:
            raise PolySyntaxError(f"exponent overflow ({e} > {MAX_EXPONENT})", at, self.text)
        if negative:
            if self.mode != K:
                raise PolySyntaxError("negative exponents need K-mode (uppercase) variables", at, self.text)
            try:
                return self._align(base) ** (-e)
            except DomainError:
                raise PolySyntaxError("negative exponent on a non-monomial", at, self.text) from None
        return self._align(base) ** e

    def base(self) -> Polynomial:
        kind, val, at = self.take()
        if kind == "int":
            return self._const(int(val))
        if kind == "var":
            mode = K if val[0].isupper() else COHOMOLOGICAL
            if self.mode is None:
                self.mode = mode
            elif self.mode != mode:
                raise PolySyntaxError("mixed lowercase and uppercase variables", at, self.text)
            idx = int(val[1:])
            if idx < 1:
                raise PolySyntaxError("variable indices start at 1", at, self.text)
            if val[0] in "xX":
                return Polynomial.x(idx, mode)
            return Polynomial.y(idx, mode)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise PolySyntaxError("unexpected end of input", at, self.text)
        raise PolySyntaxError(f"unexpected {val!r}", at, self.text)


def parse_poly(text: str, mode: str | None = None) -> Polynomial:
    """Parse an expression; ``mode`` pins the ring for variable-free input."""
    if mode is not None and mode not in MODES:
        raise DomainError(f"unknown mode {mode!r}")
    parser = _Parser(text, None)
    result = parser.parse()
    if mode is not None and parser.mode is not None and parser.mode != mode:
        raise PolySyntaxError(f"expression is {parser.mode}, expected {mode}", 0, text)
    final = mode or parser.mode or COHOMOLOGICAL
    if result.mode != final:
        result = Polynomial(result.terms, final)
    return result


def _monomial_text(m: Monomial, mode: str, latex: bool) -> list[str]:
    xs, ys = m
    names = ("X", "Y") if mode == K else ("x", "y")
    parts = []
    for name, exps in zip(names, (xs, ys)):
        for k, e in enumerate(exps, start=1):
            if not e:
                continue
            if latex:
                parts.append(f"{name}_{{{k}}}" + ("" if e == 1 else f"^{{{e}}}"))
            else:
                parts.append(f"{name}{k}" + ("" if e == 1 else f"^{e}"))
    return parts


def _render_terms(f: Polynomial, latex: bool) -> str:
    if not f:
        return "0"
    out = []
    for k, (m, c) in enumerate(f.sorted_terms()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        parts = _monomial_text(m, f.mode, latex)
        if not parts:
            body = str(mag)
        elif mag == 1:
            body = (" " if latex else "*").join(parts)
        else:
            body = (" " if latex else "*").join([str(mag)] + parts)
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def to_json(f: Polynomial) -> dict[str, Any]:
    terms = []
    for (xs, ys), c in f.sorted_terms():
        terms.append({
            "coeff": str(c),
            "x": {str(k): e for k, e in enumerate(xs, start=1) if e},
            "y": {str(k): e for k, e in enumerate(ys, start=1) if e},
        })
    return {"mode": f.mode, "terms": terms}


def from_json(data: dict[str, Any] | str) -> Polynomial:
    if isinstance(data, str):
        data = json.loads(data)
    mode = data.get("mode")
    if mode not in MODES:
        raise FormatError(f"unknown polynomial mode {mode!r}")
    terms: dict[Monomial, int] = {}
    for t in data.get("terms", []):
        exps = []
        for fam in ("x", "y"):
            d = {int(k): int(v) for k, v in t.get(fam, {}).items()}
            size = max(d, default=0)
            exps.append(trim(d.get(k, 0) for k in range(1, size + 1)))
        m = (exps[0], exps[1])
        terms[m] = terms.get(m, 0) + int(t["coeff"])
    return Polynomial(terms, mode)


def render(f: Polynomial, format: str = "text") -> str:
    """Deterministic rendering in "text", "latex" or "json"."""
    if format == "text":
        return _render_terms(f, latex=False)
    if format == "latex":
        return _render_terms(f, latex=True)
    if format == "json":
        return json.dumps(to_json(f), sort_keys=False)
    raise DomainError(f"unknown format {format!r}")
