"""Canonical text form for series and polynomials, and a parser for it.

Syntax: integer literals, generator names (x1..xd by default), ``h``,
``+ - * / ^`` and parentheses.  A parenthesised factor or a number may be
juxtaposed with what follows, so ``(1/2)h*x3`` and ``2h`` are valid.
Division is only by nonzero rational constants.  Whitespace is ignored.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .algebra import ExtElement, NCPoly, SymPoly
from .series import DEFAULT_TRUNC, HSeries


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int, line: int = 1):
        self.text = text
        self.pos = pos
        self.line = line
        self.column = pos + 1
        super().__init__(f"line {line}, column {self.column}: {message}")


def default_names(dim: int) -> list[str]:
    return [f"x{i + 1}" for i in range(dim)]


# -- printing ------------------------------------------------------------

def _rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"({c.numerator}/{c.denominator})"


def _hpow(k: int) -> str:
    return "" if k == 0 else ("h" if k == 1 else f"h^{k}")


def format_series(s: HSeries) -> str:
    """Series alone, e.g. ``1 - h + (1/2)h^2``."""
    parts = []
    for k, c in enumerate(s.coeffs):
        if not c:
            continue
        a = abs(c)
        body = _hpow(k)
        if a != 1 or not body:
            body = _rat(a) + body
        parts.append(("-" if c < 0 else "+", body))
    return _join(parts) if parts else "0"


def _join(parts: list[tuple[str, str]]) -> str:
    out = []
    for n, (sign, body) in enumerate(parts):
        if n == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def _term(c: HSeries, body: str) -> tuple[str, str]:
    """Sign and text of ``c * body`` where body is a monomial or word string."""
    support = c.support()
    if len(support) == 1:
        k = support[0]
        r = c[k]
        a = abs(r)
        coef = _hpow(k)
        if a != 1 or (not coef and not body):
            coef = _rat(a) + coef
        if coef and body:
            text = f"{coef}*{body}"
        else:
            text = coef or body
        return ("-" if r < 0 else "+", text)
    inner = format_series(c)
    return ("+", f"({inner})*{body}" if body else f"({inner})")


def monomial_str(m: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(names[i])
        elif e > 1:
            parts.append(f"{names[i]}^{e}")
    return "*".join(parts)


def sympoly_order(m: Sequence[int]):
    return (-sum(m), tuple(-e for e in m))


def format_sympoly(f: SymPoly, names: Sequence[str] | None = None) -> str:
    names = names or default_names(f.dim)
    parts = [_term(c, monomial_str(m, names)) for m, c in sorted(f.items(), key=lambda mc: sympoly_order(mc[0]))]
    return _join(parts) if parts else "0"


def letter_str(x, names: Sequence[str] | None) -> str:
    if isinstance(x, tuple):
        idx = [i + 1 for i in x]
        sep = "" if all(i < 10 for i in idx) else ","
        return "x_{" + sep.join(str(i) for i in idx) + "}"
    if names is None:
        return f"x{x + 1}"
    return names[x]


def word_str(w: Sequence, names: Sequence[str] | None = None) -> str:
    return "*".join(letter_str(x, names) for x in w)


def ncpoly_order(w):
    return (-len(w), w)


def format_ncpoly(p: NCPoly, names: Sequence[str] | None = None) -> str:
    parts = [_term(c, word_str(w, names)) for w, c in sorted(p.items(), key=lambda wc: ncpoly_order(wc[0]))]
    return _join(parts) if parts else "0"


def format_ext(e: ExtElement) -> str:
    def basis(I):
        return "^".join(f"e{i + 1}" for i in I)

    parts = [_term(c, basis(I)) for I, c in sorted(e.items(), key=lambda ic: (len(ic[0]), ic[0]))]
    return _join(parts) if parts else "0"


def _content(p: NCPoly) -> Fraction:
    """Positive rational c with p / c integral and primitive (h-free p only)."""
    from math import gcd

    nums = [c[0] for c in p.terms.values()]
    den = 1
    for q in nums:
        den = den * q.denominator // gcd(den, q.denominator)
    g = 0
    for q in nums:
        g = gcd(g, abs(int(q * den)))
    return Fraction(g, den)


def format_relation(rel: NCPoly, i: int, j: int, names: Sequence[str] | None = None,
                    modulus: int | None = None) -> str:
    """Print ``x_i*x_j - x_j*x_i`` followed by the remaining terms.

    When the remainder is h times an h-free polynomial it is printed in
    factored form, e.g. ``- (h/2)*(x1*x2 + x2*x1)``.
    """
    comm = NCPoly.word((i, j), 1, rel.trunc) - NCPoly.word((j, i), 1, rel.trunc)
    rest = rel - comm
    head = f"{word_str((i, j), names)} - {word_str((j, i), names)}"
    if not rest.is_zero():
        if all(c.support() == [1] for c in rest.terms.values()):
            q = rest.h_coefficient(1)
            ordered = sorted(q.items(), key=lambda wc: ncpoly_order(wc[0]))
            sign = "-" if ordered[0][1][0] < 0 else "+"
            if sign == "-":
                q = -q
            c = _content(q)
            q = q.scale(1 / c)
            if c == 1:
                hc = "h"
            elif c.denominator == 1:
                hc = f"{c.numerator}*h"
            elif c.numerator == 1:
                hc = f"(h/{c.denominator})"
            else:
                hc = f"({c.numerator}*h/{c.denominator})"
            body = format_ncpoly(q.at_h0(), names)
            if q.terms == {(): q.coeff(())}:
                tail = hc
            elif len(q) > 1:
                tail = f"{hc}*({body})"
            else:
                tail = f"{hc}*{body}"
            head += f" {sign} {tail}"
        else:
            text = format_ncpoly(rest, names)
            if text.startswith("-"):
                head += " - " + text[1:]
            else:
                head += " + " + text
    if modulus is not None:
        head += f"  (mod h^{modulus})"
    return head


# -- parsing -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")
_MOD_SUFFIX = re.compile(r"\s*\(mod\s+h\^\d+\)\s*$")


class _Parser:
    def __init__(self, text: str, names: Sequence[str], trunc: int, line: int):
        self.text = text
        self.names = {n: i for i, n in enumerate(names)}
        if "h" in self.names:
            raise ValueError("'h' is reserved for the deformation parameter")
        self.trunc = trunc
        self.line = line
        self.tokens: list[tuple[str, str, int]] = []
        for m in _TOKEN.finditer(text):
            if m.group(1):
                self.tokens.append(("num", m.group(1), m.start(1)))
            elif m.group(2):
                self.tokens.append(("id", m.group(2), m.start(2)))
            elif m.group(3):
                ch = m.group(3)
                if ch not in "+-*/^()":
                    raise self.error(f"unexpected character {ch!r}", m.start(3))
                self.tokens.append(("op", ch, m.start(3)))
        self.i = 0

    def error(self, msg: str, pos: int | None = None) -> ParseError:
        if pos is None:
            pos = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        return ParseError(msg, self.text, pos, self.line)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, value: str | None = None):
        tok = self.peek()
        if tok is None or (value is not None and tok[1] != value):
            raise self.error(f"expected {value!r}" if value else "unexpected end of input")
        self.i += 1
        return tok

    def parse(self) -> NCPoly:
        if not self.tokens:
            raise self.error("empty expression", 0)
        out = self.expr()
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return out

    def expr(self) -> NCPoly:
        sign = 1
        tok = self.peek()
        if tok and tok[1] in "+-" and tok[0] == "op":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        out = self.term().scale(sign)
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "+-":
            self.take()
            t = self.term()
            out = out + t if tok[1] == "+" else out - t
        return out

    def term(self) -> NCPoly:
        out = self.power()
        while (tok := self.peek()) is not None:
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                out = out * self.power()
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                pos = self.peek()[2] if self.peek() else len(self.text)
                d = self.power()
                if set(d.terms) - {()} or d.is_zero() or not d.coeff(()).is_constant():
                    raise self.error("division only by nonzero rational constants", pos)
                out = out.scale(1 / d.coeff(())[0])
            elif tok[0] in ("num", "id") or tok[1] == "(":
                out = out * self.power()
            else:
                break
        return out

    def power(self) -> NCPoly:
        base = self.atom()
        tok = self.peek()
        if tok and tok[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                raise self.error("exponent must be a non-negative integer", e[2])
            return base ** int(e[1])
        return base

    def atom(self) -> NCPoly:
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            return NCPoly.const(int(val), self.trunc)
        if kind == "id":
            if val == "h":
                return NCPoly.const(HSeries.h(1, 1, self.trunc), self.trunc)
            if val not in self.names:
                raise self.error(f"unknown generator {val!r}", pos)
            return NCPoly.word((self.names[val],), 1, self.trunc)
        if val == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if val == "-":
            return -self.power()
        raise self.error(f"unexpected {val!r}", pos)


def parse_expression(text: str, names: Sequence[str], trunc: int = DEFAULT_TRUNC,
                     line: int = 1) -> NCPoly:
    """Parse into T(V) over Q[h]/h^(trunc+1); a trailing ``(mod h^k)`` note is ignored."""
    text = _MOD_SUFFIX.sub("", text)
    return _Parser(text, names, trunc, line).parse()


def parse_sympoly(text: str, names: Sequence[str], trunc: int = DEFAULT_TRUNC) -> SymPoly:
    from .algebra import abelianize

    return abelianize(parse_expression(text, names, trunc), len(names))
