"""Expression front-end: recursive-descent parser and canonical printer.

Grammar::

    expr   := ('+'|'-')? term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' int)?
    base   := rational | 'i' | ident | '(' expr ')'

Negative exponents are accepted only on invertible variables (or monomial bases
built from them).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exact import GaussianRational, format_scalar
from .poly import LaurentPoly, RingError, RingSpec, grevlex_key


class PolySyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.position = position
        self.text = text


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|(\+)|(-)|(\()|(\))|(/)|(±))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError("unexpected character", pos, text)
        start = m.start(m.lastindex)
        kind = ("int", "ident", "^", "*", "+", "-", "(", ")", "/", "±")[m.lastindex - 1]
        out.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str, ring: RingSpec):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self, kind: str):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            raise PolySyntaxError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2], self.text)
        self.i += 1
        return tok

    def error(self, message: str):
        raise PolySyntaxError(message, self.tokens[self.i][2], self.text)

    def expr(self) -> LaurentPoly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take(self.peek())[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in ("+", "-"):
            op = self.take(self.peek())[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> LaurentPoly:
        acc = self.factor()
        while self.peek() == "*":
            self.take("*")
            acc = acc * self.factor()
        return acc

    def factor(self) -> LaurentPoly:
        base = self.base()
        if self.peek() == "^":
            self.take("^")
            neg = False
            if self.peek() == "-":
                self.take("-")
                neg = True
            elif self.peek() == "(":
                # tolerate x^(-2)
                self.take("(")
                if self.peek() == "-":
                    self.take("-")
                    neg = True
                k = int(self.take("int")[1])
                self.take(")")
                return self._power(base, -k if neg else k)
            pos = self.tokens[self.i][2]
            k = int(self.take("int")[1])
            try:
                return base ** (-k if neg else k)
            except RingError as exc:
                raise PolySyntaxError(str(exc), pos, self.text) from None
        return base

    def _power(self, base: LaurentPoly, k: int) -> LaurentPoly:
        try:
            return base ** k
        except RingError as exc:
            raise PolySyntaxError(str(exc), self.tokens[self.i][2], self.text) from None

    def base(self) -> LaurentPoly:
        kind, value, pos = self.tokens[self.i]
        if kind == "int":
            self.i += 1
            q = Fraction(int(value))
            if self.peek() == "/":
                self.take("/")
                den = int(self.take("int")[1])
                if den == 0:
                    raise PolySyntaxError("zero denominator", pos, self.text)
                q = Fraction(int(value), den)
            return LaurentPoly.constant(self.ring, q)
        if kind == "ident":
            self.i += 1
            if value == "i":
                return LaurentPoly.constant(self.ring, GaussianRational(0, 1))
            if value not in self.ring.names:
                raise PolySyntaxError(f"unknown variable {value!r}", pos, self.text)
            return self.ring.var(value)
        if kind == "(":
            self.take("(")
            e = self.expr()
            self.take(")")
            return e
        self.error(f"unexpected token {value or 'end of input'!r}")


def parse_poly(text: str, ring: RingSpec) -> LaurentPoly:
    """Parse ``text`` into a Laurent polynomial of ``ring``."""
    p = _Parser(text, ring)
    result = p.expr()
    if p.peek() != "end":
        p.error(f"trailing input {p.tokens[p.i][1]!r}")
    return result


def _monomial_text(ring: RingSpec, e) -> str:
    parts = []
    for name, k in zip(ring.names, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def print_poly(p: LaurentPoly) -> str:
    """Canonical text: descending grevlex, coefficients left, explicit ``*`` and ``^``."""
    if not p.terms:
        return "0"
    pieces = []
    for e, c in sorted(p.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True):
        mono = _monomial_text(p.ring, e)
        if c.is_real():
            q = c.re
            sign = "-" if q < 0 else "+"
            q = abs(q)
            if mono:
                body = mono if q == 1 else f"{format_scalar(GaussianRational(q))}*{mono}"
            else:
                body = format_scalar(GaussianRational(q))
        elif c.re == 0:
            sign = "-" if c.im < 0 else "+"
            mag = GaussianRational(0, abs(c.im))
            body = format_scalar(mag) + (f"*{mono}" if mono else "")
        else:
            sign = "+"
            body = format_scalar(c) + (f"*{mono}" if mono else "")
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
