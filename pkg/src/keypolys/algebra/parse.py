"""Text syntax for tower elements.

Grammar (``^`` binds tighter than unary minus, as in ``-y^2``)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT | NAME | "(" expr ")"

Names are the tower variables; operands at different levels are lifted to
the higher one.  Division is allowed by any nonzero field element, which is
how ``2/3*z^5`` or ``(y^2+z)^2/z^11`` are written.
"""

from __future__ import annotations

import re

from ..errors import DomainMismatch, ParseError
from .poly import Poly
from .ratfunc import RatFunc

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, text, tower):
        self.text = text
        self.tower = tower
        self.toks = _tokenize(text)
        self.i = 0
        self.max_level = tower.depth + (1 if tower.outer is not None else 0)
        self.names = {n: k + 1 for k, n in enumerate(tower.names)}
        if tower.outer_var:
            self.names[tower.outer_var] = tower.depth + 1

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ParseError(f"expected {op!r} in {self.text!r}, got {tok[1]!r}")

    # values are (level, element) pairs
    def _align(self, a, b):
        la, lb = a[0], b[0]
        lv = max(la, lb)
        return lv, self.tower.lift(a[1], lv), self.tower.lift(b[1], lv)

    def parse(self):
        v = self.expr()
        if self.peek()[0] != "end":
            raise ParseError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            lv, a, b = self._align(v, w)
            v = (lv, a + b if op == "+" else a - b)
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            w = self.unary()
            if op == "*":
                lv, a, b = self._align(v, w)
                v = (lv, a * b)
            else:
                v = self._divide(v, w)
        return v

    def _divide(self, v, w):
        tower = self.tower
        lw, b = w
        if lw == tower.depth + 1:
            if b.degree() > 0:
                raise ParseError(f"division by a non-constant polynomial in {self.text!r}")
            lw, b = tower.depth, b.constant_coeff()
        if lw == 0 and tower.depth:
            lw, b = 1, tower.lift(b, 1)
        if lw == 0:
            g = tower.ground
            b = g.from_int(b)
            if g.iszero(b):
                raise ParseError("division by zero")
            return self._mul(v, (0, g.inv(b)))
        if not b:
            raise ParseError("division by zero")
        return self._mul(v, (lw, b.inverse()))

    def _mul(self, v, w):
        lv, a, b = self._align(v, w)
        return (lv, a * b)

    def unary(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            lv, a = self.unary()
            return (lv, -a if lv else self.tower.ground.neg(self.tower.ground.from_int(a)))
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            tok = self.take()
            if tok[0] != "int":
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            n = tok[1]
            lv, a = v
            if lv == 0:
                g = self.tower.ground
                a = g.from_int(a)
                return (0, g.pow(a, -n if neg else n))
            if neg:
                if lv == self.tower.depth + 1:
                    raise ParseError("negative power of a polynomial")
                return (lv, a ** (-n))
            return (lv, a ** n)
        return v

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return (0, self.tower.ground.from_int(val))
        if kind == "name":
            if val not in self.names:
                raise ParseError(f"unknown variable {val!r} in {self.text!r}")
            return (self.names[val], self.tower.gen(val))
        if (kind, val) == ("op", "("):
            v = self.expr()
            self.expect(")")
            return v
        if kind == "end":
            raise ParseError(f"unexpected end of input in {self.text!r}")
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse(text: str, tower, level: int | None = None):
    """Parse ``text`` and lift the result to ``level`` (default: the outermost level)."""
    p = _Parser(text, tower)
    try:
        lv, a = p.parse()
    except ZeroDivisionError as exc:
        raise ParseError(f"division by zero in {text!r}") from exc
    if level is None:
        level = p.max_level
    try:
        return tower.lift(a, level)
    except DomainMismatch as exc:
        raise ParseError(str(exc)) from exc


def format_element(a) -> str:
    """Inverse of :func:`parse` for any tower element."""
    return str(a)
