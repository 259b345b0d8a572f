"""Tiny recursive-descent parser for polynomial expressions.

The result is a sparse dict mapping exponent tuples (one slot per allowed
variable name) to Fraction coefficients.  Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := INT ['/' INT] | NAME | '(' expr ')' | '-' factor
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")

Sparse = dict  # tuple[int, ...] -> Fraction


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        pos = m.end()
        if m.group(1):
            out.append(("int", m.group(1)))
        elif m.group(2):
            out.append(("name", m.group(2)))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op))
    return out


def _add(a: Sparse, b: Sparse, sign: int = 1) -> Sparse:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + sign * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _mul(a: Sparse, b: Sparse) -> Sparse:
    out: Sparse = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


class _Parser:
    def __init__(self, text: str, names: list[str]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.index = {n: k for k, n in enumerate(names)}
        self.zero = (0,) * len(names)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, val=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (val and tok[1] != val):
            raise ParseError(f"unexpected token {tok[1]!r} in {self.text!r}")
        self.i += 1
        return tok

    def const(self, c) -> Sparse:
        return {self.zero: Fraction(c)} if c else {}

    def expr(self) -> Sparse:
        if self.peek() == ("op", "-"):
            self.take()
            acc = _add({}, self.term(), -1)
        else:
            acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            sign = 1 if self.take()[1] == "+" else -1
            acc = _add(acc, self.term(), sign)
        return acc

    def term(self) -> Sparse:
        acc = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            acc = _mul(acc, self.factor())
        return acc

    def factor(self) -> Sparse:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            e = int(self.take("int")[1])
            out = self.const(1)
            for _ in range(e):
                out = _mul(out, base)
            return out
        return base

    def atom(self) -> Sparse:
        kind, val = self.peek()
        if kind == "int":
            self.take()
            num = Fraction(int(val))
            if self.peek() == ("op", "/"):
                self.take()
                den = int(self.take("int")[1])
                if den == 0:
                    raise ParseError(f"zero denominator in {self.text!r}")
                num /= den
            return self.const(num)
        if kind == "name":
            self.take()
            if val not in self.index:
                raise ParseError(f"unknown symbol {val!r} in {self.text!r}")
            m = list(self.zero)
            m[self.index[val]] = 1
            return {tuple(m): Fraction(1)}
        if (kind, val) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        if (kind, val) == ("op", "-"):
            self.take()
            return _add({}, self.factor(), -1)
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_sparse(text: str, names: list[str]) -> Sparse:
    """Parse ``text`` into ``{exponent tuple: Fraction}`` over the given names."""
    if not text or not text.strip():
        raise ParseError("empty expression")
    p = _Parser(text, names)
    out = p.expr()
    if p.i != len(p.toks):
        raise ParseError(f"trailing input {p.peek()[1]!r} in {text!r}")
    return out
