"""Recursive-descent parser for polynomial text.

Grammar (whitespace insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := power (['*'|'/'] power | power)*     # juxtaposition multiplies
    power  := atom (('^'|'**') INT)*
    atom   := INT | IDENT | '(' expr ')'

Division is only allowed by a nonzero constant.  An identifier that is not
a variable name is split into variable names when possible, so ``uw``
reads as ``u*w`` in a ring with variables u and w.
"""

from __future__ import annotations

import re

from ..errors import FieldError, ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def tokenize(text: str, line: int = 1, col0: int = 1):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", line, col0 + bad)
        start = m.start(m.lastindex)
        kind = ("int", "ident", "op")[m.lastindex - 1]
        tokens.append((kind, m.group(m.lastindex), col0 + start))
        pos = m.end()
    tokens.append(("end", "", col0 + len(text)))
    return tokens


def split_identifier(name: str, names) -> list[str] | None:
    """Split ``name`` into a product of variable names, longest match first."""
    if name in names:
        return [name]
    for cut in range(len(name) - 1, 0, -1):
        head = name[:cut]
        if head in names:
            rest = split_identifier(name[cut:], names)
            if rest is not None:
                return [head] + rest
    return None


class _Parser:
    def __init__(self, ring, text: str, line: int, col0: int):
        self.ring = ring
        self.tokens = tokenize(text, line, col0)
        self.i = 0
        self.line = line

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.line, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty polynomial")
        value = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self):
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _starts_atom(self, tok):
        return tok[0] in ("int", "ident") or tok[1] == "("

    def term(self):
        value = self.power()
        while True:
            tok = self.peek()
            if tok[1] == "*":
                self.take()
                value = value * self.power()
            elif tok[1] == "/":
                self.take()
                den_tok = self.peek()
                den = self.power()
                if not den.is_constant() or den.is_zero():
                    raise self.error("division is only allowed by a nonzero constant", den_tok)
                value = value / den.constant_term()
            elif self._starts_atom(tok):
                value = value * self.power()
            else:
                return value

    def power(self):
        # in a run-together name like ``xy^2`` the exponent binds to the last variable
        prefix, value = self.atom()
        while self.peek()[1] in ("^", "**"):
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise self.error("exponent must be a non-negative integer literal", tok)
            value = value ** int(tok[1])
        return value if prefix is None else prefix * value

    def atom(self):
        tok = self.take()
        ring = self.ring
        if tok[0] == "int":
            try:
                return None, ring.const(int(tok[1]))
            except FieldError as exc:
                raise self.error(str(exc), tok) from None
        if tok[0] == "ident":
            parts = split_identifier(tok[1], ring._index)
            if parts is None:
                raise self.error(f"unknown variable {tok[1]!r}", tok)
            prefix = None
            for p in parts[:-1]:
                prefix = ring.var(p) if prefix is None else prefix * ring.var(p)
            return prefix, ring.var(parts[-1])
        if tok[1] == "(":
            value = self.expr()
            close = self.take()
            if close[1] != ")":
                raise self.error("expected ')'", close)
            return None, value
        if tok[0] == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected token {tok[1]!r}", tok)


def parse_polynomial(ring, text: str, line: int = 1, column: int = 1):
    """Parse ``text`` into a polynomial of ``ring``."""
    return _Parser(ring, text, line, column).parse()
