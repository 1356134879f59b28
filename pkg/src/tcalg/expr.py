"""Text front-end for algebra elements.

Grammar (whitespace is ignored)::

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := '-' factor | primary ('^' INT)?
    primary := INT | atom | '(' expr ')'
    atom    := 'w' ('[' INT ']')? '(' INT ',' INT ')'

``w(i,j)`` is a base class, ``w[l](i,j)`` the class of fibre layer l.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import BASE, Params, Polynomial, make_generator, multiply
from .errors import InvalidGeneratorError, ResourceLimitError, TCAlgError

MAX_EXPONENT = 64


class ExprSyntaxError(TCAlgError, ValueError):
    def __init__(self, msg, pos, text=""):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos
        self.text = text


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class Atom:
    layer: int
    i: int
    j: int


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


# -- scanner -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(\S))?")


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        mo = _TOKEN.match(text, pos)
        if mo.group(1) is not None:
            toks.append(("INT", int(mo.group(1)), mo.start(1)))
        elif mo.group(2) is not None:
            ch = mo.group(2)
            if ch not in "w[](),+-*^":
                raise ExprSyntaxError(f"unexpected character {ch!r}", mo.start(2), text)
            toks.append((ch, ch, mo.start(2)))
        else:
            break
        pos = mo.end()
    toks.append(("EOF", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, params):
        self.text = text
        self.params = params
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self, kind):
        tok = self.toks[self.k]
        if tok[0] != kind:
            where = "end of input" if tok[0] == "EOF" else repr(tok[1])
            raise ExprSyntaxError(f"expected {kind!r}, found {where}", tok[2], self.text)
        self.k += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[0] in "+-":
            op = self.take(self.peek()[0])[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "*":
            self.take("*")
            node = BinOp("*", node, self.factor())
        return node

    def factor(self):
        if self.peek()[0] == "-":
            self.take("-")
            return Neg(self.factor())
        node = self.primary()
        if self.peek()[0] == "^":
            self.take("^")
            tok = self.take("INT")
            if tok[1] > MAX_EXPONENT:
                raise ExprSyntaxError(f"exponent {tok[1]} exceeds {MAX_EXPONENT}", tok[2], self.text)
            node = Pow(node, tok[1])
        return node

    def primary(self):
        kind, value, pos = self.peek()
        if kind == "INT":
            self.take("INT")
            return Int(value)
        if kind == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        if kind == "w":
            return self.atom()
        where = "end of input" if kind == "EOF" else repr(value)
        raise ExprSyntaxError(f"expected a number, 'w' or '(', found {where}", pos, self.text)

    def atom(self):
        start = self.take("w")[2]
        layer = BASE
        if self.peek()[0] == "[":
            self.take("[")
            layer = self.take("INT")[1]
            self.take("]")
        self.take("(")
        i = self.take("INT")[1]
        self.take(",")
        j = self.take("INT")[1]
        self.take(")")
        try:
            g = make_generator(layer, i, j, self.params)
        except InvalidGeneratorError as exc:
            raise InvalidGeneratorError(
                f"{exc} (atom at position {start})", layer, i, j
            ) from None
        return Atom(g.layer, g.i, g.j)


def parse(text: str, params: Params):
    """Parse ``text`` into an AST, validating every atom against ``params``."""
    p = _Parser(text, params)
    try:
        node = p.expr()
    except RecursionError:
        raise ExprSyntaxError("expression nested too deeply", p.peek()[2], text) from None
    p.take("EOF")
    return node


def evaluate(node, params: Params, max_word_len: int | None = None) -> Polynomial:
    """Fold an AST into a canonical polynomial; accepts text as well."""
    if isinstance(node, str):
        node = parse(node, params)
    kw = {} if max_word_len is None else {"max_word_len": max_word_len}

    def ev(n):
        if isinstance(n, Int):
            return Polynomial.constant(params, n.value)
        if isinstance(n, Atom):
            return Polynomial.generator(params, n.layer, n.i, n.j)
        if isinstance(n, Neg):
            return -ev(n.operand)
        if isinstance(n, Pow):
            base = ev(n.base)
            out = Polynomial.one(params)
            for _ in range(n.exponent):
                out = multiply(out, base, **kw)
            return out
        if isinstance(n, BinOp):
            a, b = ev(n.left), ev(n.right)
            if n.op == "+":
                return a + b
            if n.op == "-":
                return a - b
            return multiply(a, b, **kw)
        raise TypeError(f"unknown node {n!r}")

    try:
        return ev(node)
    except RecursionError:
        raise ResourceLimitError("expression nested too deeply to evaluate") from None


def format_polynomial(p: Polynomial) -> str:
    """Deterministic text for ``p``: shorter monomials first, ties broken
    lexicographically on (slot, first index) with larger first index first."""
    parts = []
    for word, c in p.terms.items():
        body = "*".join(str(g) for g in word)
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if not parts:
            parts.append(text if c > 0 else f"-{text}")
        else:
            parts.append(f"+ {text}" if c > 0 else f"- {text}")
    return " ".join(parts) if parts else "0"


format = format_polynomial  # noqa: A001


def polynomial_to_json(p: Polynomial) -> list:
    return [
        {"coefficient": c, "monomial": [[g.layer, g.i, g.j] for g in word]}
        for word, c in p.terms.items()
    ]
