"""Expression parser and canonical printer for polynomials.

Grammar (explicit multiplication, no juxtaposition; a leading minus is the
only unary form, matching what the printer emits):

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := nat | nat '/' nat | ident | '(' expr ')'

Identifiers must be declared variables of the ring.  ``parse(print(p)) == p``
for every polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ExprSyntaxError, UnknownVariable
from .poly import Polynomial, VarSet


# AST nodes: kept tiny; evaluation happens immediately after parsing.
@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str
    offset: int


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*', '^'
    left: object
    right: object


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self):
        t = self.text
        n = len(t)
        i = self.pos
        while i < n and t[i].isspace():
            i += 1
        self.pos = i
        if i >= n:
            return ("end", "", i)
        ch = t[i]
        if ch.isdigit():
            j = i
            while j < n and t[j].isdigit():
                j += 1
            return ("nat", t[i:j], i)
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (t[j].isalnum() or t[j] == "_"):
                j += 1
            return ("ident", t[i:j], i)
        if ch in "+-*^()/":
            return (ch, ch, i)
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)

    def next(self):
        kind, val, off = self.peek()
        self.pos = off + len(val)
        return kind, val, off


class _Parser:
    def __init__(self, text: str):
        self.toks = _Tokenizer(text)

    def parse(self):
        node = self.expr()
        kind, val, off = self.toks.peek()
        if kind != "end":
            raise ExprSyntaxError(f"trailing input {val!r}", off)
        return node

    def expr(self):
        kind, _, _ = self.toks.peek()
        if kind == "-":
            self.toks.next()
            node = Neg(self.term())
        else:
            node = self.term()
        while True:
            kind, _, _ = self.toks.peek()
            if kind in ("+", "-"):
                self.toks.next()
                node = BinOp(kind, node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            kind, _, _ = self.toks.peek()
            if kind == "*":
                self.toks.next()
                node = BinOp("*", node, self.factor())
            else:
                return node

    def factor(self):
        node = self.base()
        kind, _, _ = self.toks.peek()
        if kind == "^":
            self.toks.next()
            k2, val, off = self.toks.next()
            if k2 != "nat":
                raise ExprSyntaxError("exponent must be a literal natural number", off)
            node = BinOp("^", node, Num(Fraction(int(val))))
        return node

    def base(self):
        kind, val, off = self.toks.next()
        if kind == "nat":
            k2, _, _ = self.toks.peek()
            if k2 == "/":
                self.toks.next()
                k3, den, off3 = self.toks.next()
                if k3 != "nat":
                    raise ExprSyntaxError("denominator must be a natural number", off3)
                if int(den) == 0:
                    raise ExprSyntaxError("zero denominator", off3)
                return Num(Fraction(int(val), int(den)))
            return Num(Fraction(int(val)))
        if kind == "ident":
            return Var(val, off)
        if kind == "(":
            node = self.expr()
            k2, _, off2 = self.toks.next()
            if k2 != ")":
                raise ExprSyntaxError("expected ')'", off2)
            return node
        raise ExprSyntaxError(f"unexpected token {val!r}", off)


def parse_expr(text: str):
    """Parse to an AST without evaluating; raises ExprSyntaxError."""
    return _Parser(text).parse()


def _to_poly(node, ring: VarSet) -> Polynomial:
    if isinstance(node, Num):
        return Polynomial.const(ring, node.value)
    if isinstance(node, Var):
        if node.name not in ring.names:
            raise UnknownVariable(node.name, node.offset)
        return Polynomial.variable(ring, node.name)
    if isinstance(node, Neg):
        return -_to_poly(node.arg, ring)
    if isinstance(node, BinOp):
        if node.op == "^":
            return _to_poly(node.left, ring) ** int(node.right.value)
        a = _to_poly(node.left, ring)
        b = _to_poly(node.right, ring)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
    raise ExprSyntaxError("malformed expression tree", 0)


def parse_poly(text: str, ring: VarSet) -> Polynomial:
    """Parse expression text into a canonical polynomial over the ring."""
    return _to_poly(parse_expr(text), ring)


def print_poly(p: Polynomial) -> str:
    """Canonical text: terms descending in the ring's default order;
    integer coefficients printed without a denominator.  Round-trips
    through parse_poly."""
    return str(p)
