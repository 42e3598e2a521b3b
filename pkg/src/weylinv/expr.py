"""Expression parser for algebra elements.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := '-' factor | base ('^' NAT)?
    base    := INT ('/' INT)? | VAR | '(' expr ')'

``^`` binds tighter than ``*`` and does not chain (``x1^2^3`` is an error);
a negative base needs parentheses: ``-x1^2`` is ``-(x1^2)``, ``(-x1)^2`` is
``x1^2``. Products are evaluated left to right in the (noncommutative)
algebra, so ``x2*x1`` with ``n = 1`` gives ``x1*x2 + 1``. Variables are
``x1 .. x{2n+m}``; ``y1 .. yn`` are accepted as aliases of ``x{n+1} .. x{2n}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DivisionByZero, ExponentTooLarge, NonInvertible, ParseError, UnknownVariable
from .weyl import AlgebraSignature, WeylElement

MAX_EXPONENT = 10**6

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


@dataclass(frozen=True)
class IntLiteral:
    value: int


@dataclass(frozen=True)
class RationalLiteral:
    num: int
    den: int


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


def _byte_offset(text: str, i: int) -> int:
    return len(text[:i].encode("utf-8"))


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos or (m.group(0).strip() == ""):
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), start))
        else:
            tok = m.group(3)
            if tok not in "+-*^/()":
                raise ParseError(f"unexpected character {tok!r}", _byte_offset(text, start))
            toks.append((tok, tok, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, sig: AlgebraSignature):
        self.text = text
        self.sig = sig
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None, cls=ParseError):
        tok = tok or self.peek()
        raise cls(msg, _byte_offset(self.text, tok[2]))

    def expect(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            self.fail(f"expected {kind!r}, found {tok[1] or 'end of input'!r}")
        return self.take()

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take()[0]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "*":
            self.take()
            node = Mul(node, self.factor())
        return node

    def factor(self):
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.factor())
        node = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.fail("exponent must be a nonnegative integer literal")
            self.take()
            k = int(tok[1])
            if k > MAX_EXPONENT:
                self.fail(f"exponent {k} exceeds {MAX_EXPONENT}", tok, ExponentTooLarge)
            node = Pow(node, k)
            if self.peek()[0] == "^":
                self.fail("'^' does not chain; use parentheses")
        return node

    def base(self):
        tok = self.peek()
        kind = tok[0]
        if kind == "int":
            self.take()
            if self.peek()[0] == "/":
                self.take()
                den = self.expect("int")
                if int(den[1]) == 0:
                    self.fail("zero denominator", den)
                return RationalLiteral(int(tok[1]), int(den[1]))
            return IntLiteral(int(tok[1]))
        if kind == "name":
            self.take()
            return Var(self.resolve(tok))
        if kind == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        self.fail(f"unexpected {tok[1] or 'end of input'!r}")

    def resolve(self, tok) -> int:
        name = tok[1]
        m = re.fullmatch(r"([xy])([1-9]\d*)", name)
        if m:
            k = int(m.group(2))
            if m.group(1) == "x" and k <= self.sig.nvars:
                return k
            if m.group(1) == "y" and k <= self.sig.n:
                return self.sig.n + k
        self.fail(f"unknown variable {name!r}", tok, UnknownVariable)


def parse_ast(text: str, sig: AlgebraSignature):
    return _Parser(text, sig).parse()


def evaluate(node, sig: AlgebraSignature) -> WeylElement:
    if isinstance(node, IntLiteral):
        return sig.scalar(node.value)
    if isinstance(node, RationalLiteral):
        return sig.scalar(sig.ring.from_rational(node.num, node.den))
    if isinstance(node, Var):
        return sig.gen(node.index)
    if isinstance(node, Neg):
        return -evaluate(node.operand, sig)
    if isinstance(node, Add):
        return evaluate(node.left, sig) + evaluate(node.right, sig)
    if isinstance(node, Sub):
        return evaluate(node.left, sig) - evaluate(node.right, sig)
    if isinstance(node, Mul):
        return evaluate(node.left, sig) * evaluate(node.right, sig)
    if isinstance(node, Pow):
        return evaluate(node.base, sig) ** node.exponent
    raise TypeError(f"not an expression node: {node!r}")


def parse(text: str, sig: AlgebraSignature) -> WeylElement:
    """Parse ``text`` into its normal-ordered value in ``sig``."""
    node = parse_ast(text, sig)
    try:
        return evaluate(node, sig)
    except (NonInvertible, DivisionByZero) as exc:
        raise ParseError(f"literal not representable in {sig.ring}: {exc}", 0) from exc
