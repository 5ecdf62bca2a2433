"""Parser for operator expressions.

Grammar (whitespace insignificant)::

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := identifier | rational | 'i' | '(' expr ')' | '-' factor
    rational := int ('/' uint)?

The parser builds a small AST; ``evaluate`` folds it in any ring whose
elements support ``+``, ``-``, ``*`` and integer ``**``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable

from .errors import ExpressionSyntaxError, InputError, UnknownName
from .scalars import GaussRational, I

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = len(text[pos:]) - len(text[pos:].lstrip())
            raise ExpressionSyntaxError(f"unexpected character {text[pos + stripped]!r}", text, pos + stripped)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ExpressionSyntaxError(message, self.text, tok[2])

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            self.fail(f"expected {value!r}", tok)

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            node = ("add", node, rhs) if op == "+" else ("sub", node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek()[1] == "*":
            self.take()
            node = ("mul", node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        if self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.fail("expected a nonnegative integer exponent", tok)
            node = ("pow", node, int(tok[1]))
        return node

    def atom(self):
        tok = self.peek()
        kind, value, _ = tok
        if kind == "num":
            self.take()
            num = int(value)
            if self.peek()[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "num":
                    self.fail("expected an integer denominator", den)
                if int(den[1]) == 0:
                    self.fail("zero denominator", den)
                return ("const", GaussRational(Fraction(num, int(den[1]))))
            return ("const", GaussRational(num))
        if kind == "id":
            self.take()
            if value == "i":
                return ("const", I)
            return ("name", value, tok[2])
        if value == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if value == "-":
            self.take()
            return ("neg", self.factor())
        if kind == "end":
            self.fail("unexpected end of expression")
        self.fail(f"unexpected {value!r}")


def parse(text: str):
    """Parse to an AST of nested tuples; raises ExpressionSyntaxError with a caret."""
    return _Parser(text).parse()


def names_in(ast) -> set[str]:
    if ast[0] == "name":
        return {ast[1]}
    if ast[0] == "const":
        return set()
    out = set()
    for child in ast[1:]:
        if isinstance(child, tuple):
            out |= names_in(child)
    return out


def evaluate(ast, generator: Callable[[str], object], constant: Callable[[GaussRational], object], text: str = ""):
    kind = ast[0]
    if kind == "const":
        return constant(ast[1])
    if kind == "name":
        try:
            return generator(ast[1])
        except (KeyError, UnknownName):
            raise UnknownName(f"unknown identifier {ast[1]!r} at position {ast[2]}") from None
    if kind == "neg":
        return -evaluate(ast[1], generator, constant, text)
    if kind == "pow":
        return evaluate(ast[1], generator, constant, text) ** ast[2]
    a = evaluate(ast[1], generator, constant, text)
    b = evaluate(ast[2], generator, constant, text)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise AssertionError(kind)  # pragma: no cover


def parse_element(text: str, algebra):
    """Operator expression -> EnvElement over ``algebra`` (names = basis)."""
    from .envelope import EnvElement

    ast = parse(text)
    gens = {nm: EnvElement.generator(algebra, k) for k, nm in enumerate(algebra.names)}
    return evaluate(ast, gens.__getitem__, lambda c: EnvElement.scalar(algebra, c), text)


def parse_form(text: str, basis):
    """Expression over the labels of a WeightedBasis -> Form."""
    from .forms import Form

    ast = parse(text)
    index = {lb: k for k, lb in enumerate(basis.labels)}
    return evaluate(
        ast,
        lambda nm: Form.letter(basis, index[nm]),
        lambda c: Form.scalar(basis, c),
        text,
    )


def parse_poly(text: str, nvars: int, names: list[str] | None = None):
    """Commutative polynomial in ``lambda`` (n=1) or ``lambda1..lambdaN``."""
    from .poly import CommPoly

    if names is None:
        names = ["lambda"] if nvars == 1 else [f"lambda{k + 1}" for k in range(nvars)]
    index = {nm: k for k, nm in enumerate(names)}
    if nvars == 1:
        index.setdefault("lambda1", 0)
    ast = parse(text)
    return evaluate(ast, lambda nm: CommPoly.var(nvars, index[nm]), lambda c: CommPoly.const(nvars, c), text)


def parse_vector(text: str, algebra) -> tuple:
    """Linear expression such as ``Y+T1`` -> coordinate vector over Q."""
    d = parse_element(text, algebra)
    out = [Fraction(0)] * algebra.dim
    for e, c in d.terms.items():
        if sum(e) != 1:
            raise InputError(f"{text!r} is not a linear combination of basis elements")
        if not c.is_real():
            raise InputError(f"{text!r} has a non-real coefficient")
        out[e.index(1)] = c.re
    return tuple(out)
