"""Recursive-descent parser for the polynomial text grammar.

Grammar (whitespace insignificant)::

    expr    := term (("+" | "-") term)*
    term    := factor ("*" factor)*
    factor  := ("+" | "-") factor | power
    power   := atom ("^" INTEGER)?
    atom    := INTEGER ("/" INTEGER)? | VARIABLE | "(" expr ")"

Variables are ``x0`` .. ``x9`` or the aliases ``x, y, z, w`` (alias order is
index order, so ``y`` is ``x1``). Intermediate values may be inhomogeneous;
only the final result must be homogeneous and nonzero.

Usage:
    from git_stability.algebra.parser import parse_poly

    f = parse_poly("(y^2+x*z)^2 * y^5", 3)
"""

from __future__ import annotations

import re
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from git_stability.algebra.polynomial import ALIASES, Monomial, Poly
from git_stability.base import InhomogeneousError, PolySyntaxError, VariableError, ZeroPolynomialError

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x[0-9]|[xyzw])|(?P<op>[-+*^/()]))")

RawPoly = dict[Monomial, Fraction]


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            msg = f"unexpected character {text[pos]!r}"
            raise PolySyntaxError(msg, pos)
        kind = match.lastgroup or "op"
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def _raw_add(a: RawPoly, b: RawPoly, sign: int = 1) -> RawPoly:
    out = dict(a)
    for m, c in b.items():
        out[m] = out.get(m, Fraction(0)) + sign * c
    return {m: c for m, c in out.items() if c != 0}


def _raw_mul(a: RawPoly, b: RawPoly) -> RawPoly:
    out: RawPoly = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = out.get(m, Fraction(0)) + c1 * c2
    return {m: c for m, c in out.items() if c != 0}


class _Parser:
    def __init__(self, text: str, num_vars: int):
        self.tokens = tokenize(text)
        self.index = 0
        self.num_vars = num_vars
        self.one: RawPoly = {(0,) * num_vars: Fraction(1)}

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def expect(self, kind: str, text: str | None = None) -> Token:
        token = self.current
        if token.kind != kind or (text is not None and token.text != text):
            wanted = text or kind
            found = token.text or "end of input"
            msg = f"expected {wanted!r}, found {found!r}"
            raise PolySyntaxError(msg, token.position)
        return self.advance()

    def at_op(self, *ops: str) -> bool:
        return self.current.kind == "op" and self.current.text in ops

    def parse(self) -> RawPoly:
        if self.current.kind == "end":
            msg = "empty polynomial"
            raise PolySyntaxError(msg, 0)
        value = self.expr()
        if self.current.kind != "end":
            msg = f"unexpected {self.current.text!r}"
            raise PolySyntaxError(msg, self.current.position)
        return value

    def expr(self) -> RawPoly:
        value = self.term()
        while self.at_op("+", "-"):
            sign = 1 if self.advance().text == "+" else -1
            value = _raw_add(value, self.term(), sign)
        return value

    def term(self) -> RawPoly:
        value = self.factor()
        while self.at_op("*"):
            self.advance()
            value = _raw_mul(value, self.factor())
        return value

    def factor(self) -> RawPoly:
        if self.at_op("+", "-"):
            sign = 1 if self.advance().text == "+" else -1
            inner = self.factor()
            return {m: sign * c for m, c in inner.items()}
        return self.power()

    def power(self) -> RawPoly:
        base = self.atom()
        if not self.at_op("^"):
            return base
        self.advance()
        exponent = int(self.expect("num").text)
        result = self.one
        for _ in range(exponent):
            result = _raw_mul(result, base)
        return result

    def atom(self) -> RawPoly:
        token = self.current
        if token.kind == "num":
            self.advance()
            value = Fraction(int(token.text))
            if self.at_op("/"):
                self.advance()
                denominator = self.expect("num")
                if int(denominator.text) == 0:
                    msg = "zero denominator"
                    raise PolySyntaxError(msg, denominator.position)
                value /= int(denominator.text)
            return {m: c * value for m, c in self.one.items()} if value else {}
        if token.kind == "var":
            self.advance()
            index = ALIASES.index(token.text) if len(token.text) == 1 else int(token.text[1:])
            if index >= self.num_vars:
                msg = f"variable {token.text!r} at position {token.position} is outside {self.num_vars} variables"
                raise VariableError(msg, {"position": token.position})
            return {tuple(1 if i == index else 0 for i in range(self.num_vars)): Fraction(1)}
        if self.at_op("("):
            self.advance()
            value = self.expr()
            self.expect("op", ")")
            return value
        found = token.text or "end of input"
        msg = f"unexpected {found!r}"
        raise PolySyntaxError(msg, token.position)


def parse_poly(text: str, num_vars: int) -> Poly:
    """Parse ``text`` into a canonical homogeneous :class:`Poly`.

    Raises:
        PolySyntaxError: Text does not follow the grammar (0-based position reported).
        VariableError: A variable index is out of range for ``num_vars``.
        InhomogeneousError: Terms of different total degree survive expansion.
        ZeroPolynomialError: The expression expands to zero.
    """
    if not 1 <= num_vars <= 10:
        msg = f"num_vars must be between 1 and 10, got {num_vars}"
        raise VariableError(msg)
    raw = _Parser(text, num_vars).parse()
    if not raw:
        msg = f"{text!r} is the zero polynomial"
        raise ZeroPolynomialError(msg)
    degrees = sorted({sum(m) for m in raw})
    if len(degrees) > 1:
        msg = f"{text!r} mixes total degrees {degrees}"
        raise InhomogeneousError(msg, {"degrees": degrees})
    return Poly.from_terms(num_vars, raw)


def parse_variable_order(names: Sequence[str], num_vars: int) -> list[int]:
    """``["y", "x", "z"]`` -> ``[1, 0, 2]``; every variable exactly once.

    Raises:
        VariableError: Unknown, repeated or missing variable names.
    """
    indices: list[int] = []
    for name in names:
        match = _TOKEN_RE.fullmatch(name.strip())
        if match is None or match.group("var") is None:
            msg = f"{name!r} is not a variable name"
            raise VariableError(msg)
        var = match.group("var")
        index = ALIASES.index(var) if len(var) == 1 else int(var[1:])
        if index >= num_vars:
            msg = f"variable {var!r} is outside {num_vars} variables"
            raise VariableError(msg)
        indices.append(index)
    if sorted(indices) != list(range(num_vars)):
        msg = f"order {list(names)} must name each of the {num_vars} variables once"
        raise VariableError(msg)
    return indices
