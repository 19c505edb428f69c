"""Expression parsing and canonical printing.

Grammar (whitespace insignificant):

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ['^' integer]
    atom   := integer | identifier | '(' expr ')'

Exponents must be nonnegative integer literals ("x^-1" is a syntax error).
Identifiers must name registered symbols unless register=True is passed.
The printer emits a canonical form with terms in descending lexicographic
order; parse(to_string(f)) == f for every rational function f.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Polynomial, REGISTRY
from .ratfunc import RationalFunction, rf_int, rf_var


class ParseError(ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


# ---------------------------------------------------------------------------
# tokenizer
# ---------------------------------------------------------------------------

_OPS = set("+-*/^()")


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


# ---------------------------------------------------------------------------
# recursive-descent parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens, register):
        self.tokens = tokens
        self.pos = 0
        self.register = register

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse_expr(self):
        negate = False
        if self.peek()[0] == "-":
            self.next()
            negate = True
        value = self.parse_term()
        if negate:
            value = -value
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term(self):
        value = self.parse_factor()
        while self.peek()[0] in ("*", "/"):
            op = self.next()[0]
            rhs = self.parse_factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero")
                value = value / rhs
        return value

    def parse_factor(self):
        value = self.parse_atom()
        if self.peek()[0] == "^":
            self.next()
            tok = self.next()
            if tok[0] != "int":
                raise ParseError("exponent must be a nonnegative integer",
                                 tok[2])
            value = value ** tok[1]
        return value

    def parse_atom(self):
        tok = self.next()
        if tok[0] == "int":
            return rf_int(tok[1])
        if tok[0] == "ident":
            name = tok[1]
            if not REGISTRY.contains(name):
                if not self.register:
                    raise ParseError(f"unknown symbol {name!r}", tok[2])
                REGISTRY.register(name)
            return rf_var(name)
        if tok[0] == "(":
            value = self.parse_expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2])


def parse_expression(text, register=False):
    """Parse a string into a RationalFunction."""
    if not isinstance(text, str):
        raise ParseError("expected a string")
    parser = _Parser(_tokenize(text), register)
    value = parser.parse_expr()
    end = parser.next()
    if end[0] != "end":
        raise ParseError(f"trailing input {end[1]!r}", end[2])
    return value


# ---------------------------------------------------------------------------
# canonical printer
# ---------------------------------------------------------------------------

def _monomial_to_string(exps):
    names = REGISTRY.names()
    pieces = []
    for i, k in enumerate(exps):
        if k == 1:
            pieces.append(names[i])
        elif k > 1:
            pieces.append(f"{names[i]}^{k}")
    return "*".join(pieces)


def _fraction_str(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def polynomial_to_string(p):
    if p.is_zero():
        return "0"
    items = sorted(p.terms(), reverse=True)
    out = []
    for e, c in items:
        mono = _monomial_to_string(e)
        neg = c < 0
        mag = -c if neg else c
        if mono:
            body = mono if mag == 1 else f"{_fraction_str(mag)}*{mono}"
        else:
            body = _fraction_str(mag)
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"-{body}" if neg else f"+{body}")
    return "".join(out)


def _needs_parens_as_numerator(p):
    return len(dict(p.terms())) > 1


def _den_is_plain(p):
    """True when the denominator may be printed without parentheses:
    a bare integer, or a single monomial in one symbol with coefficient 1."""
    terms = dict(p.terms())
    if len(terms) != 1:
        return False
    e, c = next(iter(terms.items()))
    width = sum(1 for k in e if k)
    if width == 0:
        return True
    if c != 1:
        return False
    return width == 1


def to_string(f):
    if isinstance(f, Polynomial):
        return polynomial_to_string(f)
    if not isinstance(f, RationalFunction):
        raise TypeError("expected a RationalFunction or Polynomial")
    num_s = polynomial_to_string(f.num)
    if f.den.is_const() and f.den.as_fraction() == 1:
        return num_s
    if _needs_parens_as_numerator(f.num):
        num_s = f"({num_s})"
    den_s = polynomial_to_string(f.den)
    if not _den_is_plain(f.den):
        den_s = f"({den_s})"
    return f"{num_s}/{den_s}"
