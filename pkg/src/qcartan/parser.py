"""Expression front end: a small algebra grammar over the fixed alphabet.

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '.') factor)*
    factor := atom ('^' ['-'] number)?
    atom   := number | 'q' | name | '(' expr ')'

Numbers are exact rationals (`3`, `3/4`); `q` powers admit half-integer
exponents (`q^1/2`).  Unicode spellings of the operator letters are
accepted on input; output is plain ASCII.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .scalars import QScalar
from .words import Element, GENERATORS, make_word


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


def _aliases():
    out = {}
    for name in GENERATORS:
        out[name] = name
    for a in "xyz":
        out[f"d_{a}"] = f"d{a}"
        out[f"p_{a}"] = f"p{a}"
        out[f"∂{a}"] = f"p{a}"      # ∂x
        out[f"∂_{a}"] = f"p{a}"
        out[f"w_{a}"] = f"w{a}"
        out[f"ω{a}"] = f"w{a}"      # ωx
        out[f"ω_{a}"] = f"w{a}"
        out[f"i_{a}"] = f"i{a}"
        out[f"L_{a}"] = f"L{a}"
        out[f"T_{a}"] = f"T{a}"
    out["x⁻¹"] = "xinv"        # x⁻¹
    out["K⁻¹"] = "Kinv"
    # dual tangent generators
    out["X"] = "Tx"
    out["Y"] = "Ty"
    out["Z"] = "Tz"
    return out


ALIASES = _aliases()


# --- abstract syntax -------------------------------------------------------

@dataclass(frozen=True)
class Expr:
    pass


@dataclass(frozen=True)
class Num(Expr):
    value: Fraction


@dataclass(frozen=True)
class QPow(Expr):
    halves: int  # q**(halves/2)


@dataclass(frozen=True)
class Gen(Expr):
    name: str


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Mul(Expr):
    factors: tuple


@dataclass(frozen=True)
class Sum(Expr):
    terms: tuple  # of (sign, Expr)


# --- tokenizer -------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<number>\d+(?:/\d+)?)
      | (?P<name>[A-Za-z∂ω][A-Za-z0-9_]*(?:⁻¹)?)
      | (?P<op>[-+*.^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.peek()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}", pos)
        return self.next()

    def parse(self) -> Expr:
        e = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {value!r}", pos)
        return e

    def expr(self) -> Expr:
        terms = []
        sign = 1
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            self.next()
            sign = -1 if value == "-" else 1
        terms.append((sign, self.term()))
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.next()
                terms.append((1 if value == "+" else -1, self.term()))
            else:
                break
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self) -> Expr:
        factors = [self.factor()]
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "*.":
                self.next()
                factors.append(self.factor())
            elif kind in ("number", "name") or (kind == "op" and value == "("):
                # juxtaposition, as in the canonical printer's "(q^-1) x*y"
                factors.append(self.factor())
            else:
                break
        if len(factors) == 1:
            return factors[0]
        return Mul(tuple(factors))

    def factor(self) -> Expr:
        atom = self.atom()
        kind, value, _ = self.peek()
        if not (kind == "op" and value == "^"):
            return atom
        self.next()
        sign = 1
        kind, value, pos = self.peek()
        if kind == "op" and value in "+-":
            self.next()
            sign = -1 if value == "-" else 1
            kind, value, pos = self.peek()
        if kind != "number":
            raise ParseError("expected an exponent", pos)
        self.next()
        exp = sign * Fraction(value)
        if isinstance(atom, QPow):
            half = exp * 2
            if half.denominator != 1:
                raise ParseError(f"exponent {exp} of q is not a half-integer", pos)
            return QPow(int(half) * atom.halves // 2)
        if exp.denominator != 1:
            raise ParseError(f"exponent {exp} is not an integer", pos)
        return Pow(atom, int(exp))

    def atom(self) -> Expr:
        kind, value, pos = self.next()
        if kind == "number":
            return Num(Fraction(value))
        if kind == "name":
            if value == "q":
                return QPow(2)
            name = ALIASES.get(value)
            if name is None:
                raise ParseError(f"unknown generator name {value!r}", pos)
            return Gen(name)
        if kind == "op" and value == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        raise ParseError(f"unexpected {value!r}" if value else "unexpected end of input", pos)


def parse(text: str) -> Expr:
    """Parse a textual expression to abstract syntax."""
    return _Parser(text).parse()


def format_expr(e: Expr) -> str:
    """Canonical ASCII rendering; parse(format_expr(parse(s))) == parse(s)."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, QPow):
        if e.halves == 2:
            return "q"
        if e.halves % 2 == 0:
            return f"q^{e.halves // 2}"
        return f"q^{Fraction(e.halves, 2)}"
    if isinstance(e, Gen):
        return e.name
    if isinstance(e, Pow):
        base = format_expr(e.base)
        if not isinstance(e.base, (Gen, Num)):
            base = f"({base})"
        return f"{base}^{e.exponent}"
    if isinstance(e, Mul):
        parts = []
        for f in e.factors:
            text = format_expr(f)
            if isinstance(f, Sum):
                text = f"({text})"
            parts.append(text)
        return "*".join(parts)
    if isinstance(e, Sum):
        out = ""
        for sign, term in e.terms:
            text = format_expr(term)
            if isinstance(term, Sum):
                text = f"({text})"
            if not out:
                out = text if sign > 0 else f"-{text}"
            else:
                out += f" + {text}" if sign > 0 else f" - {text}"
        return out
    raise TypeError(f"not an expression: {e!r}")


def to_element(e: Expr) -> Element:
    """Evaluate abstract syntax to an element (free products, unnormalized)."""
    from .words import concat

    if isinstance(e, Num):
        return Element.scalar(QScalar.rational(e.value))
    if isinstance(e, QPow):
        return Element.scalar(QScalar._raw({e.halves: Fraction(1)}))
    if isinstance(e, Gen):
        return Element.from_letter(e.name)
    if isinstance(e, Pow):
        if isinstance(e.base, Gen):
            word = make_word([(e.base.name, e.exponent)])
            return Element.from_word(word)
        if isinstance(e.base, Num):
            return Element.scalar(QScalar.rational(e.base.value ** e.exponent))
        if e.exponent < 0:
            raise ValueError("negative powers are only defined for x and K")
        out = Element.one()
        base = to_element(e.base)
        for _ in range(e.exponent):
            out = concat(out, base)
        return out
    if isinstance(e, Mul):
        out = Element.one()
        for f in e.factors:
            out = concat(out, to_element(f))
        return out
    if isinstance(e, Sum):
        out = Element.zero()
        for sign, term in e.terms:
            out = out + (to_element(term) if sign > 0 else -to_element(term))
        return out
    raise TypeError(f"not an expression: {e!r}")


def parse_element(text: str) -> Element:
    """Parse straight to an (unnormalized) element."""
    return to_element(parse(text))
