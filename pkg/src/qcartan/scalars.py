"""Exact scalars: Laurent polynomials in q**(1/2) with rational coefficients.

Every coefficient in the engine lives in this ring.  Exponents are kept in
units of 1/2 (the stored integer n stands for q**(n/2)), which is the
smallest grid on which all the half-power group-like factors close.  No
floating point is used anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt


class QScalar:
    """Sparse Laurent polynomial in q**(1/2) over Q.

    Stored as {half_exponent: Fraction} with no zero coefficients; the
    empty map is the canonical zero and equality is map equality.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for h, c in terms.items():
                c = c if isinstance(c, Fraction) else Fraction(c)
                if c:
                    h = int(h)
                    prev = clean.get(h)
                    if prev is None:
                        clean[h] = c
                    else:
                        s = prev + c
                        if s:
                            clean[h] = s
                        else:
                            del clean[h]
        self._terms = clean

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> "QScalar":
        return _ZERO

    @classmethod
    def one(cls) -> "QScalar":
        return _ONE

    @classmethod
    def rational(cls, c) -> "QScalar":
        c = Fraction(c)
        if not c:
            return _ZERO
        return cls({0: c})

    @classmethod
    def q_power(cls, exponent, coeff=1) -> "QScalar":
        """coeff * q**exponent; exponent may be an int or a Fraction with
        denominator 1 or 2."""
        e = Fraction(exponent)
        if e.denominator not in (1, 2):
            raise ValueError(f"exponent {exponent} is not a half-integer")
        c = Fraction(coeff)
        if not c:
            return _ZERO
        return cls({int(2 * e): c})

    @classmethod
    def _raw(cls, terms: dict) -> "QScalar":
        s = cls.__new__(cls)
        s._terms = terms
        return s

    # -- queries -----------------------------------------------------

    def terms(self):
        """Items (half_exponent, coefficient), ascending exponent."""
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self) -> Fraction | None:
        """The rational value if this scalar is constant in q, else None."""
        if not self._terms:
            return Fraction(0)
        if len(self._terms) == 1 and 0 in self._terms:
            return self._terms[0]
        return None

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, QScalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- ring operations ---------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        terms = dict(self._terms)
        for h, c in other._terms.items():
            s = terms.get(h, _F0) + c
            if s:
                terms[h] = s
            else:
                terms.pop(h, None)
        return QScalar._raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return QScalar._raw({h: -c for h, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return _ZERO
        if len(a) == 1 and len(b) == 1:
            (ha, ca), = a.items()
            (hb, cb), = b.items()
            return QScalar._raw({ha + hb: ca * cb})
        terms = {}
        for ha, ca in a.items():
            for hb, cb in b.items():
                h = ha + hb
                s = terms.get(h, _F0) + ca * cb
                if s:
                    terms[h] = s
                else:
                    terms.pop(h, None)
        return QScalar._raw(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = _ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "QScalar":
        """Multiplicative inverse; defined for monomials c*q**(h/2) only."""
        if len(self._terms) != 1:
            raise ValueError(f"cannot invert non-monomial scalar {self}")
        (h, c), = self._terms.items()
        return QScalar._raw({-h: 1 / c})

    # -- specialization ----------------------------------------------

    def evaluate(self, q_value) -> Fraction:
        """Exact substitution q -> q_value (a nonzero rational).

        Half-integer exponents require q_value to be a perfect square of
        a rational.
        """
        v = Fraction(q_value)
        if v == 0:
            raise ValueError("cannot specialize at q = 0")
        root = None
        if any(h % 2 for h in self._terms):
            root = _rational_sqrt(v)
            if root is None:
                raise ValueError(
                    f"half-integer power of q cannot be evaluated at {v}: "
                    "not a perfect square"
                )
        total = _F0
        for h, c in self._terms.items():
            if h % 2:
                total += c * root ** h
            else:
                total += c * v ** (h // 2)
        return total

    # -- printing ----------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for h, c in self.terms():
            if h == 0:
                body = str(c)
            else:
                p = _format_exponent(h)
                if c == 1:
                    body = p
                elif c == -1:
                    body = "-" + p
                else:
                    body = f"{c}*{p}"
            if not parts:
                parts.append(body)
            elif body.startswith("-"):
                parts.append(" - " + body[1:])
            else:
                parts.append(" + " + body)
        return "".join(parts)

    def __repr__(self):
        return f"QScalar({self})"


def _coerce(value):
    if isinstance(value, QScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return QScalar.rational(value)
    return NotImplemented


def _format_exponent(h: int) -> str:
    if h == 2:
        return "q"
    if h % 2 == 0:
        return f"q^{h // 2}"
    return f"q^{h}/2"


def _rational_sqrt(v: Fraction) -> Fraction | None:
    if v < 0:
        return None
    np, dp = v.numerator, v.denominator
    rn, rd = isqrt(np), isqrt(dp)
    if rn * rn == np and rd * rd == dp:
        return Fraction(rn, rd)
    return None


_F0 = Fraction(0)
_ZERO = QScalar._raw({})
_ONE = QScalar._raw({0: Fraction(1)})

ZERO = _ZERO
ONE = _ONE
Q = QScalar._raw({2: Fraction(1)})
Q_INV = QScalar._raw({-2: Fraction(1)})
Q_HALF = QScalar._raw({1: Fraction(1)})


# A scalar expression is a signed sum of monomials:  3/2*q^-1/2 + 1 - q^2.
_MONOMIAL_RE = re.compile(
    r"""\s*
        (?:(?P<coeff>\d+(?:/\d+)?)\s*\*?\s*)?           # optional rational
        (?:q(?:\^(?P<exp>-?\d+(?:/2)?))?)?              # optional q power
        \s*$""",
    re.VERBOSE,
)


def parse_scalar(text: str) -> QScalar:
    """Parse the q^p/2 scalar syntax, e.g. '1', '-q^-1', '3/2*q^1/2 + 1'."""
    total = _ZERO
    for sign, chunk in _signed_chunks(text):
        m = _MONOMIAL_RE.fullmatch(chunk)
        if m is None or (m.group("coeff") is None and "q" not in chunk):
            raise ValueError(f"bad scalar syntax: {chunk.strip()!r}")
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        exp = m.group("exp")
        if "q" not in chunk:
            half = 0
        elif exp is None:
            half = 2
        elif exp.endswith("/2"):
            half = int(exp[:-2])
        else:
            half = 2 * int(exp)
        total = total + QScalar._raw({half: sign * coeff})
    return total


def _signed_chunks(text: str):
    text = text.strip()
    if not text:
        raise ValueError("empty scalar")
    out = []
    sign = 1
    start = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "+-" and i > start and text[i - 1] not in "^+-*/":
            out.append((sign, text[start:i]))
            sign = 1 if ch == "+" else -1
            start = i + 1
        elif ch in "+-" and i == start:
            if ch == "-":
                sign = -sign
            start = i + 1
        i += 1
    out.append((sign, text[start:]))
    return out
