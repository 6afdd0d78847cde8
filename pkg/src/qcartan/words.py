"""Generator alphabet, noncommutative words, and their linear spans.

The alphabet covers the coordinates of the quantum 3d space together with
their differentials, Cartan-Maurer one-forms, partial derivatives, the
tangent/Lie generators, the group-like pair K = q**Tx and its inverse, the
inner derivations and the Lie derivatives.  Normal order is by sector,

    FORM < COORD < PARTIAL < LIE < GROUPLIKE < INNER < LIEDERIV,

and alphabetically inside each sector; every commutation rule of the
calculus moves letters toward this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction

from .scalars import ONE, QScalar


class Sector(IntEnum):
    FORM = 0
    COORD = 1
    PARTIAL = 2
    LIE = 3
    GROUPLIKE = 4
    INNER = 5
    LIEDERIV = 6


# Sectors whose letters act like vector fields: they annihilate the unit,
# so words ending in them are dropped by operator application.
OPERATOR_SECTORS = frozenset(
    (Sector.PARTIAL, Sector.LIE, Sector.INNER, Sector.LIEDERIV)
)


@dataclass(frozen=True, eq=False)  # identity semantics: generators are singletons
class Generator:
    name: str
    sector: Sector
    form_degree: int
    position: int
    # for x and K: the alias letter naming the inverse power (and back)
    inverse_name: str | None = None
    is_alias: bool = False

    def __repr__(self):
        return self.name


def _build_alphabet():
    entries = [
        # FORM
        ("dx", Sector.FORM, 1), ("dy", Sector.FORM, 1), ("dz", Sector.FORM, 1),
        ("wx", Sector.FORM, 1), ("wy", Sector.FORM, 1), ("wz", Sector.FORM, 1),
        # COORD (xinv sorts before x so inverse powers lead)
        ("xinv", Sector.COORD, 0), ("x", Sector.COORD, 0),
        ("y", Sector.COORD, 0), ("z", Sector.COORD, 0),
        # PARTIAL
        ("px", Sector.PARTIAL, 0), ("py", Sector.PARTIAL, 0), ("pz", Sector.PARTIAL, 0),
        # LIE
        ("Tx", Sector.LIE, 0), ("Ty", Sector.LIE, 0), ("Tz", Sector.LIE, 0),
        # GROUPLIKE
        ("K", Sector.GROUPLIKE, 0), ("Kinv", Sector.GROUPLIKE, 0),
        # INNER
        ("ix", Sector.INNER, -1), ("iy", Sector.INNER, -1), ("iz", Sector.INNER, -1),
        # LIEDERIV
        ("Lx", Sector.LIEDERIV, 0), ("Ly", Sector.LIEDERIV, 0), ("Lz", Sector.LIEDERIV, 0),
    ]
    inverses = {"x": "xinv", "xinv": "x", "K": "Kinv", "Kinv": "K"}
    aliases = {"xinv", "Kinv"}
    letters = {}
    for pos, (name, sector, deg) in enumerate(entries):
        letters[name] = Generator(
            name=name,
            sector=sector,
            form_degree=deg,
            position=pos,
            inverse_name=inverses.get(name),
            is_alias=name in aliases,
        )
    return letters


GENERATORS: dict[str, Generator] = _build_alphabet()

# Letters that may appear in canonical word factors (aliases resolve away).
WORD_LETTERS = frozenset(g for g in GENERATORS.values() if not g.is_alias)
INVERTIBLE = frozenset((GENERATORS["x"], GENERATORS["K"]))


def generator(name: str) -> Generator:
    try:
        return GENERATORS[name]
    except KeyError:
        raise KeyError(f"unknown generator name {name!r}") from None


def signed_letter(gen: Generator, exponent: int) -> Generator:
    """The letter naming one power of `gen` with the sign of `exponent`."""
    if exponent > 0:
        return gen
    return GENERATORS[gen.inverse_name]


class Word:
    """A canonical product of generator powers.

    Factors are (Generator, exponent) with nonzero exponents, adjacent
    equal generators merged, negative exponents only on x and K, and
    wedge-nilpotent letters (form degree != 0) carrying exponent 1.
    Construct through :func:`make_word`; the constructor trusts its input.
    """

    __slots__ = ("factors", "_key", "_hash")

    def __init__(self, factors: tuple):
        self.factors = factors
        self._key = tuple(
            (signed_letter(g, e).position, abs(e)) for g, e in factors
        )
        self._hash = hash(self._key)

    def __eq__(self, other):
        return isinstance(other, Word) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._key < other._key

    def sort_key(self):
        return self._key

    def is_empty(self) -> bool:
        return not self.factors

    def __len__(self):
        """Letter count (exponents counted with multiplicity)."""
        return sum(abs(e) for _, e in self.factors)

    def form_degree(self) -> int:
        return sum(g.form_degree * e for g, e in self.factors)

    def letters(self):
        """The signed letters of the word, one per unit power."""
        out = []
        for g, e in self.factors:
            out.extend([signed_letter(g, e)] * abs(e))
        return out

    def sectors(self):
        return {g.sector for g, _ in self.factors}

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join(
            g.name if e == 1 else f"{g.name}^{e}" for g, e in self.factors
        )

    def __repr__(self):
        return f"Word({self})"


EMPTY_WORD = Word(())


def make_word(pairs) -> Word | None:
    """Build the canonical word for a factor sequence, or None if it is 0.

    Accepts generator objects or names; xinv/Kinv fold into negative powers
    of x/K.  Squares of wedge-nilpotent letters make the monomial vanish,
    which is reported as None.
    """
    stack: list[list] = []
    for g, e in pairs:
        if isinstance(g, str):
            g = generator(g)
        if g.is_alias:
            g = GENERATORS[g.inverse_name]
            e = -e
        if e == 0:
            continue
        if not isinstance(e, int):
            raise ValueError(f"exponent {e!r} of {g.name} is not an integer")
        if e < 0 and g not in INVERTIBLE:
            raise ValueError(f"negative power of {g.name} is not defined")
        if stack and stack[-1][0] is g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
                continue
        else:
            stack.append([g, e])
        ge, ee = stack[-1]
        if ge.form_degree != 0 and ee != 1:
            return None
        if ee < 0 and ge not in INVERTIBLE:
            raise ValueError(f"negative power of {ge.name} is not defined")
    return Word(tuple((g, e) for g, e in stack)) if stack else EMPTY_WORD


def single(name: str, exponent: int = 1) -> Word:
    w = make_word([(name, exponent)])
    assert w is not None
    return w


class Element:
    """A finite linear combination of words with QScalar coefficients.

    Canonical: no zero coefficients are stored, equality is map equality.
    Scalar multiples use ``*``; products of elements need a relation table
    and live in :mod:`qcartan.normalizer`.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for w, c in terms.items():
                if w is None or not c:
                    continue
                prev = clean.get(w)
                if prev is None:
                    clean[w] = c
                else:
                    s = prev + c
                    if s:
                        clean[w] = s
                    else:
                        del clean[w]
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> "Element":
        e = cls.__new__(cls)
        e._terms = terms
        return e

    @classmethod
    def zero(cls) -> "Element":
        return cls._raw({})

    @classmethod
    def one(cls) -> "Element":
        return cls._raw({EMPTY_WORD: ONE})

    @classmethod
    def scalar(cls, c) -> "Element":
        c = c if isinstance(c, QScalar) else QScalar.rational(c)
        return cls._raw({EMPTY_WORD: c} if c else {})

    @classmethod
    def from_word(cls, word: Word | None, coeff=ONE) -> "Element":
        coeff = coeff if isinstance(coeff, QScalar) else QScalar.rational(coeff)
        if word is None or not coeff:
            return cls._raw({})
        return cls._raw({word: coeff})

    @classmethod
    def from_letter(cls, name: str, exponent: int = 1) -> "Element":
        return cls.from_word(make_word([(name, exponent)]))

    # -- queries -----------------------------------------------------

    def terms(self):
        return self._terms.items()

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: t[0].sort_key())

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        return isinstance(other, Element) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset((w, c) for w, c in self._terms.items()))

    def coefficient(self, word: Word) -> QScalar:
        return self._terms.get(word, QScalar.zero())

    def form_degree(self) -> int | None:
        """Common form degree of all terms; None if mixed, 0 if zero."""
        degrees = {w.form_degree() for w in self._terms}
        if not degrees:
            return 0
        if len(degrees) > 1:
            return None
        return degrees.pop()

    def sectors(self):
        out = set()
        for w in self._terms:
            out |= w.sectors()
        return out

    # -- linear structure ----------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        terms = dict(self._terms)
        for w, c in other._terms.items():
            prev = terms.get(w)
            if prev is None:
                terms[w] = c
            else:
                s = prev + c
                if s:
                    terms[w] = s
                else:
                    del terms[w]
        return Element._raw(terms)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Element._raw({w: -c for w, c in self._terms.items()})

    def __mul__(self, scalar):
        if isinstance(scalar, Element):
            raise TypeError(
                "products of elements need a relation table; "
                "use qcartan.normalizer.multiply"
            )
        scalar = scalar if isinstance(scalar, QScalar) else QScalar.rational(scalar)
        if not scalar:
            return Element._raw({})
        return Element._raw({w: c * scalar for w, c in self._terms.items()})

    __rmul__ = __mul__

    # -- specialization & printing -------------------------------------

    def evaluate(self, q_value) -> dict[Word, Fraction]:
        """Specialize every coefficient at a rational q; exact."""
        out = {}
        for w, c in self._terms.items():
            v = c.evaluate(q_value)
            if v:
                out[w] = v
        return out

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            if w.is_empty():
                text = str(c) if c.is_monomial() else f"({c})"
            elif c == ONE:
                text = str(w)
            else:
                text = f"({c}) {w}"
            parts.append(text)
        return " + ".join(parts)

    def __repr__(self):
        return f"Element({self})"


def concat(a: Element, b: Element) -> Element:
    """Free (unnormalized) product: wordwise concatenation.

    Adjacent powers merge; monomials killed by wedge nilpotency drop out.
    """
    terms: dict[Word, QScalar] = {}
    for wa, ca in a.terms():
        for wb, cb in b.terms():
            w = make_word(wa.factors + wb.factors)
            if w is None:
                continue
            c = ca * cb
            prev = terms.get(w)
            if prev is None:
                terms[w] = c
            else:
                s = prev + c
                if s:
                    terms[w] = s
                else:
                    del terms[w]
    return Element._raw(terms)
