"""Duality pairing between the tangent algebra and the coordinate algebra.

The dual algebra is generated by the tangent vectors X, Y, Z (spelled with
the letters Tx, Ty, Tz here) together with the group-like letter K, which
in this module stands for the *half* power q**(X/2); q**X is then K^2 and
stays a word with integer exponents.  Generator pairings against the
monomial basis x^k y^l z^m:

    <X, f>    = k  [l = m = 0]
    <Y, f>    = 1  [l = 1, m = 0]
    <Z, f>    = 1  [l = 0, m = 1]
    <K^n, f>  = q^(n k / 2)  [l = m = 0]

and word pairings recurse through the coordinate coproduct, left factor
against left slot (differentiation acts from the right in this basis).

The unit pairs as <1, f> = eps(f) = [l = m = 0], the multiplicative
extension of eps(x) = 1.  The printed convention [k = 0] for the unit
contradicts eps(x) = 1 and would break <X, x^2> = 2; reports carry a note
flagging the choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import ONE, QScalar
from .words import Element, Sector, Word, make_word
from .normalizer import multiply, normalize, commutator
from .calculus import CheckReport, CheckResult
from .hopf import HopfPresentation, antipode, coproduct, tensor

EPS_CONVENTION_NOTE = (
    "unit pairing uses <1,f> = [l=0][m=0], the multiplicative extension of "
    "eps(x) = 1; the alternative [k=0] convention is inconsistent with the "
    "tangent-vector pairing and is flagged here rather than silently dropped"
)


@dataclass(frozen=True)
class Monomial:
    """Basis element x^k y^l z^m of the coordinate algebra."""

    k: int
    l: int
    m: int

    def __post_init__(self):
        if self.k < 0 or self.l < 0 or self.m < 0:
            raise ValueError("monomial exponents must be non-negative")

    def element(self) -> Element:
        return Element.from_word(
            make_word([("x", self.k), ("y", self.l), ("z", self.m)])
        )

    def __str__(self):
        return str(self.element())


_DUAL_LETTERS = ("Tx", "Ty", "Tz", "K", "Kinv")


def dual_presentation() -> HopfPresentation:
    """Hopf structure of the dual algebra (X primitive, K group-like,
    coproducts of Y and Z twisted by q**-X = K^-2)."""
    x_ = Element.from_letter("Tx")
    y_ = Element.from_letter("Ty")
    z_ = Element.from_letter("Tz")
    k = Element.from_letter("K")
    kinv = Element.from_letter("K", -1)
    kinv2 = Element.from_letter("K", -2)
    k2 = Element.from_letter("K", 2)
    one = Element.one()
    from .words import concat

    delta = {
        "Tx": tensor(x_, one) + tensor(one, x_),
        "Ty": tensor(y_, kinv2) + tensor(one, y_),
        "Tz": tensor(z_, kinv2) + tensor(one, z_),
        "K": tensor(k, k),
        "Kinv": tensor(kinv, kinv),
    }
    zero = QScalar.zero()
    eps = {"Tx": zero, "Ty": zero, "Tz": zero, "K": ONE, "Kinv": ONE}
    antipode_map = {
        "Tx": -x_,
        "Ty": -concat(y_, k2),
        "Tz": -concat(z_, k2),
        "K": kinv,
        "Kinv": k,
    }
    return HopfPresentation("dual", _DUAL_LETTERS, delta, eps, antipode_map)


_DUAL = None


def _dual():
    global _DUAL
    if _DUAL is None:
        _DUAL = dual_presentation()
    return _DUAL


def _monomial_exponents(word: Word) -> tuple[int, int, int]:
    k = l = m = 0
    for g, e in word.factors:
        if g.name == "x":
            k = e
        elif g.name == "y":
            l = e
        elif g.name == "z":
            m = e
        else:
            raise ValueError(f"{word} is not a coordinate monomial")
    return k, l, m


def _letter_pairing(name: str, k: int, l: int, m: int) -> QScalar:
    if name == "Tx":
        return QScalar.rational(k) if l == 0 and m == 0 else QScalar.zero()
    if name == "Ty":
        return ONE if l == 1 and m == 0 else QScalar.zero()
    if name == "Tz":
        return ONE if l == 0 and m == 1 else QScalar.zero()
    if name in ("K", "Kinv"):
        if l or m:
            return QScalar.zero()
        sign = 1 if name == "K" else -1
        return QScalar.q_power(Fraction(sign * k, 2))
    raise ValueError(f"letter {name} is outside the dual algebra")


def _unit_pairing(k: int, l: int, m: int) -> QScalar:
    # eps extended multiplicatively from eps(x) = 1; see module docstring
    return ONE if l == 0 and m == 0 else QScalar.zero()


def _pair_letters(letters, word: Word, table) -> QScalar:
    k, l, m = _monomial_exponents(word)
    if not letters:
        return _unit_pairing(k, l, m)
    if len(letters) == 1:
        return _letter_pairing(letters[0], k, l, m)
    head, rest = letters[0], letters[1:]
    delta = coproduct("A", Element.from_word(word), table)
    total = QScalar.zero()
    for (w1, w2), c in delta.terms():
        k1, l1, m1 = _monomial_exponents(w1)
        first = _letter_pairing(head, k1, l1, m1)
        if not first:
            continue
        total = total + c * first * _pair_letters(rest, w2, table)
    return total


def pair(u: Element, f, table) -> QScalar:
    """Bilinear duality pairing <u, f>.

    u is an element of the dual algebra; f is a Monomial or any element of
    the coordinate algebra (normalized first, so the value is independent
    of the representation).
    """
    if isinstance(f, Monomial):
        f = f.element()
    for sector in f.sectors():
        if sector is not Sector.COORD:
            raise ValueError("pairing is defined on the coordinate algebra")
    u = normalize(u, table)
    f = normalize(f, table)
    total = QScalar.zero()
    for uw, uc in u.terms():
        letters = [g.name for g in uw.letters()]
        for fw, fc in f.terms():
            total = total + uc * fc * _pair_letters(letters, fw, table)
    return total


def monomials(max_exp: int):
    return [
        Monomial(k, l, m)
        for k in range(max_exp + 1)
        for l in range(max_exp + 1)
        for m in range(max_exp + 1)
    ]


def check_dual_relations(max_exp: int, table) -> CheckReport:
    """The dual generators commute: <XY - YX, f> = 0 on the monomial basis
    (and <XY, f> reproduces the Y pairing)."""
    if max_exp < 2:
        raise ValueError("max_exp must be at least 2")
    x_ = Element.from_letter("Tx")
    y_ = Element.from_letter("Ty")
    z_ = Element.from_letter("Tz")
    from .words import concat

    pairs = [("XY-YX", x_, y_), ("XZ-ZX", x_, z_), ("YZ-ZY", y_, z_)]
    results = []
    for f in monomials(max_exp):
        for label, a, b in pairs:
            value = pair(concat(a, b) - concat(b, a), f, table)
            ok = value.is_zero()
            results.append(CheckResult(
                f"<{label}, {f}>", ok, "" if ok else f"value {value}"))
        got = pair(concat(x_, y_), f, table)
        # Supported exactly on l = 1, m = 0, where the coproduct forces the
        # value k + 1 (the printed constant-1 form only holds at k = 0).
        expected = (
            QScalar.rational(f.k + 1) if f.l == 1 and f.m == 0
            else QScalar.zero()
        )
        ok = got == expected
        results.append(CheckResult(
            f"<XY, {f}> supported on the Y pairing", ok,
            "" if ok else f"{got} != {expected}"))
    return CheckReport("dual commutation relations", tuple(results),)


def check_dual_hopf(max_exp: int, table) -> CheckReport:
    """Duality transposes product against coproduct, unit against counit,
    and antipode against antipode."""
    if max_exp < 1:
        raise ValueError("max_exp must be at least 1")
    dual = _dual()
    gens = {
        "X": Element.from_letter("Tx"),
        "Y": Element.from_letter("Ty"),
        "Z": Element.from_letter("Tz"),
    }
    results = [CheckResult("note", True, EPS_CONVENTION_NOTE)]
    monos = monomials(max_exp)
    for label, u in gens.items():
        du = coproduct(dual, u, table)
        for f in monos:
            for g in monos:
                lhs = pair(u, multiply(f.element(), g.element(), table), table)
                rhs = QScalar.zero()
                for (u1, u2), c in du.terms():
                    left = pair(Element.from_word(u1), f, table)
                    if not left:
                        continue
                    rhs = rhs + c * left * pair(Element.from_word(u2), g, table)
                ok = lhs == rhs
                results.append(CheckResult(
                    f"<{label}, {f}.{g}> via coproduct", ok,
                    "" if ok else f"{lhs} != {rhs}"))
    # unit vs counit on the basis
    for f in monos:
        got = pair(Element.one(), f, table)
        expected = _unit_pairing(f.k, f.l, f.m)
        ok = got == expected
        results.append(CheckResult(
            f"<1, {f}> = eps({f})", ok, "" if ok else f"{got} != {expected}"))
    # antipode transposition on the generators
    for label, u in gens.items():
        su = antipode(dual, u, table)
        for name in ("x", "y", "z"):
            f = Element.from_letter(name)
            lhs = pair(su, f, table)
            rhs = pair(u, antipode("A", f, table), table)
            ok = lhs == rhs
            results.append(CheckResult(
                f"<S({label}), {name}> = <{label}, S({name})>", ok,
                "" if ok else f"{lhs} != {rhs}"))
    return CheckReport("duality vs Hopf structure", tuple(results))


def check_identification(table) -> CheckReport:
    """The substitution Tx = X, Ty = q^(X/2) Y q^(X/2), Tz = q^(X/2) Z q^(X/2)
    carries the dual Hopf structure onto the Lie-generator one.

    With K = q^(X/2) the substituted generators are K Y K and K Z K; the
    checks confirm they commute pairwise, their coproducts reduce to
    T (x) 1 + K^2 (x) T, and their antipodes to -K^-2 T.
    """
    dual = _dual()
    k = Element.from_letter("K")
    k2 = Element.from_letter("K", 2)
    kinv2 = Element.from_letter("K", -2)
    subst = {
        "Tx": Element.from_letter("Tx"),
        "Ty": multiply(multiply(k, Element.from_letter("Ty"), table), k, table),
        "Tz": multiply(multiply(k, Element.from_letter("Tz"), table), k, table),
    }
    results = []
    names = ("Tx", "Ty", "Tz")
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            comm = commutator(subst[a], subst[b], table)
            ok = comm.is_zero()
            results.append(CheckResult(
                f"substituted {a}, {b} commute", ok,
                "" if ok else f"commutator {comm}"))
    one = Element.one()
    for name in ("Ty", "Tz"):
        t_sub = subst[name]
        got = coproduct(dual, t_sub, table)
        expected = tensor(t_sub, one) + tensor(multiply(k2, one, table), t_sub)
        ok = got == expected
        results.append(CheckResult(
            f"coproduct of substituted {name} matches the Lie presentation",
            ok, "" if ok else f"{got} != {expected}"))

        got_s = antipode(dual, t_sub, table)
        expected_s = -multiply(kinv2, t_sub, table)
        ok = got_s == expected_s
        results.append(CheckResult(
            f"antipode of substituted {name} matches the Lie presentation",
            ok, "" if ok else f"{got_s} != {expected_s}"))
    got = coproduct(dual, subst["Tx"], table)
    expected = tensor(subst["Tx"], one) + tensor(one, subst["Tx"])
    results.append(CheckResult(
        "coproduct of substituted Tx is primitive", got == expected))
    got_s = antipode(dual, subst["Tx"], table)
    results.append(CheckResult(
        "antipode of substituted Tx is -Tx", got_s == -subst["Tx"]))
    return CheckReport("dual-to-Lie identification", tuple(results))


def pairing_matrix(max_word_len: int, max_total_degree: int, table):
    """Pairing values between dual words and coordinate monomials.

    Rows: words in X, Y, Z up to the length bound; columns: monomials of
    total degree up to the bound.  Returned as (rows, cols, matrix of
    QScalar).
    """
    letters = ("Tx", "Ty", "Tz")
    rows = [()]
    frontier = [()]
    for _ in range(max_word_len):
        frontier = [seq + (n,) for seq in frontier for n in letters]
        rows.extend(frontier)
    row_words = []
    seen = set()
    for seq in rows:
        # distinct basis words of the commutative dual algebra
        nf = normalize(Element.from_word(make_word((n, 1) for n in seq)), table)
        (w, _), = nf.terms()
        if w not in seen:
            seen.add(w)
            row_words.append(w)
    cols = [
        Monomial(k, l, m)
        for k in range(max_total_degree + 1)
        for l in range(max_total_degree + 1 - k)
        for m in range(max_total_degree + 1 - k - l)
    ]
    matrix = [
        [pair(Element.from_word(w), f, table) for f in cols]
        for w in row_words
    ]
    return row_words, cols, matrix


def matrix_rank_at(matrix, q_value) -> int:
    """Rank of a QScalar matrix specialized at a rational q (exact
    Gaussian elimination over the rationals).

    Full rank at any specialization is a certificate of generic full rank.
    """
    rows = [[c.evaluate(q_value) for c in row] for row in matrix]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col]:
                factor = rows[r][col] / pv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank
