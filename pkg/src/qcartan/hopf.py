"""Tensor-square/cube arithmetic and Hopf structures.

Two presentations ship here: the coordinate algebra (group-like x, the
twisted primitive y, the primitive z) and the Lie-generator algebra with
the group-like K = q**Tx that makes its coproducts finite expressions.
The duality module builds a third presentation on the same machinery.
All Hopf-carrying letters have form degree zero, so tensor slots multiply
and normalize independently with no crossing signs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalars import ONE, QScalar
from .words import EMPTY_WORD, Element, make_word, signed_letter
from .normalizer import multiply, normalize
from .calculus import CheckReport, CheckResult


class TensorElement:
    """Linear combination of word tuples (arity 2 or 3), slotwise canonical."""

    __slots__ = ("arity", "_terms")

    def __init__(self, arity: int, terms=None):
        if arity not in (2, 3):
            raise ValueError("tensor arity must be 2 or 3")
        self.arity = arity
        clean = {}
        if terms:
            for key, c in terms.items():
                if not c:
                    continue
                prev = clean.get(key)
                if prev is None:
                    clean[key] = c
                else:
                    s = prev + c
                    if s:
                        clean[key] = s
                    else:
                        del clean[key]
        self._terms = clean

    @classmethod
    def _raw(cls, arity, terms):
        t = cls.__new__(cls)
        t.arity = arity
        t._terms = terms
        return t

    @classmethod
    def unit(cls, arity: int) -> "TensorElement":
        return cls(arity, {(EMPTY_WORD,) * arity: ONE})

    def terms(self):
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def __eq__(self, other):
        return (
            isinstance(other, TensorElement)
            and self.arity == other.arity
            and self._terms == other._terms
        )

    def __add__(self, other):
        if not isinstance(other, TensorElement) or other.arity != self.arity:
            return NotImplemented
        terms = dict(self._terms)
        for k, c in other._terms.items():
            prev = terms.get(k)
            s = c if prev is None else prev + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return TensorElement._raw(self.arity, terms)

    def __sub__(self, other):
        if not isinstance(other, TensorElement) or other.arity != self.arity:
            return NotImplemented
        return self + (-1) * other

    def __mul__(self, scalar):
        scalar = scalar if isinstance(scalar, QScalar) else QScalar.rational(scalar)
        return TensorElement._raw(
            self.arity, {k: c * scalar for k, c in self._terms.items()} if scalar else {}
        )

    __rmul__ = __mul__

    def __str__(self):
        if not self._terms:
            return "0"
        keys = sorted(self._terms, key=lambda k: tuple(w.sort_key() for w in k))
        parts = []
        for k in keys:
            c = self._terms[k]
            body = " (x) ".join(str(w) for w in k)
            parts.append(body if c == ONE else f"({c}) {body}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TensorElement({self})"


def tensor(*elements: Element) -> TensorElement:
    """Outer product of 2 or 3 elements."""
    arity = len(elements)
    out = {}
    if arity == 2:
        a, b = elements
        for wa, ca in a.terms():
            for wb, cb in b.terms():
                out[(wa, wb)] = out.get((wa, wb), QScalar.zero()) + ca * cb
    else:
        a, b, c = elements
        for wa, ca in a.terms():
            for wb, cb in b.terms():
                for wc, cc in c.terms():
                    key = (wa, wb, wc)
                    out[key] = out.get(key, QScalar.zero()) + ca * cb * cc
    return TensorElement(len(elements), out)


def tensor_mul(a: TensorElement, b: TensorElement, table) -> TensorElement:
    """(u1 (x) u2)(v1 (x) v2) = u1 v1 (x) u2 v2, slots normalized."""
    if a.arity != b.arity:
        raise ValueError("tensor arities differ")
    out = TensorElement(a.arity, {})
    for ka, ca in a.terms():
        for kb, cb in b.terms():
            slots = [
                normalize(Element.from_word(make_word(wa.factors + wb.factors)),
                          table)
                for wa, wb in zip(ka, kb)
            ]
            piece = tensor(*slots) * (ca * cb)
            out = out + piece
    return out


def map_slot(t: TensorElement, slot: int, fn) -> TensorElement:
    """Apply an Element-valued word map to one slot, keeping arity + 1
    bookkeeping to the caller (fn returns TensorElement for coproducts)."""
    out = None
    for key, c in t.terms():
        img = fn(key[slot])
        if isinstance(img, TensorElement):
            arity = t.arity - 1 + img.arity
            acc = {}
            for ikey, ic in img.terms():
                new_key = key[:slot] + ikey + key[slot + 1:]
                acc[new_key] = acc.get(new_key, QScalar.zero()) + c * ic
            piece = TensorElement(arity, acc)
        else:
            acc = {}
            for iw, ic in img.terms():
                new_key = key[:slot] + (iw,) + key[slot + 1:]
                acc[new_key] = acc.get(new_key, QScalar.zero()) + c * ic
            piece = TensorElement(t.arity, acc)
        out = piece if out is None else out + piece
    if out is None:
        return TensorElement(t.arity, {})
    return out


@dataclass(frozen=True)
class HopfPresentation:
    """Generator images of coproduct, counit and antipode for one algebra.

    Maps are keyed by signed letter name; the extension is multiplicative
    for the coproduct and counit and anti-multiplicative for the antipode.
    """

    name: str
    letters: tuple[str, ...]
    delta: dict
    eps: dict
    antipode_map: dict

    def check_letter(self, gen, exponent):
        name = signed_letter(gen, exponent).name
        if name not in self.delta:
            raise ValueError(
                f"letter {name} is outside the {self.name} presentation"
            )
        return name


def _coordinate_presentation() -> HopfPresentation:
    x = Element.from_letter("x")
    xinv = Element.from_letter("x", -1)
    y = Element.from_letter("y")
    z = Element.from_letter("z")
    one = Element.one()
    delta = {
        "x": tensor(x, x),
        "xinv": tensor(xinv, xinv),  # forced by group-likeness of x
        "y": tensor(x, y) + tensor(y, x),
        "z": tensor(z, one) + tensor(one, z),
    }
    eps = {"x": ONE, "xinv": ONE, "y": QScalar.zero(), "z": QScalar.zero()}
    from .words import concat

    antipode = {
        "x": xinv,
        "xinv": x,
        "y": -concat(concat(xinv, y), xinv),
        "z": -z,
    }
    return HopfPresentation("A", ("x", "xinv", "y", "z"), delta, eps, antipode)


def _lie_presentation() -> HopfPresentation:
    tx = Element.from_letter("Tx")
    ty = Element.from_letter("Ty")
    tz = Element.from_letter("Tz")
    k = Element.from_letter("K")
    kinv = Element.from_letter("K", -1)
    one = Element.one()
    delta = {
        "Tx": tensor(tx, one) + tensor(one, tx),
        "Ty": tensor(ty, one) + tensor(k, ty),
        "Tz": tensor(tz, one) + tensor(k, tz),
        "K": tensor(k, k),
        "Kinv": tensor(kinv, kinv),
    }
    zero = QScalar.zero()
    eps = {"Tx": zero, "Ty": zero, "Tz": zero, "K": ONE, "Kinv": ONE}
    from .words import concat

    antipode = {
        "Tx": -tx,
        "Ty": -concat(kinv, ty),
        "Tz": -concat(kinv, tz),
        "K": kinv,
        "Kinv": k,
    }
    return HopfPresentation("U", ("Tx", "Ty", "Tz", "K", "Kinv"),
                            delta, eps, antipode)


_PRESENTATIONS: dict[str, HopfPresentation] = {}


def presentation(alg) -> HopfPresentation:
    if isinstance(alg, HopfPresentation):
        return alg
    if not _PRESENTATIONS:
        _PRESENTATIONS["A"] = _coordinate_presentation()
        _PRESENTATIONS["U"] = _lie_presentation()
    try:
        return _PRESENTATIONS[alg]
    except KeyError:
        raise ValueError(f"unknown Hopf presentation {alg!r}") from None


def coproduct(alg, e: Element, table) -> TensorElement:
    """Multiplicative extension of the generator coproducts."""
    pres = presentation(alg)
    out = TensorElement(2, {})
    for word, coeff in e.terms():
        acc = TensorElement.unit(2)
        for g, exp in word.factors:
            name = pres.check_letter(g, exp)
            img = pres.delta[name]
            for _ in range(abs(exp)):
                acc = tensor_mul(acc, img, table)
        out = out + acc * coeff
    return out


def counit(alg, e: Element) -> QScalar:
    """Multiplicative-linear extension of the generator counits."""
    pres = presentation(alg)
    total = QScalar.zero()
    for word, coeff in e.terms():
        value = ONE
        for g, exp in word.factors:
            name = pres.check_letter(g, exp)
            value = value * pres.eps[name] ** abs(exp)
            if not value:
                break
        total = total + coeff * value
    return total


def antipode(alg, e: Element, table) -> Element:
    """Anti-multiplicative extension of the generator antipodes."""
    pres = presentation(alg)
    out = Element.zero()
    for word, coeff in e.terms():
        acc = Element.one()
        for g, exp in reversed(word.factors):
            name = pres.check_letter(g, exp)
            img = pres.antipode_map[name]
            for _ in range(abs(exp)):
                acc = multiply(acc, img, table)
        out = out + coeff * acc
    return out


# ---------------------------------------------------------------------------
# axiom sweep

def _letter_products(pres: HopfPresentation, max_len: int):
    """All products of presentation letters up to the given length."""
    words = [EMPTY_WORD]
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for seq in frontier:
            for name in pres.letters:
                new = seq + (name,)
                w = make_word((n, 1) for n in new)
                if w is not None:
                    nxt.append(new)
                    words.append(w)
        frontier = nxt
    # separate surviving distinct words but keep duplicates cheap to skip
    seen = set()
    out = []
    for w in words:
        if w not in seen:
            seen.add(w)
            out.append(w)
    return out


def check_hopf_axioms(alg, max_len: int, table) -> "HopfReport":
    """Coassociativity, counit and antipode laws, and the homomorphism
    property of the coproduct, on all letter products up to max_len."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    pres = presentation(alg)
    words = _letter_products(pres, max_len)
    results = []
    delta = {}
    for w in words:
        e = normalize(Element.from_word(w), table)
        d = coproduct(pres, e, table)
        delta[w] = d

        cop_left = map_slot(d, 0, lambda wd: coproduct(pres, Element.from_word(wd), table))
        cop_right = map_slot(d, 1, lambda wd: coproduct(pres, Element.from_word(wd), table))
        ok = cop_left == cop_right
        results.append(CheckResult(
            f"{pres.name} coassociativity {w}", ok,
            "" if ok else f"{cop_left} != {cop_right}"))

        collapse_l = Element.zero()
        collapse_r = Element.zero()
        for (w1, w2), c in d.terms():
            collapse_l = collapse_l + (c * counit(pres, Element.from_word(w1))) * Element.from_word(w2)
            collapse_r = collapse_r + (c * counit(pres, Element.from_word(w2))) * Element.from_word(w1)
        ok = collapse_l == e and collapse_r == e
        results.append(CheckResult(
            f"{pres.name} counit law {w}", ok,
            "" if ok else f"{collapse_l} / {collapse_r} != {e}"))

        target = Element.scalar(counit(pres, e))
        left = Element.zero()
        right = Element.zero()
        for (w1, w2), c in d.terms():
            left = left + c * multiply(antipode(pres, Element.from_word(w1), table),
                                       Element.from_word(w2), table)
            right = right + c * multiply(Element.from_word(w1),
                                         antipode(pres, Element.from_word(w2), table),
                                         table)
        ok = left == target and right == target
        results.append(CheckResult(
            f"{pres.name} antipode law {w}", ok,
            "" if ok else f"{left} / {right} != {target}"))

    # homomorphism property on pairs
    for a in words:
        if a.is_empty():
            continue
        for b in words:
            if b.is_empty() or len(a) + len(b) > max_len:
                continue
            ea, eb = Element.from_word(a), Element.from_word(b)
            lhs = coproduct(pres, multiply(ea, eb, table), table)
            rhs = tensor_mul(delta[a], delta[b], table)
            ok = lhs == rhs
            results.append(CheckResult(
                f"{pres.name} coproduct homomorphism {a} | {b}", ok,
                "" if ok else f"{lhs} != {rhs}"))
    return CheckReport(f"Hopf axioms ({pres.name})", tuple(results))
