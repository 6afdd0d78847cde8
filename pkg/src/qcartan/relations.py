"""Commutation rules of the calculus, as validated data.

A relation table maps ordered letter pairs (left, right) with left past
right in normal order to a rewrite right-hand side.  The builtin
presentation carries the full rule set of the q-deformed 3d calculus:
coordinate, differential, one-form, partial-derivative, Lie-generator,
inner-derivation and Lie-derivative sectors, the derived rules for the
inverse of x, and the group-like K = q**Tx commuting with the Lie sector.

File format (one rule per line, '#' comments):

    <letter> . <letter> -> <element>

where an element is a +/- separated sum of terms `(<scalar>) f1 . f2 ...`
with factors `name^exp` and scalars in q^p/2 syntax; a bare number is a
constant term and the scalar `(1)` may be omitted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .scalars import ONE, QScalar, parse_scalar
from .words import (
    EMPTY_WORD,
    Element,
    Generator,
    Sector,
    Word,
    generator,
    make_word,
    signed_letter,
)

_OP_SECTORS = (Sector.PARTIAL, Sector.LIE, Sector.GROUPLIKE,
               Sector.INNER, Sector.LIEDERIV)


class RelationError(ValueError):
    """A rule set violates the table invariants, or a file fails to parse."""

    def __init__(self, message, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Rule:
    left: Generator
    right: Generator
    rhs: Element
    table_id: str
    origin: str  # "paper" | "derived" | "user"

    def lhs_word(self) -> Word:
        w = make_word([(self.left, 1), (self.right, 1)])
        assert w is not None
        return w

    def __str__(self):
        return f"{self.left.name} . {self.right.name} -> {_format_element(self.rhs)}"


def _op_count(word: Word) -> int:
    return sum(abs(e) for g, e in word.factors if g.sector in _OP_SECTORS)


class RelationTable:
    """An immutable, validated set of rewrite rules.

    Equality compares the pair -> right-hand-side map (provenance notes
    are carried along but do not affect identity).
    """

    def __init__(self, rules):
        rules = tuple(rules)
        by_pair: dict[tuple[int, int], Rule] = {}
        for rule in rules:
            key = (rule.left.position, rule.right.position)
            if key in by_pair:
                raise RelationError(
                    f"duplicate rule for pair {rule.left.name} . {rule.right.name}"
                )
            _validate_rule(rule)
            by_pair[key] = rule
        self.rules = tuple(
            by_pair[k] for k in sorted(by_pair)
        )
        self._by_pair = by_pair
        self._caches: dict[str, dict] = {}

    def rewrite(self, left: Generator, right: Generator) -> Element | None:
        rule = self._by_pair.get((left.position, right.position))
        return rule.rhs if rule is not None else None

    def rule(self, left, right) -> Rule | None:
        if isinstance(left, str):
            left = generator(left)
        if isinstance(right, str):
            right = generator(right)
        return self._by_pair.get((left.position, right.position))

    def for_table(self, table_id: str, origin: str | None = None):
        return [
            r for r in self.rules
            if r.table_id == table_id and (origin is None or r.origin == origin)
        ]

    def table_ids(self):
        return sorted({r.table_id for r in self.rules})

    def normal_form_cache(self, strategy: str) -> dict:
        # Reduction is pure; the cache only saves recomputation and is safe
        # to share between threads under the GIL.
        return self._caches.setdefault(strategy, {})

    def __eq__(self, other):
        if not isinstance(other, RelationTable):
            return NotImplemented
        return {k: v.rhs for k, v in self._by_pair.items()} == \
               {k: v.rhs for k, v in other._by_pair.items()}

    def __len__(self):
        return len(self.rules)

    def __repr__(self):
        return f"RelationTable({len(self.rules)} rules)"


def _validate_rule(rule: Rule):
    left, right = rule.left, rule.right
    pair = f"{left.name} . {right.name}"
    if left.position <= right.position:
        raise RelationError(
            f"rule {pair} is oriented the wrong way: left side already in normal order"
        )
    if rule.rhs.is_zero():
        raise RelationError(f"rule {pair} has an empty right-hand side")
    lhs_degree = left.form_degree + right.form_degree
    for w in rule.rhs._terms:
        if w.form_degree() != lhs_degree:
            raise RelationError(
                f"rule {pair}: form degree {w.form_degree()} of term {w} "
                f"differs from {lhs_degree}"
            )
    swap = make_word([(right, 1), (left, 1)])
    if swap is None or swap not in rule.rhs._terms:
        raise RelationError(f"rule {pair}: leading term must be the swapped pair")
    lhs_ops = _op_count(rule.lhs_word())
    for w in rule.rhs._terms:
        if w == swap:
            continue
        if (_op_count(w), len(w)) >= (lhs_ops, 2):
            raise RelationError(
                f"rule {pair}: term {w} does not decrease the rewrite measure"
            )
        if _has_inversion(w):
            raise RelationError(f"rule {pair}: term {w} is not normal ordered")


def _has_inversion(word: Word) -> bool:
    prev = None
    for g, e in word.factors:
        pos = signed_letter(g, e).position
        if prev is not None and prev > pos:
            return True
        prev = pos
    return False


# ---------------------------------------------------------------------------
# builtin presentation

# Rules are written exactly as the calculus states them, oriented so the
# left side is the out-of-order pair.  Three quadratic coordinate relations:
_COORD = """
y . x -> (q^-1) x . y
z . y -> (q^-1) y . z
z . x -> (q^-1) x . z
"""

# coordinates past differentials
_COORD_DIFF = """
x . dx -> dx . x
x . dy -> (q) dy . x
x . dz -> (q) dz . x
y . dx -> (q^-1) dx . y
y . dy -> dy . y
y . dz -> (q) dz . y
z . dx -> (q^-1) dx . z
z . dy -> (q^-1) dy . z
z . dz -> dz . z
"""

# wedge relations between the differentials (squares vanish structurally)
_DIFF_DIFF = """
dy . dx -> (-q^-1) dx . dy
dz . dy -> (-q^-1) dy . dz
dz . dx -> (-q^-1) dx . dz
"""

# partial derivatives past coordinates
_COORD_PARTIAL = """
px . x -> 1 + x . px
px . y -> (q^-1) y . px
px . z -> (q^-1) z . px
py . x -> (q) x . py
py . y -> 1 + y . py
py . z -> (q^-1) z . py
pz . x -> (q) x . pz
pz . y -> (q) y . pz
pz . z -> 1 + z . pz
"""

# partials among themselves (forced by d**2 = 0)
_PARTIAL_PARTIAL = """
py . px -> (q^-1) px . py
pz . px -> (q^-1) px . pz
pz . py -> (q^-1) py . pz
"""

# partial derivatives past differentials
_PARTIAL_DIFF = """
px . dx -> dx . px
px . dy -> (q^-1) dy . px
px . dz -> (q^-1) dz . px
py . dx -> (q) dx . py
py . dy -> dy . py
py . dz -> (q^-1) dz . py
pz . dx -> (q) dx . pz
pz . dy -> (q) dy . pz
pz . dz -> dz . pz
"""

# coordinates past the Cartan-Maurer one-forms
_OMEGA_COORD = """
x . wx -> wx . x
x . wy -> (q) wy . x
x . wz -> (q) wz . x
y . wx -> wx . y
y . wy -> (q) wy . y
y . wz -> (q) wz . y
z . wx -> wx . z
z . wy -> wy . z
z . wz -> wz . z
"""

# wedge relations among the one-forms
_OMEGA_OMEGA = """
wy . wx -> (-1) wx . wy
wz . wy -> (-1) wy . wz
wz . wx -> (-1) wx . wz
"""

# Lie generators past coordinates
_T_COORD = """
Tx . x -> x + x . Tx
Tx . y -> y + y . Tx
Tx . z -> z . Tx
Ty . x -> (q) x . Ty
Ty . y -> x + (q) y . Ty
Ty . z -> z . Ty
Tz . x -> (q) x . Tz
Tz . y -> (q) y . Tz
Tz . z -> 1 + z . Tz
"""

# the undeformed Lie algebra: generators commute
_T_T = """
Ty . Tx -> Tx . Ty
Tz . Tx -> Tx . Tz
Tz . Ty -> Ty . Tz
"""

# Lie generators past differentials
_T_DIFF = """
Tx . dx -> dx . Tx
Tx . dy -> dy . Tx
Tx . dz -> dz . Tx
Ty . dx -> (q) dx . Ty
Ty . dy -> (q) dy . Ty
Ty . dz -> dz . Ty
Tz . dx -> (q) dx . Tz
Tz . dy -> (q) dy . Tz
Tz . dz -> dz . Tz
"""

# Lie generators past one-forms
_T_OMEGA = """
Tx . wx -> wx . Tx - wx
Tx . wy -> wy . Tx - wy
Tx . wz -> wz . Tx
Ty . wx -> wx . Ty
Ty . wy -> wy . Ty - wx
Ty . wz -> wz . Ty
Tz . wx -> wx . Tz
Tz . wy -> wy . Tz
Tz . wz -> wz . Tz
"""

# inner derivations past coordinates
_INNER_COORD = """
ix . x -> x . ix
ix . y -> (q^-1) y . ix
ix . z -> (q^-1) z . ix
iy . x -> (q) x . iy
iy . y -> y . iy
iy . z -> (q^-1) z . iy
iz . x -> (q) x . iz
iz . y -> (q) y . iz
iz . z -> z . iz
"""

# inner derivations past partial derivatives
_INNER_PARTIAL = """
ix . px -> px . ix
ix . py -> (q) py . ix
ix . pz -> (q) pz . ix
iy . px -> (q^-1) px . iy
iy . py -> py . iy
iy . pz -> (q) pz . iy
iz . px -> (q^-1) px . iz
iz . py -> (q^-1) py . iz
iz . pz -> pz . iz
"""

# inner derivations past differentials (the contraction data)
_INNER_DIFF = """
ix . dx -> 1 - dx . ix
ix . dy -> (-q^-1) dy . ix
ix . dz -> (-q^-1) dz . ix
iy . dx -> (-q) dx . iy
iy . dy -> 1 - dy . iy
iy . dz -> (-q^-1) dz . iy
iz . dx -> (-q) dx . iz
iz . dy -> (-q) dy . iz
iz . dz -> 1 - dz . iz
"""

# inner derivations among themselves
_INNER_INNER = """
iy . ix -> (-q^-1) ix . iy
iz . ix -> (-q^-1) ix . iz
iz . iy -> (-q^-1) iy . iz
"""

# Lie derivatives past coordinates
_LIE_COORD = """
Lx . x -> 1 + x . Lx
Lx . y -> (q^-1) y . Lx
Lx . z -> (q^-1) z . Lx
Ly . x -> (q) x . Ly
Ly . y -> 1 + y . Ly
Ly . z -> (q^-1) z . Ly
Lz . x -> (q) x . Lz
Lz . y -> (q) y . Lz
Lz . z -> 1 + z . Lz
"""

# Lie derivatives past differentials
_LIE_DIFF = """
Lx . dx -> dx . Lx
Lx . dy -> (q^-1) dy . Lx
Lx . dz -> (q^-1) dz . Lx
Ly . dx -> (q) dx . Ly
Ly . dy -> dy . Ly
Ly . dz -> (q^-1) dz . Ly
Lz . dx -> (q) dx . Lz
Lz . dy -> (q) dy . Lz
Lz . dz -> dz . Lz
"""

# Lie derivatives past partial derivatives
_LIE_PARTIAL = """
Lx . px -> px . Lx
Lx . py -> (q) py . Lx
Lx . pz -> (q) pz . Lx
Ly . px -> (q^-1) px . Ly
Ly . py -> py . Ly
Ly . pz -> (q) pz . Ly
Lz . px -> (q^-1) px . Lz
Lz . py -> (q^-1) py . Lz
Lz . pz -> pz . Lz
"""

# Lie derivatives past inner derivations
_LIE_INNER = """
Lx . ix -> ix . Lx
Lx . iy -> (q) iy . Lx
Lx . iz -> (q) iz . Lx
Ly . ix -> (q^-1) ix . Ly
Ly . iy -> iy . Ly
Ly . iz -> (q) iz . Ly
Lz . ix -> (q^-1) ix . Lz
Lz . iy -> (q^-1) iy . Lz
Lz . iz -> iz . Lz
"""

# Lie derivatives among themselves
_LIE_LIE = """
Ly . Lx -> (q^-1) Lx . Ly
Lz . Lx -> (q^-1) Lx . Lz
Lz . Ly -> (q^-1) Ly . Lz
"""

# K = q**Tx commutes with the whole Lie sector ([Tx, T] = 0), so any
# function of Tx does; K never meets coordinates or forms.
_GROUPLIKE = """
K . Tx -> Tx . K
K . Ty -> Ty . K
K . Tz -> Tz . K
Kinv . Tx -> Tx . Kinv
Kinv . Ty -> Ty . Kinv
Kinv . Tz -> Tz . Kinv
"""

_PAPER_BLOCKS = [
    ("coord", _COORD),
    ("coord_diff", _COORD_DIFF),
    ("diff_diff", _DIFF_DIFF),
    ("coord_partial", _COORD_PARTIAL),
    ("partial_partial", _PARTIAL_PARTIAL),
    ("partial_diff", _PARTIAL_DIFF),
    ("omega_coord", _OMEGA_COORD),
    ("omega_omega", _OMEGA_OMEGA),
    ("t_coord", _T_COORD),
    ("t_t", _T_T),
    ("t_diff", _T_DIFF),
    ("t_omega", _T_OMEGA),
    ("inner_coord", _INNER_COORD),
    ("inner_partial", _INNER_PARTIAL),
    ("inner_diff", _INNER_DIFF),
    ("inner_inner", _INNER_INNER),
    ("lie_coord", _LIE_COORD),
    ("lie_diff", _LIE_DIFF),
    ("lie_partial", _LIE_PARTIAL),
    ("lie_inner", _LIE_INNER),
    ("lie_lie", _LIE_LIE),
]

_X = None
_XINV = None
_builtin = None


def builtin_presentation() -> RelationTable:
    """The full builtin rule set, including the derived x**-1 rules."""
    global _builtin
    if _builtin is None:
        rules = []
        for table_id, block in _PAPER_BLOCKS:
            for left, right, rhs in _parse_block(block):
                rules.append(Rule(left, right, rhs, table_id, "paper"))
        rules.extend(_derive_inverse_rules(rules))
        for left, right, rhs in _parse_block(_GROUPLIKE):
            rules.append(Rule(left, right, rhs, "grouplike", "derived"))
        _builtin = RelationTable(rules)
    return _builtin


def _parse_block(block: str):
    for line in block.strip().splitlines():
        left, right, rhs, _ = _parse_rule_line(line, line_no=None)
        yield left, right, rhs


def _derive_inverse_rules(paper_rules):
    """Adjoin the commutation rules of x**-1.

    From G . x -> a x G + R follows G . xinv -> a^-1 xinv G - a^-1 xinv R xinv,
    and from x . H -> b H x (all such rules are homogeneous) follows
    xinv . H -> b^-1 H xinv.  Remainders close under power merging alone,
    so no normalization pass is needed here.
    """
    x = generator("x")
    xinv = generator("xinv")
    derived = []
    for rule in paper_rules:
        if rule.right is x:
            g = rule.left
            swap = make_word([(x, 1), (g, 1)])
            alpha = rule.rhs.coefficient(swap)
            remainder = rule.rhs - Element.from_word(swap, alpha)
            inv_alpha = alpha.inverse()
            terms = {make_word([(xinv, 1), (g, 1)]): inv_alpha}
            rhs = Element(terms)
            for w, c in remainder.terms():
                wrapped = make_word(
                    ((x, -1),) + w.factors + ((x, -1),)
                )
                rhs = rhs + Element.from_word(wrapped, -(inv_alpha * c))
            derived.append(Rule(g, xinv, rhs, rule.table_id, "derived"))
        elif rule.left is x:
            h = rule.right
            swap = make_word([(h, 1), (x, 1)])
            beta = rule.rhs.coefficient(swap)
            if rule.rhs != Element.from_word(swap, beta):
                raise RelationError(
                    f"cannot derive inverse rule from inhomogeneous {rule}"
                )
            rhs = Element.from_word(make_word([(h, 1), (x, -1)]), beta.inverse())
            derived.append(Rule(xinv, h, rhs, rule.table_id, "derived"))
    return derived


# ---------------------------------------------------------------------------
# serialization

_FACTOR_RE = re.compile(r"^([A-Za-z]+)(?:\^(-?\d+))?$")


def _parse_word_text(text: str, line_no=None) -> Word | None:
    factors = []
    for chunk in text.split("."):
        chunk = chunk.strip()
        if chunk == "1" and not factors and text.strip() == "1":
            return EMPTY_WORD
        m = _FACTOR_RE.match(chunk)
        if m is None:
            raise RelationError(f"bad word factor {chunk!r}", line_no)
        name, exp = m.group(1), int(m.group(2) or 1)
        try:
            gen = generator(name)
        except KeyError as exc:
            raise RelationError(str(exc), line_no) from None
        factors.append((gen, exp))
    try:
        return make_word(factors)
    except ValueError as exc:
        raise RelationError(str(exc), line_no) from None


def _split_terms(text: str, line_no=None):
    """Split an element expression on top-level +/- into signed chunks."""
    depth = 0
    sign = 1
    start = 0
    out = []
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise RelationError("unbalanced parentheses", line_no)
        elif ch in "+-" and depth == 0:
            if text[:i].rstrip().endswith("^"):
                continue  # exponent sign, not a term separator
            chunk = text[start:i].strip()
            if chunk:
                out.append((sign, chunk))
                sign = 1
            if ch == "-":
                sign = -sign
            start = i + 1
    chunk = text[start:].strip()
    if not chunk:
        raise RelationError("dangling sign in element", line_no)
    out.append((sign, chunk))
    if depth:
        raise RelationError("unbalanced parentheses", line_no)
    return out


_TERM_RE = re.compile(r"^(?:\((?P<scalar>[^()]*)\))?\s*(?P<word>[^()]*)$")


def _parse_element_text(text: str, line_no=None) -> Element:
    total = Element.zero()
    for sign, chunk in _split_terms(text, line_no):
        m = _TERM_RE.match(chunk)
        if m is None:
            raise RelationError(f"bad element term {chunk!r}", line_no)
        scalar_text = m.group("scalar")
        word_text = m.group("word").strip()
        if scalar_text is not None:
            try:
                coeff = parse_scalar(scalar_text)
            except ValueError as exc:
                raise RelationError(str(exc), line_no) from None
        elif re.fullmatch(r"\d+(/\d+)?", word_text):
            coeff, word_text = parse_scalar(word_text), ""
        else:
            coeff = ONE
        word = _parse_word_text(word_text, line_no) if word_text else EMPTY_WORD
        total = total + Element.from_word(word, coeff * QScalar.rational(sign))
    return total


def _format_word(word: Word) -> str:
    if word.is_empty():
        return "1"
    return " . ".join(
        g.name if e == 1 else f"{g.name}^{e}" for g, e in word.factors
    )


def _format_element(e: Element) -> str:
    if e.is_zero():
        return "0"
    parts = []
    for w, c in e.sorted_terms():
        if w.is_empty():
            parts.append(f"({c})")
        elif c == ONE:
            parts.append(_format_word(w))
        else:
            parts.append(f"({c}) {_format_word(w)}")
    return " + ".join(parts)


_RULE_LINE_RE = re.compile(
    r"^(?P<lhs>[^>#]*?)->(?P<rhs>[^#]*?)(?:#\s*(?P<prov>.*))?$"
)


def _parse_rule_line(line: str, line_no=None):
    m = _RULE_LINE_RE.match(line.strip())
    if m is None:
        raise RelationError(f"expected '<pair> -> <element>' in {line.strip()!r}", line_no)
    lhs = _parse_word_text(m.group("lhs").strip(), line_no)
    if lhs is None or len(lhs) != 2:
        raise RelationError("left side must be a product of two letters", line_no)
    letters = lhs.letters()
    rhs = _parse_element_text(m.group("rhs").strip(), line_no)
    prov = (m.group("prov") or "").split()
    table_id = prov[0] if prov else "user"
    origin = prov[1] if len(prov) > 1 else "user"
    return letters[0], letters[1], rhs, (table_id, origin)


def load_presentation(text: str) -> RelationTable:
    """Parse a relation file; invariant violations are rejected."""
    rules = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        left, right, rhs, (table_id, origin) = _parse_rule_line(line, line_no)
        rules.append(Rule(left, right, rhs, table_id, origin))
    try:
        return RelationTable(rules)
    except RelationError:
        raise
    except ValueError as exc:
        raise RelationError(str(exc)) from None


def format_presentation(table: RelationTable) -> str:
    """Render a table in the relation-file format (round-trips exactly)."""
    lines = [
        "# Relation table for the q-deformed differential calculus on the",
        "# extended quantum 3d space.  One rule per line:",
        "#     <letter> . <letter> -> <element>   # <table> <origin>",
        ""
    ]
    by_table: dict[str, list[Rule]] = {}
    for rule in table.rules:
        by_table.setdefault(rule.table_id, []).append(rule)
    for table_id in sorted(by_table):
        lines.append(f"# --- {table_id}")
        for rule in sorted(
            by_table[table_id],
            key=lambda r: (r.left.position, r.right.position),
        ):
            lines.append(
                f"{rule.left.name} . {rule.right.name} -> "
                f"{_format_element(rule.rhs)}  # {rule.table_id} {rule.origin}"
            )
        lines.append("")
    return "\n".join(lines)


def load_presentation_file(path) -> RelationTable:
    with open(path, "r", encoding="utf-8") as fh:
        return load_presentation(fh.read())
