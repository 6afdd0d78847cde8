"""Normal-ordering rewrite engine.

Words reduce to a unique normal form by repeatedly rewriting adjacent
out-of-order letter pairs with the table rules.  Every rule either swaps
the pair (dropping one inversion) or emits terms with strictly fewer
operator-sector letters, so the measure

    (#operator letters, #inversions, letter count)

decreases lexicographically at each step and reduction terminates.
Results are strategy-independent whenever the table is locally confluent,
which :func:`check_local_confluence` sweeps for exhaustively.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .scalars import ONE, QScalar
from .words import Element, Word, make_word, signed_letter


class MissingRuleError(Exception):
    """An out-of-order letter pair has no rewrite rule.

    The calculus leaves several cross-tables unprinted (one-forms against
    differentials, Lie generators against partials, inner derivations
    against Lie generators, ...): expand the derived generators first
    instead of normalizing across them.
    """

    def __init__(self, left, right):
        self.left = left
        self.right = right
        super().__init__(
            f"no rule orders {left.name} past {right.name}; "
            "expand derived generators before normalizing"
        )


def _positions(factors):
    """Indices i where factors[i], factors[i+1] are out of normal order."""
    out = []
    prev = None
    for i, (g, e) in enumerate(factors):
        pos = signed_letter(g, e).position
        if prev is not None and prev > pos:
            out.append(i - 1)
        prev = pos
    return out


def _rewrite_at(factors, i, table):
    """Apply the table rule at the factor boundary (i, i+1).

    Returns a list of (new_factors_or_None, QScalar) replacement terms.
    """
    g, a = factors[i]
    h, b = factors[i + 1]
    u = signed_letter(g, a)
    v = signed_letter(h, b)
    rhs = table.rewrite(u, v)
    if rhs is None:
        raise MissingRuleError(u, v)
    s = 1 if a > 0 else -1
    t = 1 if b > 0 else -1
    left = factors[:i] if a == s else factors[:i] + ((g, a - s),)
    right = factors[i + 2:] if b == t else ((h, b - t),) + factors[i + 2:]
    out = []
    for w, c in rhs.terms():
        out.append((make_word(left + w.factors + right), c))
    return out


def _pick_leftmost(_word, positions, _rng):
    return positions[0]


def _pick_rightmost(_word, positions, _rng):
    return positions[-1]


def _pick_random(_word, positions, rng):
    return rng.choice(positions)


_PICKERS = {
    "leftmost": _pick_leftmost,
    "rightmost": _pick_rightmost,
    "random": _pick_random,
}


def _normal_form(word: Word, table, cache: dict, pick, rng) -> dict:
    """Memoized reduction of a single word; returns {word: coeff}.

    Iterative post-order over the rewrite dag: children of a word are the
    replacement terms of one rule application at the picked position.  The
    picked position is a function of the word (fixed once per cache), so
    each strategy is deterministic and safely memoizable.
    """
    pending: dict[Word, list] = {}
    stack = [word]
    while stack:
        cur = stack[-1]
        if cur in cache:
            stack.pop()
            continue
        children = pending.get(cur)
        if children is None:
            positions = _positions(cur.factors)
            if not positions:
                cache[cur] = {cur: ONE}
                stack.pop()
                continue
            i = pick(cur, positions, rng)
            children = [
                (w, c) for w, c in _rewrite_at(cur.factors, i, table)
                if w is not None
            ]
            pending[cur] = children
        todo = [w for w, _ in children if w not in cache]
        if todo:
            stack.extend(todo)
            continue
        acc: dict[Word, QScalar] = {}
        for w, c in children:
            for nw, nc in cache[w].items():
                prev = acc.get(nw)
                s = c * nc if prev is None else prev + c * nc
                if s:
                    acc[nw] = s
                else:
                    acc.pop(nw, None)
        cache[cur] = acc
        del pending[cur]
        stack.pop()
    return cache[word]


def normalize(e: Element, table, strategy: str = "leftmost", seed: int = 0) -> Element:
    """Reduce an element to its normal form under the table.

    Linear over scalars and idempotent.  Raises MissingRuleError when an
    out-of-order pair without a rule comes up during reduction.
    """
    pick = _PICKERS[strategy]
    if strategy == "leftmost":
        cache = table.normal_form_cache("leftmost")
        rng = None
    else:
        cache = {}
        rng = random.Random(seed)
    terms: dict[Word, QScalar] = {}
    for w, c in e.terms():
        for nw, nc in _normal_form(w, table, cache, pick, rng).items():
            prev = terms.get(nw)
            s = c * nc if prev is None else prev + c * nc
            if s:
                terms[nw] = s
            else:
                terms.pop(nw, None)
    return Element._raw(terms)


def multiply(a: Element, b: Element, table) -> Element:
    """Product in the quotient algebra: concatenate, then normalize."""
    from .words import concat

    return normalize(concat(a, b), table)


def commutator(a: Element, b: Element, table) -> Element:
    return multiply(a, b, table) - multiply(b, a, table)


@dataclass(frozen=True)
class NormalizationReport:
    input: Element
    output: Element
    steps: int
    strategy: str

    def __str__(self):
        return (
            f"{self.input}  ~>  {self.output}   "
            f"[{self.steps} steps, {self.strategy}]"
        )


def normalize_report(
    e: Element, table, strategy: str = "leftmost", seed: int = 0
) -> NormalizationReport:
    """Normalize while counting rule applications (uncached)."""
    pick = _PICKERS[strategy]
    rng = random.Random(seed)
    agenda = [(w, c) for w, c in e.terms()]
    done: dict[Word, QScalar] = {}
    steps = 0
    while agenda:
        w, c = agenda.pop()
        positions = _positions(w.factors)
        if not positions:
            prev = done.get(w)
            s = c if prev is None else prev + c
            if s:
                done[w] = s
            else:
                done.pop(w, None)
            continue
        steps += 1
        i = pick(w, positions, rng)
        for nw, nc in _rewrite_at(w.factors, i, table):
            if nw is not None:
                agenda.append((nw, c * nc))
    return NormalizationReport(e, Element._raw(done), steps, strategy)


# ---------------------------------------------------------------------------
# local confluence sweep


@dataclass(frozen=True)
class ConfluenceReport:
    max_len: int
    strategies: tuple[str, ...]
    words_checked: int
    words_skipped: int
    divergences: tuple = ()

    @property
    def passed(self) -> bool:
        return not self.divergences

    def __str__(self):
        verdict = "PASS" if self.passed else "FAIL"
        lines = [
            f"{verdict} confluence: {self.words_checked} words of length <= "
            f"{self.max_len}, strategies {', '.join(self.strategies)}; "
            f"{self.words_skipped} skipped (uncovered letter pairs); "
            f"{len(self.divergences)} divergences"
        ]
        for word, sa, sb in self.divergences:
            lines.append(f"  {word}: {sa} and {sb} disagree")
        return "\n".join(lines)


def _coverage(table):
    """Unordered letter-pair coverage and per-pair introduced letters."""
    covered = set()
    introduces = {}
    for rule in table.rules:
        u, v = rule.left, rule.right
        covered.add(frozenset((u.name, v.name)))
        extra = set()
        for w in rule.rhs._terms:
            for let in w.letters():
                if let.name not in (u.name, v.name):
                    extra.add(let.name)
        introduces[(u.name, v.name)] = extra
    # merging handles the inverse pairs structurally
    covered.add(frozenset(("x", "xinv")))
    covered.add(frozenset(("K", "Kinv")))
    return covered, introduces


def _closure_ok(names, covered, introduces):
    """Whether every pair reachable from the letter set `names` is covered."""
    names = set(names)
    while True:
        for a in names:
            for b in names:
                if a != b and frozenset((a, b)) not in covered:
                    return False
        grown = set(names)
        for pair, extra in introduces.items():
            if pair[0] in names and pair[1] in names:
                grown |= extra
        if grown == names:
            return True
        names = grown


def check_local_confluence(
    table, max_len: int, seeds=(1, 2, 3, 4, 5)
) -> ConfluenceReport:
    """Normalize every coverable word of length <= max_len under leftmost,
    rightmost and per-seed randomized strategies, and compare the results.

    Words whose letter closure hits a pair without a rule are skipped
    (they cannot be normalized at all); divergences are reported with the
    two strategies that disagree.
    """
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    letters = sorted({r.left.name for r in table.rules}
                     | {r.right.name for r in table.rules})
    covered, introduces = _coverage(table)
    strategies = ["leftmost", "rightmost"] + [f"random:{s}" for s in seeds]

    # Enumerate candidate words as signed-letter tuples, prefiltered by
    # pairwise rule coverage (with introduced-letter closure).
    ok_sets: dict[frozenset, bool] = {}
    subtree = [1] * (max_len + 1)  # sequences rooted at depth d, incl. the root
    for d in range(max_len - 1, -1, -1):
        subtree[d] = 1 + len(letters) * subtree[d + 1]
    words: list[Word] = []
    seen: set[Word] = set()
    skipped = 0
    stack = [((), frozenset())]
    while stack:
        prefix, nameset = stack.pop()
        for name in letters:
            names = nameset | {name}
            ok = ok_sets.get(names)
            if ok is None:
                ok = _closure_ok(names, covered, introduces)
                ok_sets[names] = ok
            seq = prefix + (name,)
            if not ok:
                skipped += subtree[len(seq)]
                continue
            w = make_word((n, 1) for n in seq)
            if w is not None and w not in seen:
                seen.add(w)
                words.append(w)
            if len(seq) < max_len:
                stack.append((seq, names))

    reference: dict[Word, Element] = {}
    cache = table.normal_form_cache("leftmost")
    for w in words:
        nf = _normal_form(w, table, cache, _pick_leftmost, None)
        reference[w] = Element._raw(dict(nf))

    divergences = []
    for strat in strategies[1:]:
        if strat == "rightmost":
            pick, rng = _pick_rightmost, None
        else:
            seed = int(strat.split(":")[1])
            rng = random.Random(seed)
            pick = _pick_random
        alt_cache: dict = {}
        for w in words:
            nf = Element._raw(dict(_normal_form(w, table, alt_cache, pick, rng)))
            if nf != reference[w]:
                divergences.append((w, "leftmost", strat))
    return ConfluenceReport(
        max_len=max_len,
        strategies=tuple(strategies),
        words_checked=len(words),
        words_skipped=skipped,
        divergences=tuple(divergences),
    )
