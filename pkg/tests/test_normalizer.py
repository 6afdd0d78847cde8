import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qcartan.normalizer import (
    MissingRuleError,
    check_local_confluence,
    multiply,
    normalize,
    normalize_report,
)
from qcartan.parser import parse_element
from qcartan.scalars import Q, Q_INV
from qcartan.words import Element, make_word


def nf(text, table):
    return normalize(parse_element(text), table)


def test_coordinate_swap(table):
    assert nf("y*x", table) == Q_INV * parse_element("x*y")


def test_coordinate_differential_swap(table):
    assert nf("x*dy", table) == Q * parse_element("dy*x")


def test_differential_wedge_swap(table):
    assert nf("dy*dx", table) == -Q_INV * parse_element("dx*dy")


def test_multiply_inverse_pair(table):
    assert multiply(parse_element("x"), parse_element("xinv"), table) == Element.one()


def test_multiply_wedge_square_is_zero(table):
    assert multiply(parse_element("dx"), parse_element("dx"), table).is_zero()


def test_multiply_partial_coordinate(table):
    got = multiply(parse_element("px"), parse_element("x"), table)
    assert got == parse_element("1 + x*px")


def test_normalize_is_idempotent(table):
    e = parse_element("Ly*px*y*dx - 2*z*dz*iy")
    once = normalize(e, table)
    assert normalize(once, table) == once


def test_normalize_is_linear(table):
    a = parse_element("y*x*dx")
    b = parse_element("pz*z^2")
    lhs = normalize(a + Q * b, table)
    assert lhs == normalize(a, table) + Q * normalize(b, table)


def test_normal_form_sorts_all_sectors(table):
    for text in ("Lx*ix*px*x*dx", "Kinv*Ty*K*Tx"):
        e = nf(text, table)
        assert not e.is_zero()
        for word, _ in e.terms():
            positions = [g.position for g in word.letters()]
            assert positions == sorted(positions)


def test_form_degree_is_conserved(table):
    for text in ("y*dx*z", "dz*dy*x", "iy*dx*dy", "px*dx*y"):
        e = parse_element(text)
        degree = e.form_degree()
        assert normalize(e, table).form_degree() in (degree, 0)


def test_top_form_wedges_vanish(table):
    # any wedge of four differentials lives above the top form
    for names in itertools.product(("dx", "dy", "dz"), repeat=4):
        e = Element.from_word(make_word((n, 1) for n in names))
        assert normalize(e, table).is_zero()


def test_missing_rule_raises(table):
    with pytest.raises(MissingRuleError) as info:
        nf("wx*dx", table)
    assert info.value.left.name == "wx"
    assert info.value.right.name == "dx"
    with pytest.raises(MissingRuleError):
        nf("Tx*px", table)
    with pytest.raises(MissingRuleError):
        nf("ix*Tx", table)


def test_inhomogeneous_chain(table):
    # px x^3 = 3 x^2 + x^3 px  (classically the derivative of x^3)
    got = multiply(parse_element("px"), parse_element("x^3"), table)
    assert got == parse_element("3*x^2 + x^3*px")


def test_negative_power_chain(table):
    # px x^-1 = x^-1 px - x^-2
    got = multiply(parse_element("px"), parse_element("x^-1"), table)
    assert got == parse_element("xinv*px - x^-2")


def test_normalize_report_counts_steps(table):
    report = normalize_report(parse_element("z*y*x"), table)
    assert report.strategy == "leftmost"
    assert report.steps == 3
    assert report.output == nf("z*y*x", table)


def test_strategies_agree_on_sample(table):
    e = parse_element("iy*dx*dy*y + px*x^2*dz")
    left = normalize(e, table)
    assert normalize(e, table, strategy="rightmost") == left
    assert normalize(e, table, strategy="random", seed=7) == left


def test_local_confluence_length_three(table):
    report = check_local_confluence(table, 3, seeds=(1,))
    assert report.passed
    assert report.words_checked > 5000
    assert not report.divergences


def test_confluence_rejects_tiny_bound(table):
    with pytest.raises(ValueError):
        check_local_confluence(table, 2)


coordinate_words = st.lists(
    st.tuples(st.sampled_from(["x", "y", "z", "xinv"]),
              st.integers(min_value=1, max_value=3)),
    min_size=0, max_size=4,
).map(make_word)


@settings(max_examples=40, deadline=None)
@given(coordinate_words, coordinate_words)
def test_coordinate_multiplication_is_associative(wa, wb):
    table = __import__("qcartan.relations", fromlist=["builtin_presentation"]) \
        .builtin_presentation()
    a, b = Element.from_word(wa), Element.from_word(wb)
    c = parse_element("y*x + z")
    lhs = multiply(multiply(a, b, table), c, table)
    rhs = multiply(a, multiply(b, c, table), table)
    assert lhs == rhs
