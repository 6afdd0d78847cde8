import pytest

from qcartan.hopf import (
    TensorElement,
    antipode,
    check_hopf_axioms,
    coproduct,
    counit,
    tensor,
    tensor_mul,
)
from qcartan.normalizer import multiply, normalize
from qcartan.parser import parse_element
from qcartan.scalars import ONE, Q
from qcartan.words import Element


def ne(text, table):
    return normalize(parse_element(text), table)


def t2(a, b):
    return tensor(parse_element(a), parse_element(b))


def test_coproduct_of_twisted_primitive(table):
    assert coproduct("A", parse_element("y"), table) == t2("x", "y") + t2("y", "x")


def test_coproduct_of_primitive_square(table):
    got = coproduct("A", ne("z^2", table), table)
    assert got == t2("z^2", "1") + 2 * t2("z", "z") + t2("1", "z^2")


def test_coproduct_in_lie_presentation(table):
    assert coproduct("U", parse_element("Ty"), table) == \
        t2("Ty", "1") + t2("K", "Ty")
    assert coproduct("U", parse_element("Tx"), table) == \
        t2("Tx", "1") + t2("1", "Tx")


def test_grouplike_closure(table):
    for k in (-3, -1, 1, 2, 4):
        e = parse_element(f"x^{k}")
        assert coproduct("A", e, table) == tensor(e, e)
        ke = parse_element(f"K^{k}")
        assert coproduct("U", ke, table) == tensor(ke, ke)


def test_coproduct_is_homomorphism_on_a_pair(table):
    # Delta(x y) = x^2 (x) x y + x y (x) x^2
    got = coproduct("A", ne("x*y", table), table)
    assert got == t2("x^2", "x*y") + t2("x*y", "x^2")
    # and it matches the product of the generator images
    prod = tensor_mul(coproduct("A", parse_element("x"), table),
                      coproduct("A", parse_element("y"), table), table)
    assert got == prod


def test_counit_values(table):
    assert counit("A", ne("x^3", table)) == ONE
    assert counit("A", ne("x*y", table)).is_zero()
    assert counit("A", parse_element("xinv")) == ONE
    assert counit("U", parse_element("Tz")).is_zero()
    assert counit("U", parse_element("K^2")) == ONE


def test_antipode_values(table):
    assert antipode("A", parse_element("y"), table) == -Q * ne("x^-2*y", table)
    assert antipode("A", ne("x*y", table), table) == \
        -(Q ** 2) * ne("x^-3*y", table)
    assert antipode("A", parse_element("z"), table) == -parse_element("z")
    assert antipode("U", parse_element("Ty"), table) == -ne("Ty*Kinv", table)
    assert antipode("U", parse_element("K"), table) == parse_element("Kinv")


def test_antipode_law_for_twisted_primitive(table):
    # m (S (x) id) Delta(y) = S(x) y + S(y) x = 0 = eps(y)
    d = coproduct("A", parse_element("y"), table)
    total = Element.zero()
    for (w1, w2), c in d.terms():
        total = total + c * multiply(
            antipode("A", Element.from_word(w1), table),
            Element.from_word(w2), table)
    assert total.is_zero()


def test_antipode_law_in_lie_presentation(table):
    d = coproduct("U", parse_element("Ty"), table)
    total = Element.zero()
    for (w1, w2), c in d.terms():
        total = total + c * multiply(
            antipode("U", Element.from_word(w1), table),
            Element.from_word(w2), table)
    assert total.is_zero()


def test_letter_outside_presentation_rejected(table):
    with pytest.raises(ValueError, match="outside"):
        coproduct("A", parse_element("Tx"), table)
    with pytest.raises(ValueError, match="outside"):
        counit("U", parse_element("x"))
    with pytest.raises(ValueError, match="outside"):
        antipode("A", parse_element("dx"), table)


def test_tensor_arity_checks():
    with pytest.raises(ValueError):
        TensorElement(4, {})


def test_hopf_axioms_coordinate_algebra(table):
    report = check_hopf_axioms("A", 3, table)
    assert report.passed, "\n".join(str(r) for r in report.failures[:5])


def test_hopf_axioms_lie_algebra(table):
    report = check_hopf_axioms("U", 3, table)
    assert report.passed, "\n".join(str(r) for r in report.failures[:5])
