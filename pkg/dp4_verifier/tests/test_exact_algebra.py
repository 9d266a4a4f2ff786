"""
Tests for the exact algebra service: fields, polynomials, Gram matrices and binary forms.
"""
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add the parent directory to sys.path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from app.models.errors import CharacteristicError, RingMismatchError
from app.services.exact_algebra import (
    BinaryFormSystem,
    Field,
    FieldScalar,
    PolynomialRing,
    binary_intersection,
    field_nullspace,
    field_rank,
    gram_and_rank,
    poly_arith,
    poly_det,
    random_scalar,
    reconstruct_quadratic,
)


@pytest.fixture
def ring():
    return PolynomialRing(("x", "y"))


@pytest.fixture
def binary():
    return PolynomialRing(("s0", "s1"))


def test_field_rejects_composite_characteristic():
    """Only 0 and primes are fields"""
    with pytest.raises(ValueError):
        Field(4)


def test_field_elements():
    """Fractions map to residues mod p; p in the denominator has no image"""
    assert Field(0).to_fraction(Field(0).element("1/2")) == Fraction(1, 2)
    assert Field(5).to_fraction(Field(5).element(Fraction(1, 2))) == 3
    with pytest.raises(ZeroDivisionError):
        Field(5).element(Fraction(1, 5))


def test_field_parse():
    """Text parses into the field"""
    f7 = Field(7)
    assert f7.parse("3/2") == f7.element("3/2")
    assert f7.to_fraction(f7.parse("3/2")) == 5


def test_field_scalar_arithmetic():
    """FieldScalar arithmetic stays in its field"""
    f7 = Field(7)
    three = FieldScalar.of(f7, 3)
    assert three * 5 == 1
    assert (three - 4).to_fraction() == 6
    assert str(FieldScalar.of(Field(0), "-3/4")) == "-3/4"
    with pytest.raises(ZeroDivisionError):
        three / 0


def test_ring_validation():
    """Duplicate variables and unknown orders are rejected"""
    with pytest.raises(ValueError):
        PolynomialRing(("x", "x"))
    with pytest.raises(ValueError):
        PolynomialRing(("x",), order="deglex")


def test_polynomial_text(ring):
    """Text output lists terms in decreasing grevlex order"""
    x, y = ring.gen("x"), ring.gen("y")
    assert ((x + y) ** 2).text() == "x^2 + 2*x*y + y^2"
    assert (x * Fraction(1, 2) - 3).text() == "1/2*x - 3"
    assert ring.zero().text() == "0"


def test_coefficients_in():
    """Coefficients with respect to some variables live in the ring of the others"""
    ring = PolynomialRing(("a", "x", "y"))
    a, x, y = ring.gens()
    coefficients = (a * x * x + 3 * x * y).coefficients_in(("x", "y"))
    assert set(coefficients) == {(2, 0), (1, 1)}
    assert coefficients[(2, 0)].text() == "a"
    assert coefficients[(1, 1)].text() == "3"


def test_ring_mismatch(ring):
    """Polynomials of different rings do not mix"""
    other = PolynomialRing(("x", "z"))
    with pytest.raises(RingMismatchError):
        ring.gen("x") + other.gen("x")
    with pytest.raises(RingMismatchError):
        poly_arith("add", ring.gen("x"), other.gen("z"))


def test_substitute_and_evaluate(ring):
    """Substitution and evaluation are exact"""
    x, y = ring.gen("x"), ring.gen("y")
    assert (x * y).substitute({"x": y + 1}).text() == "y^2 + y"
    assert (x ** 2 + 2 * y).evaluate({"x": 3, "y": "1/2"}) == 10
    with pytest.raises(RingMismatchError):
        x.substitute({"z": y})


def test_poly_arith_entry_point(ring):
    """poly_arith dispatches add, mul and substitute"""
    x, y = ring.gen("x"), ring.gen("y")
    assert poly_arith("add", x, y, x) == 2 * x + y
    assert poly_arith("mul", x, y) == x * y
    assert poly_arith("substitute", x * y, mapping={"y": 2}) == 2 * x
    with pytest.raises(ValueError):
        poly_arith("div", x, y)


def test_poly_det(ring):
    """Determinant of a polynomial matrix"""
    x, y = ring.gen("x"), ring.gen("y")
    assert poly_det([[x, y], [y, x]]) == x * x - y * y


def test_gram_and_rank(ring):
    """Ranks of simple quadratic forms"""
    x, y = ring.gen("x"), ring.gen("y")
    assert gram_and_rank(x * x + y * y, ("x", "y"))[1] == 2
    assert gram_and_rank((x + y) ** 2, ("x", "y"))[1] == 1
    assert gram_and_rank(ring.zero(), ("x", "y"))[1] == 0


def test_gram_with_parameters():
    """Entries in a parameter ring; the rank is taken over its fraction field"""
    ring = PolynomialRing(("a", "x", "y"))
    a, x, y = ring.gen("a"), ring.gen("x"), ring.gen("y")
    gram, rank = gram_and_rank(a * x * x + y * y, ("x", "y"))
    assert rank == 2
    assert gram.det().text() == "a"
    assert gram.is_symmetric()


def test_reconstruct_quadratic(ring):
    """x^T M x gives the form back"""
    x, y = ring.gen("x"), ring.gen("y")
    q = x * x + 3 * x * y - y * y
    gram, _ = gram_and_rank(q, ("x", "y"))
    assert gram.entry(0, 1).to_fraction() == Fraction(3, 2)
    assert reconstruct_quadratic(gram, ring) == q


def test_gram_characteristic_two():
    """Gram matrices need an odd characteristic"""
    ring = PolynomialRing(("x", "y"), Field(2))
    with pytest.raises(CharacteristicError):
        gram_and_rank(ring.gen("x") * ring.gen("y"), ("x", "y"))


def test_binary_intersection_roots(binary):
    """Common roots with multiplicities, including the point at infinity"""
    s0, s1 = binary.gen("s0"), binary.gen("s1")

    double = binary_intersection(BinaryFormSystem(((s1 - 2 * s0) ** 2,)))
    assert double.distinct_roots == 1
    assert double.clusters[0].multiplicity == 2
    assert double.clusters[0].point == ("1", "2")

    at_infinity = binary_intersection(BinaryFormSystem((s0 * s0, s0 * s1)))
    assert [c.point for c in at_infinity.clusters] == [("0", "1")]

    simple = binary_intersection(BinaryFormSystem((s0 * s1, s1 * s1)))
    assert simple.distinct_roots == 1 and simple.clusters[0].point == ("1", "0")

    assert binary_intersection(BinaryFormSystem((binary.zero(),))).infinite


def test_binary_forms_must_be_homogeneous(binary):
    """Inhomogeneous input is rejected"""
    s0, s1 = binary.gen("s0"), binary.gen("s1")
    with pytest.raises(ValueError):
        BinaryFormSystem((s0 * s0 + s1,))


def test_random_scalar_is_seeded():
    """Equal seeds draw equal scalars"""
    field = Field(0)
    first = [random_scalar(field, np.random.default_rng(7)) for _ in range(5)]
    second = [random_scalar(field, np.random.default_rng(7)) for _ in range(5)]
    assert first == second


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(0, 4), min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_nullity(rows):
    """rank + dim ker = number of columns over F_5"""
    field = Field(5)
    raw = [[field.element(v) for v in row] for row in rows]
    assert field_rank(field, raw, 4) + len(field_nullspace(field, raw, 4)) == 4


if __name__ == "__main__":
    pytest.main(["-xvs", __file__])
