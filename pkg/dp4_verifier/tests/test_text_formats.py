"""
Test script for the text formats of polynomials, ideals and subspaces.
"""
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add the parent directory to sys.path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from app.models.errors import RingMismatchError
from app.services.exact_algebra import Field, PolynomialRing
from app.services.groebner import PolyIdeal, ideal_equal
from app.utils.text_formats import (
    format_coefficients,
    format_ideal,
    format_rows,
    parse_ideal,
    parse_polynomial,
    parse_rows,
)


def test_parse_polynomial():
    """Caret powers, rational coefficients and the canonical text"""
    ring = PolynomialRing(("x", "y"))
    poly = parse_polynomial(ring, "x^2 - 1/2*x*y + 3")
    assert poly.text() == "x^2 - 1/2*x*y + 3"
    assert poly == ring.gen("x") ** 2 - Fraction(1, 2) * ring.gen("x") * ring.gen("y") + 3


def test_parse_polynomial_errors():
    """Unknown variables and malformed text"""
    ring = PolynomialRing(("x", "y"))
    with pytest.raises(RingMismatchError):
        parse_polynomial(ring, "x + z")
    with pytest.raises(ValueError):
        parse_polynomial(ring, "x/y")


def test_parse_polynomial_mod_p():
    """Coefficients reduce into the ring's field"""
    ring = PolynomialRing(("x",), Field(5))
    assert parse_polynomial(ring, "7*x + 1/2").text() == "2*x + 3"


def test_ideal_text_roundtrip():
    """format_ideal and parse_ideal keep the ring and the ideal"""
    ring = PolynomialRing(("a", "b", "c"), Field(0), "block", 1, "lex")
    a, b, c = (ring.gen(n) for n in ("a", "b", "c"))
    ideal = PolyIdeal(ring, (a * b - c, b * b + 2 * c))
    text = format_ideal(ideal)
    assert text.splitlines()[0] == "ring: QQ[a,b,c] order=block(1,lex)"
    parsed = parse_ideal(text)
    assert parsed.ring == ring
    assert ideal_equal(parsed, ideal)


def test_parse_ideal_rejects_bad_header():
    """The first line must be a ring header"""
    with pytest.raises(ValueError):
        parse_ideal("QQ[x]\nx")


def test_parse_rows():
    """Named standard points and explicit rows"""
    assert parse_rows("e0,e4") == [[1, 0, 0, 0, 0], [0, 0, 0, 0, 1]]
    assert parse_rows("1,0,0,0,1/2;0,1,0,0,0")[0][4] == Fraction(1, 2)
    assert format_rows(Field(0), [[Fraction(1, 2), 0, 1]]) == "1/2,0,1"
    with pytest.raises(ValueError):
        parse_rows("1,0,0")
    with pytest.raises(ValueError):
        parse_rows("")


def test_format_coefficients():
    """Ascending coefficients as a polynomial in q"""
    assert format_coefficients((1, 4, 10)) == "1 + 4q + 10q^2"
    assert format_coefficients((0, -1)) == "-q"
    assert format_coefficients((0,)) == "0"


if __name__ == "__main__":
    pytest.main(["-xvs", __file__])
