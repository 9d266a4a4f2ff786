"""
Tests for the Groebner engine.
"""
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.groebnertools import groebner

# Add the parent directory to sys.path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from app.models.errors import EmptyVarietyError, RingMismatchError
from app.services.exact_algebra import Field, PolynomialRing
from app.services.groebner import (
    PolyIdeal,
    compare_ideals,
    eliminate,
    ideal_contains,
    ideal_dim,
    ideal_equal,
    ideal_intersection,
    ideal_member,
    independent_set,
    is_unit_ideal,
    normal_form,
    projective_dim,
    reduced_gb,
    substitution_identity,
)


@pytest.fixture
def ring():
    return PolynomialRing(("x", "y"))


def ideal(ring, *gens):
    return PolyIdeal(ring, tuple(gens))


def test_zero_generators_are_dropped(ring):
    """The zero polynomial never appears among the generators"""
    assert len(ideal(ring, ring.zero(), ring.gen("x"))) == 1


def test_generators_from_other_rings(ring):
    """Generators must live in the ideal's ring"""
    with pytest.raises(RingMismatchError):
        ideal(ring, PolynomialRing(("z",)).gen("z"))


def test_equality_and_membership(ring):
    """<x, y> = <x + y, x - y> over Q but not over F_2"""
    x, y = ring.gen("x"), ring.gen("y")
    assert ideal_equal(ideal(ring, x, y), ideal(ring, x + y, x - y))
    assert ideal_member(x * x - y * y, ideal(ring, x - y))
    assert not ideal_member(x, ideal(ring, x * y))
    assert normal_form(x * x, ideal(ring, x - y)) == y * y

    f2 = PolynomialRing(("x", "y"), Field(2))
    a, b = f2.gen("x"), f2.gen("y")
    assert not ideal_equal(ideal(f2, a, b), ideal(f2, a + b, a - b))


def test_reduced_basis_is_monic(ring):
    """The reduced basis of <2x> is <x>"""
    x = ring.gen("x")
    assert reduced_gb(ideal(ring, 2 * x)).generators == (x,)


def test_basis_matches_sympy_groebner():
    """The Buchberger loop agrees with SymPy's own reduced basis"""
    ring = PolynomialRing(("x", "y", "z"))
    x, y, z = ring.gens()
    gens = (x * x + y * z - 1, x * y - z, y * y - x * z)
    ours = reduced_gb(PolyIdeal(ring, gens))
    theirs = groebner([g.element for g in gens], ring.sympy_ring)
    assert {g.element for g in ours.generators} == set(theirs)


def test_unit_ideal(ring):
    """<x, x - 1> is the whole ring and has no dimension"""
    x = ring.gen("x")
    unit = ideal(ring, x, x - 1)
    assert is_unit_ideal(unit)
    with pytest.raises(EmptyVarietyError):
        ideal_dim(unit)
    assert projective_dim(unit) == -1


def test_elimination_of_the_parabola():
    """Eliminating t from (t, t^2) gives y - x^2"""
    ring = PolynomialRing(("t", "x", "y"))
    t, x, y = ring.gen("t"), ring.gen("x"), ring.gen("y")
    result = eliminate(ideal(ring, x - t, y - t * t), ("t",))
    plane = PolynomialRing(("x", "y"))
    assert result.ring == plane
    assert ideal_equal(result, ideal(plane, plane.gen("y") - plane.gen("x") ** 2))


def test_eliminate_unknown_variable(ring):
    """Only ring variables can be eliminated"""
    with pytest.raises(RingMismatchError):
        eliminate(ideal(ring, ring.gen("x")), ("t",))


def test_dimensions():
    """Krull and projective dimensions of small examples"""
    ring = PolynomialRing(("x0", "x1", "x2"))
    x0, x1, x2 = (ring.gen(n) for n in ("x0", "x1", "x2"))
    assert ideal_dim(ideal(ring, x0 * x1)) == 2
    assert ideal_dim(ideal(ring, x0, x1)) == 1
    assert projective_dim(ideal(ring, x0 * x2 - x1 * x1)) == 1
    assert projective_dim(ideal(ring, x0, x1, x2)) == -1
    assert independent_set(ideal(ring, x0)) == ("x1", "x2")


def test_intersection(ring):
    """<x> ∩ <y> = <xy>"""
    x, y = ring.gen("x"), ring.gen("y")
    assert ideal_equal(ideal_intersection(ideal(ring, x), ideal(ring, y)), ideal(ring, x * y))


def test_compare_ideals(ring):
    """Inclusion verdicts"""
    x, y = ring.gen("x"), ring.gen("y")
    assert compare_ideals(ideal(ring, x), ideal(ring, x * y)) == "strict-inclusion"
    assert compare_ideals(ideal(ring, x * y), ideal(ring, x)) == "superset"
    assert compare_ideals(ideal(ring, x), ideal(ring, y)) == "incomparable"
    assert compare_ideals(ideal(ring, x, y), ideal(ring, y, x)) == "equal"
    assert ideal_contains(ideal(ring, x), ideal(ring, x * y))


def test_substitution_identity():
    """y - x^2 vanishes on (t, t^2)"""
    source = PolynomialRing(("x", "y"))
    target = PolynomialRing(("t",))
    t = target.gen("t")
    f = source.gen("y") - source.gen("x") ** 2
    assert substitution_identity(f, {"x": t, "y": t * t}, target)
    assert not substitution_identity(f, {"x": t, "y": t}, target)
    assert substitution_identity(f, {"x": t, "y": t}, target, ideal(target, t * t - t))


@settings(max_examples=20, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3))
def test_reduced_basis_ignores_generator_order(a, b):
    """The reduced basis depends on the ideal only"""
    ring = PolynomialRing(("x", "y"))
    x, y = ring.gen("x"), ring.gen("y")
    gens = (x * x + a * y, x * y + b, y * y - x)
    forward = reduced_gb(PolyIdeal(ring, gens))
    backward = reduced_gb(PolyIdeal(ring, gens[::-1]))
    assert [g.element for g in forward.generators] == [g.element for g in backward.generators]


if __name__ == "__main__":
    pytest.main(["-xvs", __file__])
