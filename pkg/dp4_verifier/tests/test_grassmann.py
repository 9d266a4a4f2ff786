"""
Tests for the Grassmannian geometry of Y: Pluecker vectors, flag lines, the vertex and
dual conics, the planes of Y and the Gr(4,5) charts.
"""
import sys
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add the parent directory to sys.path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from app.models.errors import InvalidGeometryError
from app.services.exact_algebra import Field
from app.services.grassmann import (
    FlagLine,
    PlueckerVector,
    Subspace,
    chart_coordinates,
    chart_point,
    chart_point_x4,
    conic_space,
    dual_conic,
    flag_from_span,
    gr45_coordinates,
    ideal_of_R,
    line_in_Y,
    line_span,
    lines_with_vertex,
    make_Pt,
    make_S,
    meet_dual_conic,
    on_Y,
    plane_meet,
    planes_containing_line,
    point_in_variety,
    random_line,
    sigma31_parameters,
    subspace_in_variety,
    tangent_line,
    vertex_conic,
    wedge2,
    wedge_vectors,
)
from app.utils.text_formats import parse_rows

QQ = Field(0)


def line(vertex: str, plane: str, field: Field = QQ) -> FlagLine:
    return FlagLine.from_vectors(field, parse_rows(vertex)[0], parse_rows(plane))


def test_subspace_basics():
    """Spans are stored in reduced echelon form, so equal spaces compare equal"""
    a = Subspace.span(QQ, parse_rows("1,1,0,0,0;0,1,0,0,0"))
    b = Subspace.span(QQ, parse_rows("e0,e1"))
    assert a == b and hash(a) == hash(b)
    assert a.dim == 2
    assert a.contains([3, -2, 0, 0, 0])
    assert a.annihilator().dim == 3
    assert a.intersect(Subspace.span(QQ, parse_rows("e1,e2"))).dim == 1
    with pytest.raises(InvalidGeometryError):
        Subspace.from_basis(QQ, parse_rows("e0,e0"))


def test_pluecker_vectors():
    """Wedges are decomposable; e01 + e23 is not"""
    v = wedge2(Subspace.span(QQ, parse_rows("e0,e1")))
    assert v.coordinate("p01") == 1 and v.decomposable
    mixed = PlueckerVector.of(QQ, [1, 0, 0, 0, 0, 0, 0, 1, 0, 0])
    assert not mixed.decomposable
    assert v.support() == Subspace.span(QQ, parse_rows("e0,e1"))


def test_points_of_Y():
    """e0^e1 lies on Y, e0^e3 violates p12 = p03"""
    assert on_Y(wedge2(Subspace.span(QQ, parse_rows("e0,e1"))))
    assert not on_Y(wedge2(Subspace.span(QQ, parse_rows("e0,e3"))))


def test_invalid_flags():
    """The vertex must lie in the plane, and dimensions must be 1 and 3"""
    with pytest.raises(InvalidGeometryError):
        line("e3", "e0,e1,e2")
    with pytest.raises(InvalidGeometryError):
        FlagLine(Subspace.span(QQ, parse_rows("e0")), Subspace.span(QQ, parse_rows("e0,e1")))


def test_example_line_spans():
    """The span of a line recovers its flag"""
    example = line("e2", "e0,e2,e3")
    assert line_in_Y(example)
    assert flag_from_span(line_span(example)) == example


def test_vertex_conic():
    """dim K_v is 4 on the vertex conic and 3 elsewhere"""
    conic = vertex_conic(QQ)
    for s in (0, 1, Fraction(-2, 3), None):
        point = conic.point(s)
        assert conic.contains(point)
        assert lines_with_vertex(point, QQ).family_dim == 2
    off = lines_with_vertex(parse_rows("e2")[0], QQ)
    assert off.unique
    assert off.line.v3 == Subspace.span(QQ, parse_rows("e0,e2,e3"))


def test_dual_conic_in_S():
    """d(s) lies on Y, in S, and on the tangent line P_s ∩ S"""
    S = make_S(QQ).u3
    for s in (0, 2, Fraction(1, 2), None):
        d = dual_conic(s, QQ)
        assert on_Y(d)
        assert S.contains(d.coords)
        assert tangent_line(s, QQ).contains(d.coords)


def test_tangent_line_meets_dual_conic_twice():
    """P_t ∩ S touches the dual conic at d(t) with multiplicity 2"""
    meeting = meet_dual_conic(tangent_line(3, QQ))
    assert len(meeting.clusters) == 1
    assert meeting.clusters[0].multiplicity == 2
    assert meeting.clusters[0].point == ("1", "3")

    at_infinity = meet_dual_conic(tangent_line(None, QQ))
    assert at_infinity.clusters[0].point == ("0", "1")


def test_planes_meet_in_S():
    """Two planes of the family meet in one point of S"""
    S = make_S(QQ).u3
    for t1, t2 in combinations((0, 1, -1, None), 2):
        meet = plane_meet(make_Pt(t1, QQ), make_Pt(t2, QQ))
        assert meet.dim == 1
        assert S.contains_subspace(meet)


def test_planes_containing_lines():
    """Lines of P_t report exactly that plane"""
    assert planes_containing_line(line("e0", "e0,e2,e4")) == ["P(0)"]
    assert sigma31_parameters(line("e2", "e0,e2,e3")) == []
    assert "S" in planes_containing_line(line("e1", "e0,e1,e4"))


def test_sweep_of_the_planes():
    """R contains every P_t and S but not e2^e3"""
    ideal = ideal_of_R(QQ)
    for t in (0, 5, Fraction(-1, 3), None):
        assert subspace_in_variety(ideal, make_Pt(t, QQ).u3)
    assert subspace_in_variety(ideal, make_S(QQ).u3)
    assert not point_in_variety(ideal, wedge_vectors(*parse_rows("e2,e3")), QQ)


def test_chart_coordinates():
    """The x3 chart and its Gr(4,5) coordinates agree"""
    v4 = chart_point(1, 2, 3, 4, QQ)
    assert chart_coordinates(v4) == (1, 2, 3, 4)
    x = [QQ.to_fraction(c) for c in gr45_coordinates(v4)]
    assert [c / x[3] for c in x] == [1, 2, 4, 1, 3]
    assert conic_space(v4).dim == 4


def test_x4_chart():
    """The x4 chart reaches 4-spaces outside the x3 chart"""
    v4 = chart_point_x4(0, 0, 0, 0, QQ)
    assert v4 == Subspace.span(QQ, parse_rows("e0,e1,e3,e4"))
    assert chart_coordinates(v4) is None
    assert conic_space(v4).dim == 4


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_random_lines_lie_on_Y(seed):
    """Random lines lie on Y and are recovered from their spans"""
    rng = np.random.default_rng(seed)
    sample = random_line(QQ, rng)
    assert line_in_Y(sample)
    assert flag_from_span(line_span(sample)) == sample


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.sampled_from([3, 5, 7]))
def test_random_lines_over_prime_fields(seed, p):
    """The same holds over F_p"""
    field = Field(p)
    sample = random_line(field, np.random.default_rng(seed))
    assert line_in_Y(sample)


if __name__ == "__main__":
    pytest.main(["-xvs", __file__])
