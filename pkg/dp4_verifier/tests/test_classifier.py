"""
Tests for the line and conic classifier.
"""
import sys
from pathlib import Path

import numpy as np
import pytest

# Add the parent directory to sys.path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from app.models.errors import EmptyVarietyError, InvalidGeometryError
from app.services.classifier import (
    ConicClass,
    ConicPair,
    LineType,
    NormalBundleType,
    _double_line_ideal,
    classify_line,
    classify_line_type,
    conic_class,
    double_line_family_dim,
    fiber_quadric_rank,
    hyperplane_rank_locus_dim,
    in_Dbar,
    is_non_free,
    meets_S,
    psi,
    support_line,
    tangent_conic_pair,
)
from app.services.exact_algebra import Field
from app.services.groebner import ideal_dim, projective_dim
from app.services.grassmann import (
    FlagLine,
    chart_point,
    line_in_Y,
    line_span,
    lines_with_vertex,
    make_Pt,
    random_line,
    vertex_conic,
)
from app.utils.text_formats import parse_rows

QQ = Field(0)

EXAMPLES = {
    "a": ("e2", "e0,e2,e3"),
    "b": ("e0", "e0,e2,e4"),
    "c": ("e0", "e0,e1,e2"),
    "d": ("e0", "e0,e1,e4"),
    "e": ("e1", "e0,e1,e4"),
}


def line(vertex: str, plane: str, field: Field = QQ) -> FlagLine:
    return FlagLine.from_vectors(field, parse_rows(vertex)[0], parse_rows(plane))


@pytest.mark.parametrize("expected", sorted(EXAMPLES))
def test_example_line_types(expected):
    """Each example line lands in its own type"""
    assert classify_line_type(line(*EXAMPLES[expected])) == LineType(expected)


@pytest.mark.parametrize("name,bundle", [
    ("a", NormalBundleType.FREE),
    ("b", NormalBundleType.FREE),
    ("c", NormalBundleType.NONFREE),
    ("d", NormalBundleType.NONFREE),
    ("e", NormalBundleType.FREE),
])
def test_example_normal_bundles(name, bundle):
    """Types c and d are the non-free lines"""
    assert is_non_free(line(*EXAMPLES[name])) == bundle


def test_meets_S():
    """Lines of S meet it in a line, lines of P_t in a point"""
    assert meets_S(line(*EXAMPLES["d"])) == "line"
    assert meets_S(line(*EXAMPLES["b"])) == "point"


def test_lines_off_Y_are_rejected():
    """Classifying a line outside Y is an error"""
    outside = line("e0", "e0,e3,e4")
    assert not line_in_Y(outside)
    with pytest.raises(InvalidGeometryError):
        classify_line_type(outside)


@pytest.mark.parametrize("name,dim", [("a", 0), ("b", 0), ("c", 1), ("d", 1), ("e", 0)])
def test_double_line_family_dims(name, dim):
    """A P^1 of double lines on non-free lines, finitely many on free ones"""
    assert double_line_family_dim(line(*EXAMPLES[name])) == dim


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_classify_line_has_no_flags(name):
    """The oracles agree on every example"""
    result = classify_line(line(*EXAMPLES[name]))
    assert result.type == name
    assert result.flags == []
    assert result.family_dim == (1 if name in ("c", "d") else 0)


def test_classify_line_without_family():
    """The family dimension is optional"""
    result = classify_line(line(*EXAMPLES["b"]), with_family=False)
    assert result.family_dim is None
    assert result.planes == ["P(0)"]


# Free line whose rank-one conic pairs all sit in the chart at infinity of its pencil
INFINITY_CHART_LINE = ("0,1,0,-5/4,3/2", "1,0,5/4,-15/8,0;0,1,0,-5/4,0;0,0,0,0,1")


def test_double_lines_found_only_at_infinity():
    """The pencil parameter does not add a dimension in the chart at infinity"""
    L = line(*INFINITY_CHART_LINE)
    assert classify_line_type(L) == LineType.A
    assert is_non_free(L) == NormalBundleType.FREE
    with pytest.raises(EmptyVarietyError):
        ideal_dim(_double_line_ideal(L, at_infinity=False))
    assert ideal_dim(_double_line_ideal(L, at_infinity=True)) == 1
    assert double_line_family_dim(L) == 0


def test_infinity_chart_line_has_no_flags():
    """A free line in the chart at infinity classifies cleanly"""
    result = classify_line(line(*INFINITY_CHART_LINE))
    assert result.flags == []
    assert result.family_dim == 0


def sample_line(seed: int) -> FlagLine:
    rng = np.random.default_rng(seed)
    if seed % 2:
        return random_line(QQ, rng)
    vertex = vertex_conic(QQ).point(int(rng.integers(-5, 6)))
    return lines_with_vertex(vertex, QQ).sample(rng)


@pytest.mark.parametrize("seed", range(12))
def test_family_dim_matches_support_points(seed):
    """One support point on the dual conic exactly when the double lines form a P^1"""
    L = sample_line(seed)
    expected = 1 if is_non_free(L) == NormalBundleType.NONFREE else 0
    assert double_line_family_dim(L) == expected


def test_plane_conic_pair():
    """U3 = P_0 inside K_[V4] restricts q_G to zero"""
    pair = ConicPair(make_Pt(0, QQ).u3, chart_point(0, 0, 0, 0, QQ))
    assert conic_class(pair) == ConicClass.PLANE
    assert in_Dbar(pair)


def test_conic_pair_validation():
    """U3 must sit in K_[V4]"""
    with pytest.raises(InvalidGeometryError):
        ConicPair(make_Pt(0, QQ).u3, chart_point(1, 1, 1, 1, QQ))


def test_fiber_quadric_ranks():
    """Rank 4 off Q3, 3 on Q3 off its singular line, 2 on the singular line"""
    assert fiber_quadric_rank(chart_point(1, 1, 1, 1, QQ)) == 4
    assert fiber_quadric_rank(chart_point(1, 0, 0, 0, QQ)) == 3
    assert fiber_quadric_rank(chart_point(0, 0, 5, 0, QQ)) == 2


def test_tangent_conic_is_a_double_line():
    """On Q3 the tangent section is a double line supported on a line of Y"""
    pair = tangent_conic_pair(chart_point(1, 0, 0, 0, QQ))
    assert conic_class(pair) == ConicClass.DOUBLE_LINE
    support = support_line(pair)
    assert line_in_Y(support)
    assert pair.u3.contains_subspace(line_span(support))


def test_psi_of_a_double_line_is_a_curve():
    """psi cuts out the conic itself: a curve in P^9"""
    pair = tangent_conic_pair(chart_point(1, 0, 0, 0, QQ))
    assert projective_dim(psi(pair)) == 1


def test_support_line_needs_rank_one():
    """A plane has no support line"""
    pair = ConicPair(make_Pt(0, QQ).u3, chart_point(0, 0, 0, 0, QQ))
    with pytest.raises(InvalidGeometryError):
        support_line(pair)


def test_hyperplane_rank_locus():
    """No rank-one hyperplanes off Q3, a curve of them on it"""
    assert hyperplane_rank_locus_dim(chart_point(1, 1, 1, 1, QQ)) == -1
    assert hyperplane_rank_locus_dim(chart_point(1, 0, 0, 0, QQ)) == 1


if __name__ == "__main__":
    pytest.main(["-xvs", __file__])
