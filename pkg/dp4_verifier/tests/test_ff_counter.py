"""
Tests for the finite-field point counter and count interpolation.
"""
import sys
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

# Add the parent directory to sys.path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from app.models.errors import CharacteristicError, InterpolationError
from app.services.claims import COUNT_FORMULAS, LINE_TYPE_COUNTS
from app.services.ff_counter import (
    CountPoly,
    count,
    count_detail,
    expected_count,
    gaussian_binomial,
    grassmannian_array,
    interpolate,
    line_statistics,
    projective_points,
    v4_partition,
)

FAST_VARIETIES = ["Y", "H1Y", "Cv", "CvDual", "Q3", "SingQ3", "P4", "Gr45", "planes", "nonfree"]


def test_gaussian_binomials():
    """Small Gaussian binomials"""
    assert gaussian_binomial(5, 1, 2) == 31
    assert gaussian_binomial(5, 2, 3) == (3 ** 5 - 1) * (3 ** 4 - 1) // ((3 - 1) * (3 ** 2 - 1))
    assert gaussian_binomial(4, 5, 3) == 0


@given(st.integers(0, 6), st.integers(0, 6), st.sampled_from([2, 3, 5]))
def test_gaussian_binomial_symmetry(n, k, q):
    """[n, k]_q = [n, n-k]_q"""
    if k > n:
        k, n = n, k
    assert gaussian_binomial(n, k, q) == gaussian_binomial(n, n - k, q)


def test_enumeration_sizes():
    """The RREF enumeration hits every point and every plane once"""
    assert len(projective_points(5, 3)) == gaussian_binomial(5, 1, 3)
    assert len(grassmannian_array(3, 5, 3)) == gaussian_binomial(5, 3, 3)


@pytest.mark.parametrize("variety", FAST_VARIETIES)
def test_counts_over_F3(variety):
    """Counts over F_3 match the closed forms"""
    assert count(variety, 3) == expected_count(variety, 3)


@pytest.mark.parametrize("variety", ["Dbar", "SY", "rank0locus"])
def test_conic_pair_counts_over_F3(variety):
    """The Gr(4,5) sweep matches the closed forms over F_3"""
    assert count(variety, 3) == expected_count(variety, 3)


def test_q3_counted_from_fibre_ranks():
    """Q3 is the rank ≤ 3 stratum of the fibre quadrics, and the cross-checks agree"""
    detail = count_detail("Q3", 3)
    assert detail.count == expected_count("Q3", 3) == 40
    assert detail.histogram["rank=3"] + detail.histogram["rank=2"] == 40
    assert detail.histogram["rank=2"] == expected_count("SingQ3", 3)
    assert detail.histogram["rank=4"] == expected_count("P4", 3) - 40
    assert detail.histogram["Q3:sections"] == detail.histogram["Q3:equation"] == 40


def test_partition_counts_q3_by_rank():
    """Each partition counts its own rank ≤ 3 hyperplanes"""
    total = len(projective_points(5, 3))
    halves = [v4_partition(3, 0, total // 2), v4_partition(3, total // 2, total)]
    assert sum(h.get("Q3", 0) for h in halves) == 40
    assert sum(h.get("Q3:sections", 0) for h in halves) == 40


def test_linear_counts_over_F2():
    """Linear varieties can be counted in characteristic 2"""
    assert count("Y", 2) == expected_count("Y", 2) == 35
    assert count("P4", 2) == 31


def test_quadrics_rejected_over_F2():
    """Quadric varieties need an odd characteristic"""
    with pytest.raises(CharacteristicError):
        count("Q3", 2)


def test_bad_requests():
    """Unknown varieties, unsupported primes and methods"""
    with pytest.raises(ValueError):
        count("Z", 3)
    with pytest.raises(ValueError):
        count("Y", 4)
    with pytest.raises(ValueError):
        count("Y", 3, method="flags")
    with pytest.raises(ValueError):
        count("H1Y", 3, method="brute-force")


def test_variety_names_are_case_insensitive():
    """dbar and Dbar name the same variety"""
    assert count_detail("h1y", 3).variety == "H1Y"


def test_line_methods_agree():
    """Both line enumerations give |H1(Y)(F_3)|"""
    flags = count_detail("H1Y", 3, method="flags")
    fibres = count_detail("H1Y", 3, method="vertex-fibres")
    assert flags.count == fibres.count == expected_count("H1Y", 3)


def test_line_statistics_over_F3():
    """Lines over F_3 split into the five types"""
    stats = line_statistics(3)
    for kind, coefficients in LINE_TYPE_COUNTS.items():
        assert stats.get(f"type={kind}", 0) == CountPoly(coefficients).evaluate(3)
    assert stats["lines"] == expected_count("H1Y", 3)
    assert stats["nonfree"] == expected_count("nonfree", 3)


def test_interpolation():
    """Interpolating the Y formula from exact samples"""
    samples = [(q, expected_count("Y", q)) for q in (3, 5, 7, 11, 13)]
    assert interpolate(samples, 4).coefficients == COUNT_FORMULAS["Y"]
    with pytest.raises(InterpolationError):
        interpolate(samples[:3], 4)
    with pytest.raises(InterpolationError):
        interpolate(samples[:4] + [(13, 0)], 3)


def test_interpolation_rejects_fractions():
    """Samples off every integer polynomial"""
    with pytest.raises(InterpolationError):
        interpolate([(3, 1), (5, 2)], 1)


def test_count_poly_text():
    """Trailing zeros are dropped"""
    poly = CountPoly((1, 2, 0, 0))
    assert poly.degree == 1
    assert poly.text() == "1 + 2q"


if __name__ == "__main__":
    pytest.main(["-xvs", __file__])
