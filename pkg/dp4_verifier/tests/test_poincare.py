"""
Tests for the virtual Poincare polynomial calculus and the blow-up chains.
"""
import sys
from pathlib import Path

import pytest

# Add the parent directory to sys.path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from app.services.claims import IP_TARGET
from app.services.poincare import (
    EXPECTED_CONTRACTED,
    ChainInputs,
    PoincarePoly,
    d_side,
    d_side_from_lines,
    double_line_cross_check,
    h2_side,
    ip_stable_maps_chain,
    line_space_chain,
    pp_blowup,
    pp_projective,
    run_chain,
    stable_maps_candidates,
)


def test_polynomial_arithmetic():
    """Sums, products and trailing zeros"""
    p1 = pp_projective(1)
    assert (p1 * p1).coefficients == (1, 2, 1)
    assert (p1 - 1).coefficients == (0, 1)
    assert (p1 - p1).is_zero
    assert PoincarePoly((1, 0, 0)).degree == 0
    assert (p1 * p1).evaluate(2) == 9


def test_text_in_t():
    """Text uses even powers of t"""
    assert PoincarePoly((1, 4, 10)).text() == "1 + 4t^2 + 10t^4"
    assert PoincarePoly((0, -1)).text() == "-t^2"


def test_projective_space():
    """P(P^n) has n + 1 ones"""
    assert pp_projective(3).coefficients == (1, 1, 1, 1)
    with pytest.raises(ValueError):
        pp_projective(-1)


def test_blowup():
    """Blowing up a point of P^2 adds one class in degree 2"""
    assert pp_blowup(pp_projective(2), 1, 2).coefficients == (1, 2, 1)
    with pytest.raises(ValueError):
        pp_blowup(pp_projective(2), 1, 1)


def test_line_space_chain():
    """P^4 blown up along the vertex conic"""
    result, record = line_space_chain()
    assert result.coefficients == (1, 2, 3, 2, 1)
    assert record.status == "pass"


def test_surgery_sides():
    """The H2 and D sides with one contracted component"""
    inputs = ChainInputs()
    p_h2, _ = h2_side(inputs, EXPECTED_CONTRACTED)
    p_d, _ = d_side(inputs, EXPECTED_CONTRACTED)
    assert p_h2.coefficients == (1, 3, 6, 7, 7, 6, 3, 1)
    assert p_d.coefficients == (1, 3, 5, 3, 1)


def test_d_side_from_lines():
    """Free lines plus a P^1 over each non-free line"""
    result, steps = d_side_from_lines(ChainInputs())
    assert result.coefficients == (1, 3, 5, 3, 1)
    assert steps[-1].label == "double lines"


def test_stable_maps_chain_hits_target():
    """One contracted component gives the target polynomial"""
    inputs = ChainInputs()
    p_h2, _ = h2_side(inputs, 1)
    p_d, _ = d_side(inputs, 1)
    result, record = ip_stable_maps_chain(p_h2, p_d)
    assert result.coefficients == tuple(IP_TARGET)
    assert record.status == "pass"
    assert record.palindromic and record.matches


def test_stable_maps_candidates():
    """Only k = 1 passes"""
    records = stable_maps_candidates()
    assert [r.contracted for r in records] == [0, 1, 2]
    assert [r.status for r in records] == ["flagged", "pass", "flagged"]


def test_perturbed_input_is_flagged():
    """Changing the D̄ count breaks the target"""
    inputs = ChainInputs(dbar=PoincarePoly((1, 2, 3, 2, 1)))
    p_h2, _ = h2_side(inputs, 1)
    p_d, _ = d_side(inputs, 1)
    _, record = ip_stable_maps_chain(p_h2, p_d)
    assert record.status == "flagged"
    assert record.matches is False


def test_double_line_cross_check():
    """Surgery and line count agree on D"""
    record = double_line_cross_check()
    assert record.status == "pass"
    assert record.result == [1, 3, 5, 3, 1]


def test_run_chain():
    """Chains by name"""
    assert len(run_chain("stable-maps")) == 3
    assert run_chain("line-space")[0].chain == "line-space"
    with pytest.raises(ValueError):
        run_chain("euler")


if __name__ == "__main__":
    pytest.main(["-xvs", __file__])
