import math

import numpy as np
import pytest

from conftest import random_profile
from dtmm.oracle import rk_solve
from dtmm.profiles import CoefficientProfile
from dtmm.propagate import (
    Partition,
    chain,
    default_sections,
    make_partition,
    solve_ivp,
    transfer_over,
)
from dtmm.transfer import State, build_Q

# Airy Ai/Bi combination solving y'' + x y = 0, y(0)=1, y'(0)=0, at x = 2;
# frozen from mpmath at 30 digits
AIRY_U2 = -0.0149785091995591
AIRY_DU2 = -1.09740832714394


def profile(g, h=None):
    return CoefficientProfile.from_text(g, h)


def test_partition_validation():
    assert len(make_partition(0.0, 1.0, 4)) == 4
    assert make_partition(0.0, 1.0, 3).end == 1.0
    assert len(Partition((2.0, 1.0, 0.0))) == 2
    Partition((1.0, 1.0))
    with pytest.raises(ValueError):
        Partition((0.0,))
    with pytest.raises(ValueError):
        Partition((0.0, 1.0, 0.5))
    with pytest.raises(ValueError):
        Partition((0.0, math.inf))
    with pytest.raises(ValueError):
        make_partition(0.0, 1.0, 0)


def test_default_sections():
    assert default_sections(profile("4"), 0.0, 1.0) == 128
    assert default_sections(profile("0"), 0.0, 5.0) == 1
    assert default_sections(profile("x^2"), 0.0, -2.0) == 256


def test_solve_sine():
    trace = solve_ivp(profile("1"), make_partition(0.0, math.pi / 2, 1), State(0.0, 0.0, 1.0, 0.0))
    assert trace.final.u == pytest.approx(1.0, abs=1e-12)
    assert abs(trace.final.du) <= 1e-12


def test_solve_cosh():
    trace = solve_ivp(profile("-1"), make_partition(0.0, 1.0, 1), State(1.0))
    assert trace.final.u == pytest.approx(math.cosh(1.0), rel=1e-14)
    assert trace.final.du == pytest.approx(math.sinh(1.0), rel=1e-14)


def test_solve_airy():
    trace = solve_ivp(profile("x"), make_partition(0.0, 2.0, 200), State(1.0), corrected=True)
    assert trace.final.u == pytest.approx(AIRY_U2, abs=1e-6)
    assert trace.final.du == pytest.approx(AIRY_DU2, abs=1e-6)


def test_samples_per_section():
    p = profile("4")
    trace = solve_ivp(p, make_partition(0.0, 1.0, 4), State(1.0), samples_per_section=5)
    assert len(trace) == 4 * 5 + 1
    np.testing.assert_allclose(trace.xs, np.linspace(0.0, 1.0, 21), atol=1e-15)
    np.testing.assert_allclose(trace.u, np.cos(2 * np.array(trace.xs)), atol=1e-13)
    with pytest.raises(ValueError):
        solve_ivp(p, make_partition(0.0, 1.0, 4), State(1.0), samples_per_section=0)


def test_solve_rejects_points_outside_domain():
    p = CoefficientProfile.from_text("sqrt(x)", domain=(0.0, math.inf))
    with pytest.raises(ValueError):
        solve_ivp(p, make_partition(-1.0, 1.0, 2), State(1.0))


def test_complex_path_matches_closed_form():
    # y'' + i y = 0 from y = 1, y' = 0: y = cosh(r x), r = exp(3 i pi / 4)
    trace = solve_ivp(profile("0", "1"), make_partition(0.0, 1.0, 1), State(1.0))
    r = complex(math.cos(3 * math.pi / 4), math.sin(3 * math.pi / 4))
    assert abs(trace.final.y - complex(np.cosh(r))) <= 1e-13
    assert abs(trace.final.dy - r * complex(np.sinh(r))) <= 1e-13


def test_chain_examples():
    p = profile("4")
    assert np.array_equal(chain([]).to_array(), np.eye(4))
    single = build_Q(0.0, 1.0, p)
    split = chain([build_Q(0.0, 0.5, p), build_Q(0.5, 1.0, p)])
    np.testing.assert_allclose(split.to_array(), single.to_array(), atol=1e-12)


def test_chain_order_is_application_order():
    p = profile("x^2 + 1", "x")
    q1, q2 = build_Q(0.0, 0.4, p), build_Q(0.4, 1.0, p)
    np.testing.assert_allclose(chain([q1, q2]).to_array(), q2.to_array() @ q1.to_array(), atol=1e-15)


def test_many_sections_beat_one():
    p = profile("1 + x")
    ref = rk_solve(p, 0.0, State(1.0), 1.0)
    one = transfer_over(p, make_partition(0.0, 1.0, 1)).to_array()[:, 0]
    many = transfer_over(p, make_partition(0.0, 1.0, 100)).to_array()[:, 0]
    assert np.max(np.abs(many - list(ref))) < np.max(np.abs(one - list(ref)))


# uncorrected sectioning is second order; the correction adds one order
@pytest.mark.parametrize("corrected, min_ratio", [(False, 3.0), (True, 6.0)])
def test_refinement_convergence(corrected, min_ratio):
    p = profile("1 + 0.5*sin(3*x) + x")
    ref = np.array(tuple(rk_solve(p, 0.0, State(1.0, 0.0, 0.5, 0.0), 2.0)))
    errs = []
    for n in (8, 16, 32):
        s = solve_ivp(p, make_partition(0.0, 2.0, n), State(1.0, 0.0, 0.5, 0.0), corrected).final
        errs.append(np.max(np.abs(np.array(tuple(s)) - ref)))
    assert errs[0] / errs[1] >= min_ratio and errs[1] / errs[2] >= min_ratio


def test_constant_coefficient_independent_of_partition():
    p = profile("2.25")
    s0 = State(0.3, 0.0, -1.1, 0.0)
    ref = solve_ivp(p, make_partition(0.0, 7.0, 1), s0).final
    for pts in [(0.0, 0.1, 3.0, 7.0), (0.0, 2.0, 2.5, 6.9, 7.0)]:
        s = solve_ivp(p, Partition(pts), s0).final
        np.testing.assert_allclose(list(s), list(ref), atol=1e-12)


@pytest.mark.parametrize("corrected", [False, True])
def test_chained_determinant(rng, corrected):
    p = random_profile(rng, complex_valued=True)
    T = transfer_over(p, make_partition(-1.0, 1.5, 40), corrected)
    assert np.linalg.det(T.to_array()) == pytest.approx(1.0, abs=1e-9)


def _round_trip_error(p, s0, n, corrected):
    fwd = solve_ivp(p, make_partition(0.0, 1.5, n), s0, corrected).final
    back = solve_ivp(p, make_partition(1.5, 0.0, n), fwd, corrected).final
    return np.max(np.abs(np.array(list(back)) - np.array(list(s0))))


def test_forward_then_backward(rng):
    # reversing an uncorrected section gives its exact inverse
    for complex_valued in (False, True):
        p = random_profile(rng, complex_valued)
        s0 = State(*rng.normal(size=4))
        assert _round_trip_error(p, s0, 32, corrected=False) <= 1e-8


def test_corrected_round_trip_closes_at_method_order(rng):
    # W P reversed is not (W P)^-1, so the loop only closes to truncation error
    for complex_valued in (False, True):
        p = random_profile(rng, complex_valued)
        s0 = State(*rng.normal(size=4))
        e32, e64 = (_round_trip_error(p, s0, n, corrected=True) for n in (32, 64))
        assert e32 / e64 >= 6.0


def test_real_and_complex_paths_agree(rng):
    # the real psi path and the full transfer matrix describe the same map
    p = random_profile(rng)
    part = make_partition(-0.5, 1.0, 12)
    s0 = State(1.0, -0.5, 0.25, 2.0)
    for corrected in (False, True):
        s = solve_ivp(p, part, s0, corrected).final
        T = transfer_over(p, part, corrected)
        np.testing.assert_allclose(list(s), T.to_array() @ np.array(list(s0)), atol=1e-12)
