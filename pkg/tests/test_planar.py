import cmath
import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from dtmm.planar import (
    IDENTITY,
    SINHC_SERIES_THRESHOLD,
    PlanarMatrix,
    planar_cosh,
    planar_exp,
    planar_inverse,
    planar_sinh,
    planar_sinhc,
    planar_sqrt,
)

entries = st.floats(-4, 4, allow_nan=False)
planars = st.builds(PlanarMatrix, entries, entries)


def close(p: PlanarMatrix, q: PlanarMatrix, tol: float) -> bool:
    scale = max(1.0, abs(q.a), abs(q.b))
    return abs(p.a - q.a) <= tol * scale and abs(p.b - q.b) <= tol * scale


@given(planars, planars)
def test_product_matches_matrix_product_and_commutes(p, q):
    np.testing.assert_allclose((p * q).to_array(), p.to_array() @ q.to_array(), atol=1e-12)
    assert p * q == q * p


@given(planars, planars)
def test_complex_isomorphism(p, q):
    assert (p * q).to_complex() == pytest.approx(p.to_complex() * q.to_complex(), abs=1e-12)
    assert PlanarMatrix.from_complex(p.to_complex()) == p


@pytest.mark.parametrize("B, x, expected", [
    (PlanarMatrix(1.0, 0.0), 1.0, PlanarMatrix(1.0, 0.0)),
    (PlanarMatrix(-1.0, 0.0), 1.0, PlanarMatrix(0.0, 1.0)),
    (PlanarMatrix(0.0, 2.0), 1.0, PlanarMatrix(1.0, 1.0)),
    (PlanarMatrix(0.0, 0.0), 3.0, PlanarMatrix(0.0, 0.0)),
    (PlanarMatrix(0.0, -2.0), 1.0, PlanarMatrix(-1.0, 1.0)),
])
def test_sqrt_examples(B, x, expected):
    D = planar_sqrt(B, x)
    assert D == expected
    assert close(D * D, x * B, 1e-15)


def test_sqrt_matches_closed_form_roots():
    # a = sqrt(x (|F| - G) / 2), b = sqrt(x (|F| + G) / 2) for B = (-G, H)
    G, H, x = 0.7, 1.3, 0.9
    D = planar_sqrt(PlanarMatrix(-G, H), x)
    r = math.hypot(G, H)
    assert abs(D.a) == pytest.approx(math.sqrt(x * (r - G) / 2), rel=1e-14)
    assert abs(D.b) == pytest.approx(math.sqrt(x * (r + G) / 2), rel=1e-14)
    assert 2 * D.a * D.b == pytest.approx(H * x, rel=1e-14)


@settings(max_examples=300)
@given(planars, st.floats(-3, 3))
def test_sqrt_squares_back(B, x):
    D = planar_sqrt(B, x)
    assert D.b >= 0
    assert close(D * D, x * B, 1e-12)


@pytest.mark.parametrize("D, expected", [
    (PlanarMatrix(0.0, 0.0), PlanarMatrix(1.0, 0.0)),
    (PlanarMatrix(0.0, math.pi), PlanarMatrix(-1.0, 0.0)),
    (PlanarMatrix(1.0, 0.0), PlanarMatrix(math.e, 0.0)),
])
def test_exp_examples(D, expected):
    assert close(planar_exp(D), expected, 1e-15)


def test_cosh_sinh_examples():
    assert planar_cosh(PlanarMatrix(0, 0)) == IDENTITY
    assert planar_sinh(PlanarMatrix(0, 0)) == PlanarMatrix(0.0, 0.0)
    assert planar_cosh(PlanarMatrix(1, 0)).a == pytest.approx(1.5430806348152437, rel=1e-15)
    half_pi = PlanarMatrix(0.0, math.pi / 2)
    assert close(planar_cosh(half_pi), PlanarMatrix(0.0, 0.0), 1e-15)
    assert close(planar_sinh(half_pi), PlanarMatrix(0.0, 1.0), 1e-15)


@given(planars)
def test_functions_match_scipy(D):
    M = D.to_array()
    np.testing.assert_allclose(planar_exp(D).to_array(), scipy.linalg.expm(M), rtol=1e-10, atol=1e-10)
    np.testing.assert_allclose(planar_cosh(D).to_array(), scipy.linalg.coshm(M), rtol=1e-10, atol=1e-10)
    np.testing.assert_allclose(planar_sinh(D).to_array(), scipy.linalg.sinhm(M), rtol=1e-10, atol=1e-10)


@given(planars)
def test_exp_inverse_and_hyperbolic_identity(D):
    assert close(planar_exp(D) * planar_exp(-D), IDENTITY, 1e-13)
    c, s = planar_cosh(D), planar_sinh(D)
    assert close(c * c - s * s, IDENTITY, 1e-12 * max(1.0, c.det))


@pytest.mark.parametrize("D, expected", [
    (PlanarMatrix(0.0, 0.0), PlanarMatrix(1.0, 0.0)),
    (PlanarMatrix(1e-9, 0.0), PlanarMatrix(1.0, 0.0)),
    (PlanarMatrix(1.0, 0.0), PlanarMatrix(math.sinh(1.0), 0.0)),
])
def test_sinhc_examples(D, expected):
    assert close(planar_sinhc(D), expected, 1e-15)


@given(planars)
def test_sinhc_matches_complex_sinh_over_z(D):
    z = D.to_complex()
    expected = cmath.sinh(z) / z if z != 0 else 1.0
    got = planar_sinhc(D).to_complex()
    assert abs(got - expected) <= 1e-12 * max(1.0, abs(expected))


def test_sinhc_continuous_across_threshold():
    r = math.sqrt(SINHC_SERIES_THRESHOLD)
    for angle in np.linspace(0, 2 * math.pi, 37):
        below = PlanarMatrix(r * math.cos(angle) * (1 - 1e-15), r * math.sin(angle) * (1 - 1e-15))
        above = PlanarMatrix(r * math.cos(angle) * (1 + 1e-15), r * math.sin(angle) * (1 + 1e-15))
        assert below.det < SINHC_SERIES_THRESHOLD <= above.det or below.det == above.det
        diff = planar_sinhc(below) - planar_sinhc(above)
        assert max(abs(diff.a), abs(diff.b)) <= 1e-15


@settings(max_examples=200)
@given(st.floats(0.01, 3.16), st.floats(0, 2 * math.pi))
def test_sinhc_agrees_with_explicit_product(radius, angle):
    D = PlanarMatrix(radius * math.cos(angle), radius * math.sin(angle))
    if D.det < SINHC_SERIES_THRESHOLD:
        return
    assert close(planar_sinhc(D), planar_inverse(D) * planar_sinh(D), 1e-12)


@pytest.mark.parametrize("D, expected", [
    (PlanarMatrix(1.0, 0.0), PlanarMatrix(1.0, 0.0)),
    (PlanarMatrix(0.0, 1.0), PlanarMatrix(0.0, -1.0)),
    (PlanarMatrix(3.0, 4.0), PlanarMatrix(0.12, -0.16)),
])
def test_inverse_examples(D, expected):
    assert close(planar_inverse(D), expected, 1e-15)
    assert close(D * planar_inverse(D), IDENTITY, 1e-15)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        planar_inverse(PlanarMatrix(0.0, 0.0))


@settings(max_examples=300)
@given(planars, st.floats(-3, 3))
def test_branch_invariance(B, x):
    D = planar_sqrt(B, x)
    assert close(planar_cosh(D), planar_cosh(-D), 1e-13)
    assert close(x * planar_sinhc(D), x * planar_sinhc(-D), 1e-13)
