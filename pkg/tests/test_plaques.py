"""Plaque circles, bending angles, convex certification, bending flow.

Angle values are frozen from the roof construction evaluated at the
marked pleating root of (2.2, 2.2) and at a flat seed bent by a known
parameter; the flat and maximal-cusp limits pin the angle range ends.
"""

import math

import pytest

from pleatlab.chartor import coords, matrices_from_traces, pleating_candidates
from pleatlab.errors import NotFuchsian, ParabolicOrIdentity
from pleatlab.plaques import bending_angle, certify, plaque_circle, quakebend

MARKED_ROOT_22 = 2.42 + 1.9554027718094293j
THETA_22 = 2.189525017467147
# disc-zero seed: x = y = 2*sqrt(2), z = x*y/2 = 4
FLAT_X = 2.0 * math.sqrt(2.0)
# measured second-side angle after bending the flat seed by 0.3
THETA_B_BENT = 0.3034331639087853


def test_certify_marked_root_frozen_angles():
    cert = certify(coords(2.2, 2.2, MARKED_ROOT_22))
    th_a, th_b, th_p = cert.theta
    assert abs(th_a - THETA_22) < 1e-12
    assert abs(th_b - THETA_22) < 1e-12
    assert th_p == math.pi
    assert cert.is_convex
    assert cert.is_piecewise_geodesic
    assert cert.in_pleating_variety
    assert not cert.is_fuchsian_boundary
    assert cert.max_planarity_residual < 1e-12
    assert cert.max_real_trace_residual < 1e-12


def test_certify_conjugate_root_swaps_sides():
    marked = certify(coords(2.2, 2.2, MARKED_ROOT_22))
    mirrored = certify(coords(2.2, 2.2, MARKED_ROOT_22.conjugate()))
    assert abs(marked.theta[0] - mirrored.theta[0]) < 1e-12
    assert abs(marked.theta[1] - mirrored.theta[1]) < 1e-12
    assert marked.side_of_curve["a"] != mirrored.side_of_curve["a"]
    assert marked.side_of_curve["b"] != mirrored.side_of_curve["b"]


def test_certify_fuchsian_boundary():
    cert = certify(coords(3.0, 3.0, 3.0))
    th_a, th_b, _ = cert.theta
    assert abs(th_a) < 1e-12
    assert abs(th_b) < 1e-12
    assert cert.is_convex
    assert cert.is_fuchsian_boundary
    assert not cert.in_pleating_variety


def test_certify_maximal_cusp():
    cert = certify(coords(2.0, 2.0, 2.0 + 2.0j))
    assert cert.theta == (math.pi, math.pi, math.pi)
    assert cert.is_convex
    assert cert.curves["a"].parabolic
    assert cert.curves["b"].parabolic
    assert cert.max_planarity_residual < 1e-12


def test_certify_off_locus_not_convex():
    """A planar structure away from the cusped locus is piecewise
    geodesic but cannot be convex (no parabolic puncture)."""
    cert = certify(coords(2.2, 2.2, 3.0))
    assert cert.is_piecewise_geodesic
    assert not cert.is_convex
    assert not cert.in_pleating_variety


def test_bending_angle_planar_structure_is_zero():
    pair = matrices_from_traces(coords(3.0, 3.0, 3.0))
    assert bending_angle(pair, "a") == 0.0
    assert bending_angle(pair, "b") == 0.0


def test_bending_angle_flat_region_is_zero():
    """Real roots beyond the bending locus measure no crease, even at
    points where the roof wedge is degenerate."""
    x, y = 2.675005555491318, 3.128419897854198
    z, _ = pleating_candidates(x, y)
    assert z.imag == 0.0
    pair = matrices_from_traces(coords(x, y, z))
    assert bending_angle(pair, "a") == 0.0


def test_bending_angle_parabolic_rejected():
    pair = matrices_from_traces(coords(2.0, 2.0, 2.0 + 2.0j))
    with pytest.raises(ParabolicOrIdentity):
        bending_angle(pair, "a")


def test_plaque_circles_are_distinct_on_bent_structures():
    pair = matrices_from_traces(coords(2.2, 2.2, MARKED_ROOT_22))
    top = plaque_circle(pair, "top")
    bottom = plaque_circle(pair, "bottom")
    assert not top.circle.approx_equal(bottom.circle, tol=1e-6)
    assert top.planarity_residual < 1e-12
    assert bottom.planarity_residual < 1e-12


def test_quakebend_preserves_first_trace_and_cusp():
    seed = coords(FLAT_X, FLAT_X, 4.0)
    bent = quakebend(seed, 0.45)
    assert abs(bent.x - FLAT_X) < 1e-13
    assert bent.cusp_residual < 1e-10
    assert bent.z.imag > 0.0


def test_quakebend_angle_matches_parameter():
    """Bending the flat seed by t creates exterior angle t on the first
    curve; the opposite side bends by its own, different amount."""
    seed = coords(FLAT_X, FLAT_X, 4.0)
    for t in (0.05, 0.3, 1.0):
        cert = certify(quakebend(seed, t))
        assert cert.is_convex
        assert abs(cert.theta[0] - t) < 1e-12
    cert = certify(quakebend(seed, 0.3))
    assert abs(cert.theta[1] - THETA_B_BENT) < 1e-12
    assert abs(cert.theta[1] - 0.3) > 1e-3


def test_quakebend_requires_fuchsian_seed():
    with pytest.raises(NotFuchsian):
        quakebend(coords(2.2, 2.2, MARKED_ROOT_22), 0.3)


def test_angle_decreases_away_from_cusp():
    """Along x = y the bending angle falls from pi (cusp) toward 0."""
    prev = math.pi
    for x in (2.05, 2.2, 2.4, 2.6, 2.79):
        z, _ = pleating_candidates(x, x)
        th = certify(coords(x, x, z)).theta[0]
        assert 0.0 < th < prev
        prev = th
