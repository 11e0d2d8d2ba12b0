"""Length coordinates, Jacobians, solvers, volume, deformation probes.

Frozen values: the curve length at trace 3 is 2*arccosh(3/2); the
Jacobian determinant at the frozen marked root is purely imaginary with
the magnitude given by the closed form; the cusp solve must land on
(2, 2, 2+2i) exactly within Newton tolerance.
"""

import math

import numpy as np
import pytest

from pleatlab.chartor import coords, pleating_candidates
from pleatlab.errors import (
    CoordinateDegeneracy,
    NewtonDivergence,
    TargetOutsideImage,
    UncertifiedPathPoint,
)
from pleatlab import lengthmap as lm
from pleatlab.plaques import certify

MARKED_ROOT_22 = 2.42 + 1.9554027718094293j
LENGTH_TRACE_3 = 1.9248473002384139  # 2*arccosh(1.5)
DET_ABS_22 = 18.622883541042167
DLDPHI_EIGS_21_23 = (0.4043158213445197, 0.618328607660773)
VOLUME_21_TO_2524 = -1.8273655396883792


def _marked(x, y):
    z, _ = pleating_candidates(x, y)
    return coords(x, y, z)


def test_length_map_fuchsian_slots():
    slots = lm.length_map(certify(coords(3.0, 3.0, 3.0)))
    assert slots["a"].kind == "length"
    assert abs(slots["a"].value - LENGTH_TRACE_3) < 1e-14
    assert slots["a"].imag_residual < 1e-14
    assert slots["puncture"].kind == "trace"
    assert slots["puncture"].value == -2.0


def test_length_map_maximal_cusp_slots():
    slots = lm.length_map(certify(coords(2.0, 2.0, 2.0 + 2.0j)))
    kinds = [slots[k].kind for k in ("a", "b", "puncture")]
    values = [slots[k].value for k in ("a", "b", "puncture")]
    assert kinds == ["trace", "trace", "trace"]
    assert values == [2.0, 2.0, -2.0]


def test_jacobian_closed_form_and_fd():
    rep = lm.holo_length_jacobian(coords(2.2, 2.2, MARKED_ROOT_22))
    assert abs(rep["det"].real) < 1e-12
    assert abs(rep["det"].imag - DET_ABS_22) < 1e-10
    assert rep["fd_residual"] < 1e-6
    m = np.array(rep["matrix"])
    assert abs(np.linalg.det(m) - rep["det"]) < 1e-10


def test_jacobian_degenerate_coordinates_rejected():
    t = coords(2.0 + 1e-9, 2.3, 3.0 + 1.0j)
    with pytest.raises(CoordinateDegeneracy):
        lm.holo_length_jacobian(t)


def test_jacobian_det_vanishes_at_branch_corner():
    corner = 2.0 * math.sqrt(2.0)
    rep = lm.holo_length_jacobian(_marked(corner - 1e-10, corner - 1e-10))
    assert abs(rep["det"]) < 1e-4


def test_solve_for_lengths_roundtrip():
    res = lm.solve_for_lengths(1.3, 0.9)
    assert abs(res.lengths[0] - 1.3) < 1e-12
    assert abs(res.lengths[1] - 0.9) < 1e-12
    assert abs(res.coords.x - 2.0 * math.cosh(0.65)) < 1e-12
    assert res.residual < 1e-9


def test_solve_for_angles_interior():
    res = lm.solve_for_angles(2.0, 2.4)
    assert abs(res.thetas[0] - 2.0) < 1e-9
    assert abs(res.thetas[1] - 2.4) < 1e-9


def test_solve_reaches_maximal_cusp():
    res = lm.solve_for_angles(math.pi, math.pi, seed=(1.0, 1.0))
    assert abs(res.coords.x - 2.0) < 1e-8
    assert abs(res.coords.y - 2.0) < 1e-8
    assert abs(res.coords.z - (2.0 + 2.0j)) < 1e-8


def test_solve_mixed_targets():
    res = lm.solve_targets({"a": ("length", 1.1), "b": ("angle", 2.2)})
    assert abs(res.lengths[0] - 1.1) < 1e-9
    assert abs(res.thetas[1] - 2.2) < 1e-9


def test_solve_small_angles_uses_homotopy():
    """Targets hugging the flat boundary need the target continuation."""
    res = lm.solve_for_angles(0.415, 0.185, seed=(1.0, 1.0))
    assert abs(res.thetas[0] - 0.415) < 1e-9
    assert abs(res.thetas[1] - 0.185) < 1e-9


def test_solve_rejects_bad_targets():
    with pytest.raises(TargetOutsideImage):
        lm.solve_for_angles(4.0, 2.0)
    with pytest.raises(TargetOutsideImage):
        lm.solve_for_lengths(-1.0, 1.0)


def test_newton_divergence_reported():
    with pytest.raises(NewtonDivergence):
        lm.solve_for_angles(2.0, 2.0, seed=(8.0, 8.0), max_iter=0, homotopy=False)


def test_dl_dphi_symmetric_positive_definite():
    rep = lm.dl_dphi(2.1, 2.3)
    assert rep["symmetry_residual"] < 1e-6
    assert abs(rep["eigenvalues"][0] - DLDPHI_EIGS_21_23[0]) < 1e-5
    assert abs(rep["eigenvalues"][1] - DLDPHI_EIGS_21_23[1]) < 1e-5
    assert rep["eigenvalues"][0] > 0.0
    m = rep["matrix"]
    assert m[0, 0] > 0.0 and m[1, 1] > 0.0
    # lengths fall as cone angles grow: off-diagonal coupling is negative
    assert m[0, 1] < 0.0


def test_dl_dphi_near_boundary_rejected():
    with pytest.raises(CoordinateDegeneracy):
        lm.dl_dphi(0.005, 2.0)


def test_volume_between_frozen():
    res = lm.volume_between(_marked(2.1, 2.1), _marked(2.5, 2.4), nodes=64)
    assert abs(res.value - VOLUME_21_TO_2524) < 1e-4
    assert res.error_estimate < 1e-4


def test_volume_path_independence():
    t0, t1, tw = _marked(2.1, 2.1), _marked(2.5, 2.4), _marked(2.45, 2.15)
    direct = lm.volume_between(t0, t1, nodes=128)
    dogleg = lm.volume_between(t0, tw, nodes=96).value + lm.volume_between(
        tw, t1, nodes=96
    ).value
    assert abs(direct.value - dogleg) < 1e-5


def test_volume_rejects_uncertified_path():
    off_locus = coords(2.2, 2.2, 3.0)  # commutator trace far from -2
    path = [_marked(2.1, 2.1), off_locus, _marked(2.3, 2.3)]
    with pytest.raises(UncertifiedPathPoint):
        lm.schlafli_volume(path)


def test_ray_to_cusp_monotone_and_lands():
    rows = lm.ray_to_cusp((2.0, 2.2), samples=6, substeps=8)
    vols = [r["volume"] for r in rows]
    assert all(b > a for a, b in zip(vols, vols[1:]))
    end = rows[-1]["result"].coords
    assert abs(end.x - 2.0) < 1e-8
    assert abs(end.z - (2.0 + 2.0j)) < 1e-8


def test_concavity_probe():
    probe = lm.concavity_probe((1.8, 2.0), (2.6, 2.3), samples=6, substeps=12)
    assert probe["concave"]
    assert all(v < 0.0 for v in probe["second_differences"])


def test_cusp_derivative_check():
    rep = lm.cusp_derivative_check(2.2, 2.2, h=1e-4)
    assert abs(rep["ratio"]) > 1e-3
    assert rep["ratio"].real < 0.0
    assert rep["hsq_estimate"].real < 0.0
    assert rep["relative_mismatch"] < 1e-3
    assert rep["cusp_preserving_cross"] < 1e-10
    assert abs(rep["meridian_trace"] - 2.0) < 1e-10


def test_cocycle_second_order():
    rep = lm.cocycle_check()
    assert rep["exponent"] > 1.9
    assert rep["constant_residual"] == 0.0
    assert rep["conjugation_residual"] < 1e-3


def test_marked_coords_even_in_length():
    plus = lm.marked_coords(1.2, 0.8)
    minus = lm.marked_coords(-1.2, 0.8)
    assert plus.x == minus.x
    assert plus.z == minus.z
