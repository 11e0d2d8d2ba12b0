"""Pants plaques, planarity certification, and bending angles.

Cutting the once-punctured torus along the a-curve leaves a pants whose
boundary curves carry the words ``a``, ``b a b^-1`` and the puncture
word ``a b a^-1 b^-1``; cutting along the b-curve gives ``b``,
``a b a^-1`` and ``b a b^-1 a^-1``.  When those words all have real
traces the corresponding subgroup preserves a circle on the sphere, and
the convex-core boundary piece it carries is the totally geodesic
"plaque" over that circle.  Certification checks exactly that: real
traces, concyclic housed fixed points, and positive bending angles
between neighbouring plaques.

The bending angle along a curve is read off a "roof": normalize the
curve's axis to (0, infinity), take the two plaque circles through it
(the base plaque and its neighbour, obtained by the documented
translate), and measure the wedge between the rays that carry the two
cusp points.  A third reference point (a fixed point of the other
generator, which lies strictly inside the convex hull's wedge) picks
which of the two complementary wedges is the inside.  The exterior
bending angle is then pi minus the inside wedge.
"""

import cmath
import math
from dataclasses import dataclass
from itertools import combinations

from pleatlab.chartor import RepPair, TraceCoords, matrices_from_traces
from pleatlab.errors import (
    NonPlanar,
    NonRealTraces,
    NotFuchsian,
    ParabolicOrIdentity,
    PleatlabError,
    ReducibleLocus,
)
from pleatlab.moebius import (
    MoebiusMap,
    balanced_fixed_points,
    chordal_distance,
    circle_through,
    concyclicity_residual,
    map_to_zero_infinity,
    rotation_about_axis,
)

REAL_TRACE_TOL = 1e-6
PLANARITY_TOL = 1e-6
PARABOLIC_FLAG_TOL = 1e-8
CONVEXITY_TOL = 1e-8
FUCHSIAN_TOL = 1e-8

SIDE_DATA = {
    "top": {
        "axis_letter": "a",
        "boundary_words": ("a", "baB", "abAB"),
        "translate_word": "B",
        "test_letter": "b",
    },
    "bottom": {
        "axis_letter": "b",
        "boundary_words": ("b", "abA", "baBA"),
        "translate_word": "A",
        "test_letter": "a",
    },
}

CURVE_SIDE = {"a": "top", "b": "bottom"}


@dataclass(frozen=True)
class Plaque:
    side: str
    circle: object
    boundary_words: tuple
    translate_word: str
    planarity_residual: float
    housed_points: tuple


@dataclass(frozen=True)
class CurveCertificate:
    name: str
    trace: complex
    real_trace_residual: float
    parabolic_residual: float
    parabolic: bool
    theta: float | None


@dataclass(frozen=True)
class Certification:
    coords: TraceCoords
    curves: dict
    plaques: dict
    plaque_errors: dict
    side_of_curve: dict
    is_piecewise_geodesic: bool
    is_convex: bool
    is_fuchsian_boundary: bool
    in_pleating_variety: bool

    @property
    def theta(self):
        return tuple(self.curves[name].theta for name in ("a", "b", "puncture"))

    @property
    def max_real_trace_residual(self):
        return max(c.real_trace_residual for c in self.curves.values())

    @property
    def max_planarity_residual(self):
        vals = [p.planarity_residual for p in self.plaques.values() if p is not None]
        return max(vals) if vals else math.inf


def _parabolic_vertex(matrix):
    a, _, c, d = matrix
    if abs(c) < 1e-13:
        return None
    return (a - d) / (2.0 * c)


def _stable_generator_axis(pair, letter):
    gen = pair.a if letter == "a" else pair.b
    return balanced_fixed_points(gen)


def _housed_points(pair, side):
    """Fixed points housed on a plaque, stably, with elliptic words skipped."""
    data = SIDE_DATA[side]
    axis_letter = data["axis_letter"]
    conj_letter = "b" if axis_letter == "a" else "a"
    conj = pair.map(conj_letter)
    points = []
    trace0 = pair.trace(axis_letter)
    if min(abs(trace0 - 2.0), abs(trace0 + 2.0)) < 1e-13:
        vertex = _parabolic_vertex((pair.a if axis_letter == "a" else pair.b).matrix)
        points.append(vertex)
        points.append(conj(vertex))
    else:
        att, rep = _stable_generator_axis(pair, axis_letter)
        points.extend([att, rep])
        points.extend([conj(att), conj(rep)])
    cusp_word = data["boundary_words"][2]
    cusp_matrix = pair.matrix(cusp_word)
    cusp_trace = cusp_matrix[0] + cusp_matrix[3]
    if min(abs(cusp_trace - 2.0), abs(cusp_trace + 2.0)) < 1e-9:
        points.append(_parabolic_vertex(cusp_matrix))
    elif abs(cusp_trace.real) > 2.0 or abs(cusp_trace.imag) > 1e-9:
        from pleatlab.moebius import fixed_points

        points.extend(fixed_points(MoebiusMap.from_tuple(cusp_matrix)))
    # Elliptic cusp word (real trace in (-2, 2)): its fixed points are a
    # conjugate pair off the plaque plane, so they are not housed.
    return tuple(points)


def _spread_triple(points):
    best = None
    best_score = -1.0
    for combo in combinations(range(len(points)), 3):
        score = min(
            chordal_distance(points[i], points[j])
            for i, j in combinations(combo, 2)
        )
        if score > best_score + 1e-15:
            best_score = score
            best = combo
    if best is None or best_score < 1e-12:
        raise PleatlabError("housed points do not contain a separated triple")
    return best


def plaque_circle(pair, side, real_tol=REAL_TRACE_TOL):
    """Fit the plaque circle of one pants side and measure planarity.

    Raises :class:`NonRealTraces` when the pants boundary words fail the
    real-trace precondition.
    """
    data = SIDE_DATA[side]
    residuals = [abs(pair.trace(w).imag) for w in data["boundary_words"]]
    if max(residuals) > real_tol:
        raise NonRealTraces(
            f"{side} pants traces have imaginary parts up to {max(residuals):.3e}"
        )
    points = _housed_points(pair, side)
    fit = _spread_triple(points)
    circle = circle_through(*(points[i] for i in fit))
    rest = [points[i] for i in range(len(points)) if i not in fit]
    p0, p1, p2 = (points[i] for i in fit)
    residual = 0.0
    for w in rest:
        residual = max(residual, concyclicity_residual(p0, p1, p2, w))
    return Plaque(
        side=side,
        circle=circle,
        boundary_words=data["boundary_words"],
        translate_word=data["translate_word"],
        planarity_residual=residual,
        housed_points=points,
    )


def bending_angle(pair, curve):
    """Signed exterior bending angle along the a- or b-curve.

    Positive means convex (the neighbouring plaques fold toward the
    hull), zero is Fuchsian, negative is a concave crease.  Requires the
    curve's holonomy to be non-parabolic.
    """
    side = CURVE_SIDE[curve]
    data = SIDE_DATA[side]
    trace0 = pair.trace(curve)
    if min(abs(trace0 - 2.0), abs(trace0 + 2.0)) < 1e-13:
        raise ParabolicOrIdentity("bending angle undefined on a parabolic curve")
    t = pair.coords
    scale = max(1.0, abs(t.x), abs(t.y), abs(t.z))
    if max(abs(t.x.imag), abs(t.y.imag), abs(t.z.imag)) < 1e-12 * scale:
        # Real coordinates put every plaque in one plane: the structure
        # is bending-free and the roof wedge below is degenerate.
        return 0.0
    att, rep = _stable_generator_axis(pair, curve)
    h = map_to_zero_infinity(rep, att)
    cusp_matrix = pair.matrix(data["boundary_words"][2])
    s = _parabolic_vertex(cusp_matrix)
    translate = pair.map(data["translate_word"])
    d1 = h(s)
    d2 = h(translate(s))
    if d1 is None or d2 is None or abs(d1) < 1e-13 or abs(d2) < 1e-13:
        raise PleatlabError("degenerate roof: cusp point on the curve axis")
    test_att, test_rep = _stable_generator_axis(pair, data["test_letter"])
    phi1 = cmath.phase(d1)
    delta2 = (cmath.phase(d2) - phi1) % (2.0 * math.pi)
    psi = None
    for probe in (test_att, test_rep):
        dt = h(probe)
        if dt is None or abs(dt) < 1e-13:
            continue
        delta_t = (cmath.phase(dt) - phi1) % (2.0 * math.pi)
        if delta_t in (0.0, delta2):
            continue
        psi = delta2 if 0.0 < delta_t < delta2 else 2.0 * math.pi - delta2
        break
    if psi is None:
        raise PleatlabError("no usable interior probe for the roof wedge")
    return math.pi - psi


def certify(
    t,
    real_tol=REAL_TRACE_TOL,
    planar_tol=PLANARITY_TOL,
    parabolic_tol=PARABOLIC_FLAG_TOL,
    convex_tol=CONVEXITY_TOL,
):
    """Certify the convex/pleated structure at trace coordinates ``t``.

    Never raises for ordinary geometric failures; those are reported in
    the returned :class:`Certification` flags and residuals.  Raises
    :class:`ReducibleLocus` for coordinates with no irreducible
    realization.
    """
    t = t.normalized()
    pair = matrices_from_traces(t)
    cusp_residual = t.cusp_residual
    curves = {}
    for name, trace in (("a", t.x), ("b", t.y)):
        curves[name] = {
            "trace": trace,
            "real": abs(trace.imag),
            "parab": abs(trace - 2.0),
        }
    plaques = {}
    errors = {}
    for side in ("top", "bottom"):
        try:
            plaques[side] = plaque_circle(pair, side, real_tol=real_tol)
            errors[side] = None
        except (NonRealTraces, PleatlabError) as exc:
            plaques[side] = None
            errors[side] = str(exc)
    thetas = {}
    for name in ("a", "b"):
        info = curves[name]
        side = CURVE_SIDE[name]
        if info["parab"] < parabolic_tol:
            thetas[name] = math.pi
        elif plaques[side] is not None and info["real"] <= real_tol:
            try:
                thetas[name] = bending_angle(pair, name)
            except PleatlabError:
                thetas[name] = None
        else:
            thetas[name] = None
    theta_p = math.pi if cusp_residual < parabolic_tol else None
    curve_records = {
        "a": CurveCertificate(
            name="a",
            trace=t.x,
            real_trace_residual=curves["a"]["real"],
            parabolic_residual=curves["a"]["parab"],
            parabolic=curves["a"]["parab"] < parabolic_tol,
            theta=thetas["a"],
        ),
        "b": CurveCertificate(
            name="b",
            trace=t.y,
            real_trace_residual=curves["b"]["real"],
            parabolic_residual=curves["b"]["parab"],
            parabolic=curves["b"]["parab"] < parabolic_tol,
            theta=thetas["b"],
        ),
        "puncture": CurveCertificate(
            name="puncture",
            trace=t.kappa,
            real_trace_residual=abs(t.kappa.imag),
            parabolic_residual=cusp_residual,
            parabolic=cusp_residual < parabolic_tol,
            theta=theta_p,
        ),
    }
    is_pg = (
        all(p is not None for p in plaques.values())
        and all(p.planarity_residual <= planar_tol for p in plaques.values())
        and curves["a"]["real"] <= real_tol
        and curves["b"]["real"] <= real_tol
        and abs(t.kappa.imag) <= real_tol
    )
    defined_thetas = [v for v in thetas.values() if v is not None]
    is_convex = (
        is_pg
        and cusp_residual < parabolic_tol
        and len(defined_thetas) == 2
        and all(v >= -convex_tol for v in defined_thetas)
    )
    is_fuchsian = t.is_real(FUCHSIAN_TOL)
    side_a = "top" if t.z.imag >= 0 else "bottom"
    return Certification(
        coords=t,
        curves=curve_records,
        plaques=plaques,
        plaque_errors=errors,
        side_of_curve={
            "a": side_a,
            "b": "bottom" if side_a == "top" else "top",
        },
        is_piecewise_geodesic=is_pg,
        is_convex=is_convex,
        is_fuchsian_boundary=is_fuchsian,
        in_pleating_variety=is_convex and not is_fuchsian,
    )


def quakebend(t, angle):
    """Bend a Fuchsian structure along the a-curve by the given angle.

    The a-holonomy is kept and the b-holonomy is premultiplied by the
    elliptic rotation about the a-axis, producing new trace coordinates
    on the same parabolic-commutator locus.  Requires a Fuchsian seed
    (all real traces, commutator trace -2).
    """
    if not t.is_real(1e-9):
        raise NotFuchsian("quakebend seed must have real traces")
    if t.cusp_residual > 1e-8:
        raise NotFuchsian("quakebend seed must sit on the cusped locus")
    pair = matrices_from_traces(t)
    att, rep = balanced_fixed_points(pair.a)
    conj = map_to_zero_infinity(rep, att)
    bend = rotation_about_axis(pair.a, angle, conjugator=conj)
    new_b = bend @ pair.b
    new_ab = pair.a @ new_b
    return TraceCoords(t.x, new_b.trace, new_ab.trace)
