"""Length/angle coordinates, Jacobians, volume, and deformation probes.

The coordinates of a certified structure are the real translation
lengths of the two core curves (with the commutator trace as the third,
frozen slot); the dual coordinates are the exterior bending angles, or
equivalently the cone angles ``phi = 2*(pi - theta)`` of the doubled
manifold.  This module provides:

* the holomorphic Jacobian of (length, length, commutator trace) in the
  trace chart, in closed form with a finite-difference cross-check;
* damped Newton solvers for length, angle, and mixed targets over the
  marked pleating root;
* the angle-space derivative matrix ``d(lengths)/d(cone angles)``;
* volume differences through the Schlafli form
  ``dVol = -1/2 * sum_i l_i dphi_i`` with trapezoid quadrature and a
  Richardson error estimate, plus concavity and monotonicity probes;
* a cusp-opening derivative check against the canonical commuting
  model, and a finite-difference group-cocycle check for deformation
  families.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from pleatlab import kernel
from pleatlab.chartor import (
    TraceCoords,
    commuting_canonical_pair,
    coords,
    matrices_from_traces,
    pleating_candidates,
)
from pleatlab.doubling import doubled_holonomy
from pleatlab.errors import (
    CoordinateDegeneracy,
    NewtonDivergence,
    ParabolicOrIdentity,
    PleatlabError,
    TargetOutsideImage,
    UncertifiedPathPoint,
)
from pleatlab.moebius import balanced_fixed_points, map_to_zero_infinity, rotation_about_axis
from pleatlab.plaques import bending_angle, certify
from pleatlab.words import WordEvaluator, random_reduced_word

NEWTON_TOL = 1e-9
NEWTON_MAX_ITER = 50
NEWTON_FD_STEP = 1e-6
CONTINUATION_RESIDUAL = 1e-7
CONTINUATION_MAX_NEWTON = 8
DEGENERACY_TOL = 1e-6


@dataclass(frozen=True)
class LengthSlot:
    name: str
    kind: str  # "length" | "trace"
    value: float
    imag_residual: float


@dataclass(frozen=True)
class NewtonResult:
    coords: TraceCoords
    lengths: tuple
    thetas: tuple
    iterations: int
    residual: float


@dataclass(frozen=True)
class VolumeResult:
    value: float
    error_estimate: float
    nodes: int


def complex_curve_length(trace):
    """Complex translation length 2*arccosh(trace/2)."""
    return 2.0 * cmath.acosh(trace / 2.0)


def length_map(cert):
    """Length/trace coordinate slots of a certified structure."""
    slots = {}
    for name in ("a", "b"):
        curve = cert.curves[name]
        if curve.parabolic:
            slots[name] = LengthSlot(
                name=name,
                kind="trace",
                value=curve.trace.real,
                imag_residual=abs(curve.trace.imag),
            )
        else:
            lam = complex_curve_length(curve.trace)
            slots[name] = LengthSlot(
                name=name,
                kind="length",
                value=lam.real,
                imag_residual=abs(lam.imag),
            )
    punc = cert.curves["puncture"]
    slots["puncture"] = LengthSlot(
        name="puncture",
        kind="trace",
        value=punc.trace.real,
        imag_residual=abs(punc.trace.imag),
    )
    return slots


# ---------------------------------------------------------------------------
# Holomorphic Jacobian in the trace chart


def _jacobian_rows(x, y, z):
    sx = cmath.sqrt(x * x - 4.0)
    sy = cmath.sqrt(y * y - 4.0)
    row_a = (2.0 / sx, 0.0j, 0.0j)
    row_b = (0.0j, 2.0 / sy, 0.0j)
    row_k = (2.0 * x - y * z, 2.0 * y - x * z, 2.0 * z - x * y)
    return (row_a, row_b, row_k)


def holo_length_jacobian(t, fd_check=True, h=1e-6):
    """Closed-form Jacobian of (length_a, length_b, kappa) at ``t``.

    Raises :class:`CoordinateDegeneracy` when either curve trace is too
    close to +/-2 for the length coordinate to be differentiable.  The
    optional cross-check compares every entry against central finite
    differences taken in both the real and the imaginary coordinate
    directions (verifying holomorphy as well as the formulas).
    """
    x, y, z = t.x, t.y, t.z
    for name, val in (("a", x), ("b", y)):
        if min(abs(val - 2.0), abs(val + 2.0)) < DEGENERACY_TOL:
            raise CoordinateDegeneracy(
                f"curve {name} trace {val} is within {DEGENERACY_TOL} of +/-2"
            )
    rows = _jacobian_rows(x, y, z)
    sx = cmath.sqrt(x * x - 4.0)
    sy = cmath.sqrt(y * y - 4.0)
    det = 4.0 * (2.0 * z - x * y) / (sx * sy)
    fd_residual = None
    if fd_check:
        def f(xx, yy, zz):
            return (
                complex_curve_length(xx),
                complex_curve_length(yy),
                kappa_poly(xx, yy, zz),
            )

        fd_residual = 0.0
        base = (x, y, z)
        for j in range(3):
            for direction in (1.0, 1.0j):
                up = list(base)
                dn = list(base)
                up[j] += h * direction
                dn[j] -= h * direction
                fu = f(*up)
                fd = f(*dn)
                for i in range(3):
                    approx = (fu[i] - fd[i]) / (2.0 * h * direction)
                    fd_residual = max(fd_residual, abs(approx - rows[i][j]))
    return {
        "matrix": rows,
        "det": det,
        "fd_residual": fd_residual,
    }


def kappa_poly(x, y, z):
    return x * x + y * y + z * z - x * y * z - 2.0


# ---------------------------------------------------------------------------
# Newton solvers over the marked pleating root


def marked_coords(l_a, l_b):
    """Marked-root trace coordinates for the given curve lengths."""
    x = 2.0 * math.cosh(l_a / 2.0)
    y = 2.0 * math.cosh(l_b / 2.0)
    z, _ = pleating_candidates(x, y)
    return coords(x, y, z)


def measure_structure(l_a, l_b):
    """Lengths and raw geometric bending angles at marked coordinates.

    The angles are evaluated without any parabolic snapping so the map
    stays smooth arbitrarily close to the cusp; exactly parabolic curve
    traces report angle pi.
    """
    t = marked_coords(l_a, l_b)
    pair = matrices_from_traces(t)
    thetas = []
    for name in ("a", "b"):
        try:
            thetas.append(bending_angle(pair, name))
        except ParabolicOrIdentity:
            thetas.append(math.pi)
    return t, (abs(l_a), abs(l_b)), tuple(thetas)


def _newton2(residual_fn, u0, tol=NEWTON_TOL, max_iter=NEWTON_MAX_ITER, fd_h=NEWTON_FD_STEP):
    def try_residual(u):
        """Residual at a trial point, or None where it is undefined
        (overflow or a degenerate structure); the line search treats
        such points as rejected steps."""
        try:
            r = np.array(residual_fn(u), dtype=float)
        except (PleatlabError, OverflowError, ValueError):
            return None
        if not np.all(np.isfinite(r)):
            return None
        return r

    u = np.array(u0, dtype=float)
    r = try_residual(u)
    if r is None:
        raise NewtonDivergence(f"residual undefined at the seed {tuple(u0)}")
    norm = float(np.max(np.abs(r)))
    iterations = 0
    while norm > tol:
        if iterations >= max_iter:
            raise NewtonDivergence(
                f"no convergence after {max_iter} iterations (residual {norm:.3e})"
            )
        iterations += 1
        jac = np.empty((2, 2))
        for j in range(2):
            up = u.copy()
            dn = u.copy()
            up[j] += fd_h
            dn[j] -= fd_h
            r_up = try_residual(up)
            r_dn = try_residual(dn)
            if r_up is None or r_dn is None:
                raise NewtonDivergence("residual undefined next to an iterate")
            jac[:, j] = (r_up - r_dn) / (2.0 * fd_h)
        try:
            step = np.linalg.solve(jac, r)
        except np.linalg.LinAlgError as exc:
            raise NewtonDivergence("singular Jacobian") from exc
        if not np.all(np.isfinite(step)):
            raise NewtonDivergence("non-finite Newton step")
        scale = 1.0
        for _ in range(12):
            candidate = u - scale * step
            rc = try_residual(candidate)
            if rc is not None:
                nc = float(np.max(np.abs(rc)))
                if nc < norm or nc <= tol:
                    u, r, norm = candidate, rc, nc
                    break
            scale *= 0.5
        else:
            raise NewtonDivergence("damping failed to reduce the residual")
    return u, iterations, norm


def _target_residual(targets):
    """Build the residual function for per-curve (kind, value) targets."""
    kinds = []
    values = []
    for name in ("a", "b"):
        kind, value = targets[name]
        if kind not in ("length", "angle"):
            raise PleatlabError(f"unknown target kind {kind!r}")
        if kind == "angle" and not 0.0 < value <= math.pi:
            raise TargetOutsideImage(
                f"bending-angle target {value} outside (0, pi]"
            )
        if kind == "length" and value < 0.0:
            raise TargetOutsideImage(f"length target {value} is negative")
        kinds.append(kind)
        values.append(float(value))

    need_angles = any(kind == "angle" for kind in kinds)

    def residual(u):
        out = []
        pair = None
        if need_angles:
            pair = matrices_from_traces(marked_coords(u[0], u[1]))
        for i, (name, kind) in enumerate(zip("ab", kinds)):
            if kind == "length":
                out.append(abs(u[i]) - values[i])
                continue
            try:
                theta = bending_angle(pair, name)
            except ParabolicOrIdentity:
                theta = math.pi
            out.append(theta - values[i])
        return out

    return residual


def _homotopy_solve(targets, seed, tol, max_iter):
    """March the targets from the seed's own measured values.

    The residual at the seed is zero for the blended target at s = 0 by
    construction, so adaptive stepping in s turns a divergent direct
    solve into a chain of short, well-seeded ones.  Used near the flat
    (bending-free) boundary where the angle map loses smoothness.
    """
    _, lengths, thetas = measure_structure(seed[0], seed[1])
    start = {}
    for i, name in enumerate(("a", "b")):
        kind, _ = targets[name]
        start[name] = lengths[i] if kind == "length" else thetas[i]
    u = np.array(seed, dtype=float)
    s = 0.0
    step = 0.5
    total_iterations = 0
    norm = math.inf
    while s < 1.0:
        s_try = min(1.0, s + step)
        blended = {
            name: (
                targets[name][0],
                (1.0 - s_try) * start[name] + s_try * targets[name][1],
            )
            for name in ("a", "b")
        }
        try:
            u_new, iterations, norm = _newton2(
                _target_residual(blended), tuple(u), tol=tol, max_iter=20
            )
        except NewtonDivergence:
            step /= 2.0
            if step < 1.0 / 4096.0:
                raise NewtonDivergence(
                    f"target homotopy stalled at s={s:.4f}"
                ) from None
            continue
        u = u_new
        s = s_try
        total_iterations += iterations
        if s < 1.0:
            step = min(step * 2.0, 1.0 - s)
    return u, total_iterations, norm


def solve_targets(targets, seed=(1.0, 1.0), tol=NEWTON_TOL, max_iter=NEWTON_MAX_ITER,
                  homotopy=True):
    """Solve for a structure hitting per-curve length or angle targets.

    ``targets``: dict with keys "a" and "b", values ``("length", v)`` or
    ``("angle", v)``.  ``seed`` is a pair of starting curve lengths.
    When the direct damped Newton iteration diverges and ``homotopy`` is
    set, the solve is retried as a continuation in target space.
    """
    residual_fn = _target_residual(targets)
    try:
        u, iterations, norm = _newton2(residual_fn, seed, tol=tol, max_iter=max_iter)
    except NewtonDivergence:
        if not homotopy:
            raise
        u, iterations, norm = _homotopy_solve(targets, seed, tol, max_iter)
    t, lengths, thetas = measure_structure(u[0], u[1])
    return NewtonResult(
        coords=t,
        lengths=lengths,
        thetas=thetas,
        iterations=iterations,
        residual=norm,
    )


def solve_for_lengths(l_a, l_b, seed=None, **kw):
    seed = seed or (max(l_a, 0.1), max(l_b, 0.1))
    return solve_targets(
        {"a": ("length", l_a), "b": ("length", l_b)}, seed=seed, **kw
    )


def solve_for_angles(theta_a, theta_b, seed=(1.0, 1.0), **kw):
    return solve_targets(
        {"a": ("angle", theta_a), "b": ("angle", theta_b)}, seed=seed, **kw
    )


# ---------------------------------------------------------------------------
# Angle-space derivative of the lengths


def dl_dphi(theta_a, theta_b, h=1e-3, seed=(1.0, 1.0)):
    """Matrix of d(lengths)/d(cone angles) at the given bending angles.

    Cone angles are ``phi_i = 2*(pi - theta_i)``, so a central
    difference in ``theta_j`` with step ``h`` is one in ``phi_j`` with
    step ``-2h``.  Requires both angles at least ``10*h`` away from the
    degenerate values 0 and pi.
    """
    for val in (theta_a, theta_b):
        if min(val, math.pi - val) < 10.0 * h:
            raise CoordinateDegeneracy(
                "bending angles too close to 0 or pi for the angle derivative"
            )
    base = solve_for_angles(theta_a, theta_b, seed=seed)
    seed_u = base.lengths
    cols = []
    for j in range(2):
        tgt_up = [theta_a, theta_b]
        tgt_dn = [theta_a, theta_b]
        tgt_up[j] += h
        tgt_dn[j] -= h
        up = solve_for_angles(tgt_up[0], tgt_up[1], seed=seed_u)
        dn = solve_for_angles(tgt_dn[0], tgt_dn[1], seed=seed_u)
        cols.append(
            [
                (up.lengths[i] - dn.lengths[i]) / (-4.0 * h)
                for i in range(2)
            ]
        )
    matrix = np.array(cols).T
    sym_residual = float(abs(matrix[0, 1] - matrix[1, 0]))
    eigvals = np.linalg.eigvalsh((matrix + matrix.T) / 2.0)
    return {
        "matrix": matrix,
        "symmetry_residual": sym_residual,
        "eigenvalues": tuple(float(v) for v in eigvals),
        "base": base,
    }


# ---------------------------------------------------------------------------
# Volume through the Schlafli form


def _certified_state(t):
    cert = certify(t)
    if not cert.is_convex:
        raise UncertifiedPathPoint(
            f"path point {t.astuple()} failed convex certification"
        )
    lengths = []
    phis = []
    for name in ("a", "b"):
        curve = cert.curves[name]
        lam = complex_curve_length(curve.trace)
        lengths.append(lam.real)
        phis.append(2.0 * (math.pi - curve.theta))
    return cert, tuple(lengths), tuple(phis)


def _trapezoid_volume(states):
    total = 0.0
    for k in range(len(states) - 1):
        (_, l0, p0), (_, l1, p1) = states[k], states[k + 1]
        for i in range(2):
            total += -0.5 * 0.5 * (l0[i] + l1[i]) * (p1[i] - p0[i])
    return total


def schlafli_volume(path, check=True):
    """Volume difference along a path of certified structures.

    ``path`` is a sequence of :class:`TraceCoords` nodes (cusped locus,
    marked root).  Integrates ``-1/2 sum_i l_i dphi_i`` by trapezoid
    over the nodes; the error estimate is the Richardson comparison
    against the half-resolution node set.
    """
    if len(path) < 3:
        raise PleatlabError("need at least three path nodes")
    states = [_certified_state(t) for t in path]
    full = _trapezoid_volume(states)
    half = _trapezoid_volume(states[::2] if len(states) % 2 == 1 else states[::2] + [states[-1]])
    return VolumeResult(
        value=full,
        error_estimate=abs(full - half) / 3.0,
        nodes=len(path),
    )


def coordinate_segment(t0, t1, nodes):
    """Linear interpolation between two marked structures in (x, y)."""
    out = []
    for k in range(nodes + 1):
        s = k / nodes
        x = (1 - s) * t0.x.real + s * t1.x.real
        y = (1 - s) * t0.y.real + s * t1.y.real
        z, _ = pleating_candidates(x, y)
        out.append(coords(x, y, z))
    return out


def volume_between(t0, t1, nodes=64):
    """Volume difference between two structures along the coordinate
    segment joining them (any path gives the same answer; the segment is
    the cheap one)."""
    return schlafli_volume(coordinate_segment(t0, t1, nodes))


# ---------------------------------------------------------------------------
# Continuation in angle space


def continuation_to_angles(theta_start, theta_end, samples=12, seed=(1.0, 1.0),
                           residual_tol=CONTINUATION_RESIDUAL,
                           max_newton=CONTINUATION_MAX_NEWTON,
                           max_depth=8, substeps=8):
    """Walk a straight segment in angle space, solving at each sample.

    The step is halved (by inserting intermediate targets) whenever the
    Newton solve needs more than ``max_newton`` iterations or leaves a
    residual above ``residual_tol``.  Returns a list of rows with the
    path parameter, solved structure, lengths, angles, and the
    cumulative volume (integrated segmentwise through the Schlafli
    form with ``substeps`` quadrature nodes per step).
    """
    theta_start = tuple(theta_start)
    theta_end = tuple(theta_end)

    def target_at(s):
        return tuple(
            (1 - s) * theta_start[i] + s * theta_end[i] for i in range(2)
        )

    def solve_at(s, seed_u, depth=0):
        try:
            res = solve_targets(
                {"a": ("angle", target_at(s)[0]), "b": ("angle", target_at(s)[1])},
                seed=seed_u,
            )
            if res.iterations <= max_newton and res.residual <= residual_tol:
                return [(s, res)]
        except NewtonDivergence:
            if depth >= max_depth:
                raise
            res = None
        if depth >= max_depth:
            return [(s, res)] if res is not None else []
        prev_s = solved[-1][0] if solved else 0.0
        mid = (prev_s + s) / 2.0
        first = solve_at(mid, seed_u, depth + 1)
        seed_mid = first[-1][1].lengths if first else seed_u
        return first + solve_at(s, seed_mid, depth + 1)

    solved = []
    seed_u = seed
    start = solve_targets(
        {"a": ("angle", theta_start[0]), "b": ("angle", theta_start[1])},
        seed=seed_u,
    )
    solved.append((0.0, start))
    for k in range(1, samples + 1):
        s = k / samples
        entries = solve_at(s, solved[-1][1].lengths)
        solved.extend(entries)
    rows = []
    cumulative = 0.0
    err = 0.0
    for idx, (s, res) in enumerate(solved):
        if idx > 0:
            seg = volume_between(solved[idx - 1][1].coords, res.coords, nodes=substeps)
            cumulative += seg.value
            err += seg.error_estimate
        rows.append(
            {
                "s": s,
                "result": res,
                "volume": cumulative,
                "volume_error": err,
            }
        )
    return rows


def concavity_probe(theta_start, theta_end, samples=10, substeps=24, seed=(1.0, 1.0)):
    """Volume concavity along a straight angle path.

    Returns the sampled volumes, their second differences, and whether
    every second difference is negative with margin three times the
    accumulated quadrature error.
    """
    rows = continuation_to_angles(
        theta_start, theta_end, samples=samples, seed=seed, substeps=substeps
    )
    vols = [r["volume"] for r in rows]
    svals = [r["s"] for r in rows]
    err = rows[-1]["volume_error"]
    second = []
    for k in range(1, len(vols) - 1):
        h1 = svals[k] - svals[k - 1]
        h2 = svals[k + 1] - svals[k]
        if h1 <= 0 or h2 <= 0:
            continue
        second.append(
            2.0 * (h1 * vols[k + 1] - (h1 + h2) * vols[k] + h2 * vols[k - 1])
            / (h1 * h2 * (h1 + h2))
        )
    ok = all(v < -3.0 * err for v in second)
    return {
        "volumes": vols,
        "parameters": svals,
        "second_differences": second,
        "integration_error": err,
        "concave": ok,
    }


def ray_to_cusp(theta_start, samples=10, seed=(1.0, 1.0), substeps=16):
    """Walk the angle ray from ``theta_start`` toward (pi, pi).

    Returns continuation rows; volume must be strictly increasing along
    the ray (the cusp is the volume maximizer).
    """
    end = (math.pi, math.pi)
    return continuation_to_angles(
        theta_start, end, samples=samples, seed=seed, substeps=substeps
    )


# ---------------------------------------------------------------------------
# Cusp-opening derivative against the canonical commuting model


def _doubled_at(t):
    cert = certify(t)
    pair = matrices_from_traces(t)
    return doubled_holonomy(pair, cert)


def cusp_derivative_check(x0=2.2, y0=2.2, h=1e-4):
    """Derivative of the puncture traces under opening the cusp.

    Opens the commutator trace to ``-2 + s`` at fixed real (x, y); the
    pants traces stay real so the doubled holonomy persists.  Measures
    the finite-difference derivative of the filling-curve trace (the
    commutator) with respect to the meridian trace and compares its sign
    and size against the square-multiplier ratio of the canonical
    commuting model; also confirms cusp-preserving directions have zero
    cross-derivative.
    """
    def structure_at(s):
        disc = x0 * x0 * y0 * y0 - 4.0 * (x0 * x0 + y0 * y0 - s)
        z = (x0 * y0 + cmath.sqrt(disc)) / 2.0
        if z.imag < 0:
            z = (x0 * y0 - cmath.sqrt(disc)) / 2.0
        return coords(x0, y0, z)

    # Longitude trace in the lift compatible with the canonical model:
    # both the meridian and the longitude have trace +2 at the cusp.
    us = {}
    vs = {}
    for s in (-h, 0.0, h):
        t = structure_at(s)
        dh_ = _doubled_at(t)
        us[s] = dh_.trace("e")
        vs[s] = -t.kappa
    du = us[h] - us[-h]
    dv = vs[h] - vs[-h]
    if abs(du) == 0:
        raise PleatlabError("meridian trace did not move under cusp opening")
    ratio = dv / du
    # Independent estimate of the square multiplier from the trace
    # relation (v^2 - 4) = h^2 (u^2 - 4) evaluated just off the cusp.
    t_off = structure_at(h)
    dh_off = _doubled_at(t_off)
    u_off = dh_off.trace("e")
    v_off = -t_off.kappa
    hsq_est = (v_off * v_off - 4.0) / (u_off * u_off - 4.0)
    # Cusp-preserving direction: move x along the cusped locus.
    kappas = []
    for r in (-h, h):
        x = x0 + r
        z, _ = pleating_candidates(x, y0)
        kappas.append(kappa_poly(x, y0, z))
    cross = abs(kappas[1] - kappas[0]) / (2.0 * h)
    # Canonical commuting model at the cusp: dv/du equals the square
    # multiplier exactly.
    model = commuting_canonical_pair(2.0 + h, cmath.sqrt(hsq_est))
    model_lo = commuting_canonical_pair(2.0 - h, cmath.sqrt(hsq_est))
    model_dvdu = (model["v"] - model_lo["v"]) / (2.0 * h)
    return {
        "ratio": ratio,
        "hsq_estimate": hsq_est,
        "model_dvdu": model_dvdu,
        "relative_mismatch": abs(ratio - hsq_est) / abs(hsq_est),
        "model_mismatch": abs(model_dvdu - hsq_est) / abs(hsq_est),
        "cusp_preserving_cross": cross,
        "meridian_trace": us[0.0],
    }


# ---------------------------------------------------------------------------
# Finite-difference cocycle check


def quakebend_family(t_seed):
    """t -> generator matrices of the quakebend family at a Fuchsian seed."""
    pair = matrices_from_traces(t_seed)
    att, rep = balanced_fixed_points(pair.a)
    conj = map_to_zero_infinity(rep, att)

    def family(t):
        bend = rotation_about_axis(pair.a, t, conjugator=conj)
        return {"a": pair.a.matrix, "b": (bend @ pair.b).matrix}

    return family


def conjugation_family(t_seed, v=(0.3, 0.25 - 0.1j, -0.05j, -0.3)):
    """t -> generators conjugated by exp(t V) for a fixed sl2 matrix V."""
    pair = matrices_from_traces(t_seed)

    def family(t):
        va, vb, vc, vd = v
        g = _expm2((t * va, t * vb, t * vc, t * vd))
        gi = kernel.mat_inv(g)
        return {
            "a": kernel.mat_mul(kernel.mat_mul(g, pair.a.matrix), gi),
            "b": kernel.mat_mul(kernel.mat_mul(g, pair.b.matrix), gi),
        }

    return family


def constant_family(t_seed):
    pair = matrices_from_traces(t_seed)

    def family(t):
        return {"a": pair.a.matrix, "b": pair.b.matrix}

    return family


def _expm2(m):
    """Exponential of a traceless 2x2 matrix, in closed form."""
    a, b, c, d = m
    mu = cmath.sqrt(a * a + b * c)
    if abs(mu) < 1e-30:
        return (1.0 + a, b, c, 1.0 + d)
    ch = cmath.cosh(mu)
    sh = cmath.sinh(mu) / mu
    return (ch + sh * a, sh * b, sh * c, ch + sh * d)


def _mat_sub(m, n):
    return tuple(x - y for x, y in zip(m, n))


def _mat_add(m, n):
    return tuple(x + y for x, y in zip(m, n))


def _mat_scale(m, s):
    return tuple(s * x for x in m)


def _mat_norm(m):
    return max(abs(x) for x in m)


def cocycle_residual(family, word_pairs, h):
    """Worst additive-cocycle defect of the finite-difference derivative.

    For each word the derivative cocycle is estimated as
    ``z(w) = (rho_h(w) - rho_-h(w)) * rho_0(w)^-1 / (2h)`` and the
    defect of ``z(w1 w2) = z(w1) + Ad_{rho_0(w1)} z(w2)`` is measured.
    """
    ev_plus = WordEvaluator(family(h))
    ev_minus = WordEvaluator(family(-h))
    ev_zero = WordEvaluator(family(0.0))

    def zeta(word):
        diff = _mat_sub(ev_plus.matrix(word), ev_minus.matrix(word))
        base_inv = kernel.mat_inv(ev_zero.matrix(word))
        return _mat_scale(kernel.mat_mul(diff, base_inv), 1.0 / (2.0 * h))

    worst = 0.0
    for w1, w2 in word_pairs:
        lhs = zeta(w1 + w2)
        g1 = ev_zero.matrix(w1)
        ad = kernel.mat_mul(kernel.mat_mul(g1, zeta(w2)), kernel.mat_inv(g1))
        rhs = _mat_add(zeta(w1), ad)
        worst = max(worst, _mat_norm(_mat_sub(lhs, rhs)))
    return worst


def cocycle_check(t_seed=None, h=1e-3, pairs=24, seed=0):
    """Second-order convergence of the derivative cocycle defect.

    Runs the quakebend family at a Fuchsian seed over random word
    pairs at steps ``h`` and ``h/2`` and fits the convergence exponent;
    the conjugation (coboundary) and constant families are included as
    controls.  An exponent of at least ~2 certifies the first-order
    deformation is a genuine group cocycle.
    """
    if t_seed is None:
        t_seed = coords(3.0, 3.0, 3.0)
    rng = np.random.default_rng(seed)
    word_pairs = [
        (
            random_reduced_word(rng, "ab", 1, 6),
            random_reduced_word(rng, "ab", 1, 6),
        )
        for _ in range(pairs)
    ]
    fam = quakebend_family(t_seed)
    res_h = cocycle_residual(fam, word_pairs, h)
    res_h2 = cocycle_residual(fam, word_pairs, h / 2.0)
    exponent = math.log2(res_h / res_h2) if res_h2 > 0 else math.inf
    return {
        "residual_h": res_h,
        "residual_h2": res_h2,
        "exponent": exponent,
        "conjugation_residual": cocycle_residual(
            conjugation_family(t_seed), word_pairs, h
        ),
        "constant_residual": cocycle_residual(
            constant_family(t_seed), word_pairs, h
        ),
    }
