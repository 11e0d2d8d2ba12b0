"""Trace coordinates for once-punctured-torus representations.

A representation of the free group <a, b> into SL(2,C) is recorded, up
to conjugacy, by the triple ``(x, y, z) = (tr a, tr b, tr ab)``.  The
commutator trace is the polynomial
``kappa = x^2 + y^2 + z^2 - x*y*z - 2``; the cusped (parabolic
commutator) locus is ``kappa == -2`` and the reducible locus is
``kappa == 2``.

``matrices_from_traces`` realizes a triple by explicit matrices with a
deterministic normalization:

* ``a`` maps to ``[[x/2, (x^2-4)/2], [1/2, x/2]]``;
* ``b`` maps to ``[[y/2, q], [r, y/2]]`` where, writing
  ``w = 2z - x*y`` and ``S = sqrt(w^2 - (x^2-4)(y^2-4))``,
  ``r = (y^2-4) / (2*(w + S))`` and ``q = w - (x^2-4)*r``.

The denominator ``w + S`` is swapped for ``w - S`` when the latter is
larger in modulus (the two choices pick the two roots of the same
quadratic; taking the larger denominator is the numerically stable
root).  Both denominators vanish together only on the reducible locus,
which is rejected.  The equal-diagonal shape of both generators is what
lets downstream code extract axes stably arbitrarily close to the
parabolic boundary.
"""

import cmath
from dataclasses import dataclass

from pleatlab.errors import DegenerateNormalization, ReducibleLocus
from pleatlab.moebius import MoebiusMap
from pleatlab.words import WordEvaluator

REDUCIBLE_TOL = 1e-8


def kappa(x, y, z):
    """Commutator trace as a polynomial in the coordinates."""
    return x * x + y * y + z * z - x * y * z - 2.0


def discriminant(x, y):
    """Discriminant of the pleating-candidate quadratic in z."""
    return x * x * y * y - 4.0 * (x * x + y * y)


@dataclass(frozen=True)
class TraceCoords:
    x: complex
    y: complex
    z: complex

    @property
    def kappa(self):
        return kappa(self.x, self.y, self.z)

    @property
    def cusp_residual(self):
        """Distance of the commutator trace from -2."""
        return abs(self.kappa + 2.0)

    def is_real(self, tol=1e-9):
        return (
            abs(self.x.imag) <= tol
            and abs(self.y.imag) <= tol
            and abs(self.z.imag) <= tol
        )

    def normalized(self):
        """Flip generator lifts so that Re x >= 0 and Re y >= 0."""
        x, y, z = self.x, self.y, self.z
        if x.real < 0:
            x, z = -x, -z
        if y.real < 0:
            y, z = -y, -z
        return TraceCoords(x, y, z)

    def conjugate(self):
        return TraceCoords(
            self.x.conjugate(), self.y.conjugate(), self.z.conjugate()
        )

    def astuple(self):
        return (self.x, self.y, self.z)


def coords(x, y, z):
    return TraceCoords(complex(x), complex(y), complex(z))


def pleating_candidates(x, y):
    """The two z-roots giving a parabolic commutator, marked root first.

    Solves ``kappa(x, y, z) == -2`` for z.  The root with positive
    imaginary part (the marked structure, bending the a-curve on the
    upper side) comes first; its conjugate-mirror partner second.  On
    the Fuchsian locus the two roots are real and ordered larger-first.
    """
    x, y = complex(x), complex(y)
    s = cmath.sqrt(discriminant(x, y))
    z1 = (x * y + s) / 2.0
    z2 = (x * y - s) / 2.0
    if z1.imag < z2.imag or (z1.imag == z2.imag and z1.real < z2.real):
        z1, z2 = z2, z1
    return (z1, z2)


class RepPair:
    """A realized pair of generator matrices with word evaluation."""

    def __init__(self, a, b, coords):
        self.a = a
        self.b = b
        self.coords = coords
        self._eval = WordEvaluator({"a": a.matrix, "b": b.matrix})

    def matrix(self, word):
        return self._eval.matrix(word)

    def map(self, word):
        return MoebiusMap.from_tuple(self.matrix(word))

    def trace(self, word):
        return self._eval.trace(word)

    @property
    def evaluator(self):
        return self._eval


def matrices_from_traces(t):
    """Realize trace coordinates by the documented normal form.

    Raises :class:`ReducibleLocus` near ``kappa == 2`` (no irreducible
    realization) and :class:`DegenerateNormalization` if neither
    documented root choice is usable (which cannot happen away from the
    reducible locus; the guard is defensive).
    """
    x, y, z = t.x, t.y, t.z
    if abs(t.kappa - 2.0) < REDUCIBLE_TOL:
        raise ReducibleLocus(f"commutator trace {t.kappa} is too close to 2")
    a = MoebiusMap(x / 2.0, (x * x - 4.0) / 2.0, 0.5, x / 2.0)
    w = 2.0 * z - x * y
    s = cmath.sqrt(w * w - (x * x - 4.0) * (y * y - 4.0))
    den_plus = w + s
    den_minus = w - s
    den = den_plus if abs(den_plus) >= abs(den_minus) else den_minus
    if abs(den) < 1e-12:
        raise DegenerateNormalization("both root choices degenerate")
    r = (y * y - 4.0) / (2.0 * den)
    q = w - (x * x - 4.0) * r
    b = MoebiusMap(y / 2.0, q, r, y / 2.0)
    return RepPair(a, b, t)


def trace_of_word(t, word):
    """Trace of a word at the given coordinates (via the normal form)."""
    return matrices_from_traces(t).trace(word)


def commuting_canonical_pair(u, h):
    """Canonical commuting pair sharing the balanced axis.

    The first matrix is the normal form with trace ``u``; the second has
    lower-left entry ``h/2`` and the same (balanced) axis, which forces
    its trace ``v`` to satisfy ``v^2 - 4 = h^2 (u^2 - 4)``.  The root
    with ``Re v >= 0`` is taken (ties to ``Im v >= 0``), so near the
    shared parabolic ``u = v = 2`` the trace derivative along the family
    is ``dv/du = u h^2 / v``: the square-multiplier ratio.
    """
    v = cmath.sqrt(4.0 + h * h * (u * u - 4.0))
    if v.real < 0 or (v.real == 0 and v.imag < 0):
        v = -v
    a_mat = (u / 2.0, (u * u - 4.0) / 2.0, 0.5, u / 2.0)
    b_mat = (v / 2.0, h * (u * u - 4.0) / 2.0, h / 2.0, v / 2.0)

    def mul(m, n):
        return (
            m[0] * n[0] + m[1] * n[2],
            m[0] * n[1] + m[1] * n[3],
            m[2] * n[0] + m[3] * n[2],
            m[2] * n[1] + m[3] * n[3],
        )

    ab = mul(a_mat, b_mat)
    ba = mul(b_mat, a_mat)
    commutation = max(abs(p - q) for p, q in zip(ab, ba))
    relation = abs((v * v - 4.0) - h * h * (u * u - 4.0))
    dv_du = u * h * h / v if v != 0 else complex("inf")
    return {
        "a": a_mat,
        "b": b_mat,
        "u": u,
        "v": v,
        "relation_residual": relation,
        "commutation_residual": commutation,
        "dv_du": dv_du,
    }
