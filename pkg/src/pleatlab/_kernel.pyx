# cython: language_level=3
"""Compiled 2x2 complex matrix kernel (mirror of pleatlab._kernel_py)."""

cimport cython

IMPLEMENTATION = "cython"


def mat_mul(m, n):
    cdef double complex a = m[0], b = m[1], c = m[2], d = m[3]
    cdef double complex e = n[0], f = n[1], g = n[2], h = n[3]
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def mat_inv(m):
    cdef double complex a = m[0], b = m[1], c = m[2], d = m[3]
    return (d, -b, -c, a)


def mat_conj(m):
    cdef double complex a = m[0], b = m[1], c = m[2], d = m[3]
    return (a.conjugate(), b.conjugate(), c.conjugate(), d.conjugate())


def mat_det(m):
    cdef double complex a = m[0], b = m[1], c = m[2], d = m[3]
    return a * d - b * c


def mat_trace(m):
    cdef double complex a = m[0], d = m[3]
    return a + d


def normalize_unimodular(m):
    cdef double complex a = m[0], b = m[1], c = m[2], d = m[3]
    cdef double complex det = a * d - b * c
    cdef double complex s = det ** 0.5
    return (a / s, b / s, c / s, d / s), det


def apply_mobius(m, z):
    cdef double complex a = m[0], b = m[1], c = m[2], d = m[3]
    cdef double complex zz, num, den
    if z is None:
        if c == 0:
            return None
        return a / c
    zz = z
    num = a * zz + b
    den = c * zz + d
    if den == 0:
        return None
    return num / den


@cython.boundscheck(False)
def eval_word(codes, gens):
    cdef double complex a = 1.0, b = 0.0, c = 0.0, d = 1.0
    cdef double complex e, f, g, h
    cdef double complex na, nb, nc, nd
    cdef int code
    for code in codes:
        if code > 0:
            gen = gens[code - 1]
            e = gen[0]
            f = gen[1]
            g = gen[2]
            h = gen[3]
        else:
            gen = gens[-code - 1]
            e = gen[3]
            f = -<double complex> gen[1]
            g = -<double complex> gen[2]
            h = gen[0]
        na = a * e + b * g
        nb = a * f + b * h
        nc = c * e + d * g
        nd = c * f + d * h
        a, b, c, d = na, nb, nc, nd
    return (a, b, c, d)
