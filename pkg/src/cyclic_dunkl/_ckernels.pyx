# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled term-recurrence summation; see ``_pykernels.hyp0f_sum``."""
import numpy as np

cdef extern from "math.h":
    double hypot(double, double) nogil


cdef inline double cabs_(double complex z) nogil:
    return hypot(z.real, z.imag)


def hyp0f_sum(w, a, double tol, Py_ssize_t max_terms):
    cdef double complex[::1] wv = np.ascontiguousarray(w, dtype=complex).reshape(-1)
    cdef double[::1] av = np.ascontiguousarray(a, dtype=float).reshape(-1)
    cdef Py_ssize_t npts = wv.shape[0], na = av.shape[0]
    values = np.ones(npts, dtype=complex)
    terms = np.ones(npts, dtype=np.int64)
    errs = np.zeros(npts, dtype=float)
    done = np.zeros(npts, dtype=np.uint8)
    cdef double complex[::1] vv = values
    cdef long long[::1] tv = terms
    cdef double[::1] ev = errs
    cdef unsigned char[::1] dv = done
    cdef Py_ssize_t i, n, j, ndec
    cdef double complex s, t, wi, u
    cdef double d, at, prev
    with nogil:
        for i in range(npts):
            s = 1.0
            t = 1.0
            prev = 1.0
            ndec = 0
            wi = wv[i]
            for n in range(max_terms):
                d = 1.0
                for j in range(na):
                    d = d * (n + av[j])
                # real divisor: two real divisions, not a complex one
                u = t * wi
                t.real = u.real / d
                t.imag = u.imag / d
                at = cabs_(t)
                if at <= prev:
                    ndec = ndec + 1
                else:
                    ndec = 0
                prev = at
                if at == 0.0 or (at <= tol * cabs_(s) and ndec >= 3):
                    ev[i] = at
                    dv[i] = 1
                    break
                s = s + t
                tv[i] = tv[i] + 1
            vv[i] = s
    return values, terms, errs, done.astype(bool)
