"""Pure-Python/numpy versions of the compiled kernels in ``_ckernels.pyx``.

Both implementations follow the same per-point arithmetic so their results
agree to rounding.
"""
import numpy as np


def hyp0f_sum(w, a, tol, max_terms):
    """Sum ``sum_n t_n`` with ``t_0 = 1`` and ``t_{n+1} = t_n * w / prod_j (n + a_j)``.

    Returns ``(values, terms_used, error_estimate, converged)`` arrays, one
    entry per point of ``w``.  A point stops once the next term is below
    ``tol * |partial sum|`` after at least three consecutive non-increasing
    terms, or once a term is exactly zero; that next term is not added and
    its magnitude is the error estimate.
    """
    w = np.ascontiguousarray(w, dtype=complex).reshape(-1)
    a = np.ascontiguousarray(a, dtype=float).reshape(-1)
    npts = w.size
    values = np.ones(npts, dtype=complex)
    terms = np.ones(npts, dtype=np.int64)
    errs = np.zeros(npts, dtype=float)
    done = np.zeros(npts, dtype=bool)

    t = np.ones(npts, dtype=complex)
    prev = np.ones(npts, dtype=float)
    ndec = np.zeros(npts, dtype=np.int64)
    for n in range(max_terms):
        live = ~done
        if not live.any():
            break
        d = 1.0
        for aj in a:
            d *= n + aj
        tl = t[live] * w[live] / d
        at = np.abs(tl)
        nd = np.where(at <= prev[live], ndec[live] + 1, 0)
        stop = (at == 0.0) | ((at <= tol * np.abs(values[live])) & (nd >= 3))
        idx = np.flatnonzero(live)
        stop_idx = idx[stop]
        errs[stop_idx] = at[stop]
        done[stop_idx] = True
        go = idx[~stop]
        values[go] += tl[~stop]
        terms[go] += 1
        t[live] = tl
        prev[live] = at
        ndec[live] = nd
    return values, terms, errs, done.copy()
