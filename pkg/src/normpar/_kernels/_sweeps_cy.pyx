# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled backend for the phase-sweep kernels.

The objects being swept are small dense complex matrices (n <= ~25), so the
per-matrix work is done with Jacobi iterations rather than LAPACK calls:
one-sided (Hestenes) Jacobi for singular values and cyclic two-sided Jacobi
for Hermitian eigenvalues.  Both converge quadratically and deliver close to
machine precision, and a full sweep stays inside one C loop.
"""

from libc.math cimport cos, fabs, sin, sqrt
from libc.stdlib cimport free, malloc

import numpy as np

cdef int MAX_SWEEPS = 64


cdef inline double _cabs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline double complex _expi(double t) nogil:
    return cos(t) + 1j * sin(t)


cdef void _singular_values(double complex* a, int m, int n, double* sv) nogil:
    # a holds the matrix column-major (lda = m) and is destroyed.
    cdef int i, j, k, sweep, rotated
    cdef double alpha, beta, g, tau, t, c, s, frob2, floor2
    cdef double complex gam, phase, pc, ui, vj
    # columns below the representation floor (1e-16 of the Frobenius norm)
    # are zero for rotation purposes; without this, exhausted columns pinned
    # at subnormal magnitudes keep generating rotations whose phase factor
    # |gam|/g drifts from 1 (subnormal squares lose precision) and the
    # surviving column norms random-walk away from the true values
    frob2 = 0.0
    for k in range(m * n):
        frob2 += _cabs2(a[k])
    floor2 = frob2 * 1e-32
    for sweep in range(MAX_SWEEPS):
        rotated = 0
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = 0.0
                beta = 0.0
                gam = 0.0
                for k in range(m):
                    alpha += _cabs2(a[i * m + k])
                    beta += _cabs2(a[j * m + k])
                    gam += a[i * m + k].conjugate() * a[j * m + k]
                if alpha <= floor2 or beta <= floor2:
                    continue
                g = sqrt(_cabs2(gam))
                if g <= 1e-14 * sqrt(alpha) * sqrt(beta) or g < 1e-300:
                    continue
                rotated = 1
                phase = gam / g
                tau = (beta - alpha) / (2.0 * g)
                if tau >= 0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = c * t
                pc = phase.conjugate()
                for k in range(m):
                    ui = a[i * m + k]
                    vj = a[j * m + k]
                    a[i * m + k] = c * ui - s * (pc * vj)
                    a[j * m + k] = s * ui + c * (pc * vj)
        if rotated == 0:
            break
    for i in range(n):
        alpha = 0.0
        for k in range(m):
            alpha += _cabs2(a[i * m + k])
        sv[i] = sqrt(alpha)
    # insertion sort, descending
    cdef double key
    for i in range(1, n):
        key = sv[i]
        j = i - 1
        while j >= 0 and sv[j] < key:
            sv[j + 1] = sv[j]
            j -= 1
        sv[j + 1] = key


cdef void _hermitian_eigvals(double complex* h, int n, double* ev, double thr) nogil:
    # h holds the Hermitian matrix row-major and is destroyed.
    cdef int i, j, k, sweep, rotated
    cdef double alpha, beta, g, tau, t, c, s, key
    cdef double complex d, phase, pc, xi, xj
    for sweep in range(MAX_SWEEPS):
        rotated = 0
        for i in range(n - 1):
            for j in range(i + 1, n):
                d = h[i * n + j]
                g = sqrt(_cabs2(d))
                if g <= thr:
                    continue
                rotated = 1
                phase = d / g
                pc = phase.conjugate()
                alpha = h[i * n + i].real
                beta = h[j * n + j].real
                tau = (beta - alpha) / (2.0 * g)
                if tau >= 0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = c * t
                # H <- H R with R = [[c, s], [-conj(phase) s, conj(phase) c]]
                for k in range(n):
                    xi = h[k * n + i]
                    xj = h[k * n + j]
                    h[k * n + i] = c * xi - s * (pc * xj)
                    h[k * n + j] = s * xi + c * (pc * xj)
                # H <- R^H H
                for k in range(n):
                    xi = h[i * n + k]
                    xj = h[j * n + k]
                    h[i * n + k] = c * xi - s * (phase * xj)
                    h[j * n + k] = s * xi + c * (phase * xj)
                h[i * n + j] = 0.0
                h[j * n + i] = 0.0
                h[i * n + i] = h[i * n + i].real
                h[j * n + j] = h[j * n + j].real
        if rotated == 0:
            break
    for i in range(n):
        ev[i] = h[i * n + i].real
    # insertion sort, ascending
    for i in range(1, n):
        key = ev[i]
        j = i - 1
        while j >= 0 and ev[j] > key:
            ev[j + 1] = ev[j]
            j -= 1
        ev[j + 1] = key


def sweep_singular_values(p, q, thetas):
    """Singular values of p + exp(i*theta)*q for every theta.

    Shape contract matches the numpy backend: (len(thetas), min(m, n)),
    rows sorted descending.  Expects m >= n; the dispatching wrapper
    transposes wider-than-tall inputs.
    """
    cdef double complex[:, ::1] pv = np.ascontiguousarray(p, dtype=np.complex128)
    cdef double complex[:, ::1] qv = np.ascontiguousarray(q, dtype=np.complex128)
    cdef double[::1] tv = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef int m = pv.shape[0]
    cdef int n = pv.shape[1]
    cdef int nt = tv.shape[0]
    if qv.shape[0] != m or qv.shape[1] != n:
        raise ValueError("p and q must have the same shape")
    if m < n:
        raise ValueError("kernel expects m >= n")
    out = np.empty((nt, n), dtype=np.float64)
    cdef double[:, ::1] outv = out
    cdef double complex* work = <double complex*> malloc(m * n * sizeof(double complex))
    if work == NULL:
        raise MemoryError()
    cdef int it, r, c
    cdef double complex lam
    try:
        with nogil:
            for it in range(nt):
                lam = _expi(tv[it])
                for c in range(n):
                    for r in range(m):
                        work[c * m + r] = pv[r, c] + lam * qv[r, c]
                _singular_values(work, m, n, &outv[it, 0])
    finally:
        free(work)
    return out


def sweep_hermitian_eigvals(h0, k, thetas):
    """Eigenvalues of h0 + exp(i*theta)*k + conj(exp(i*theta)*k)^T per theta.

    Shape contract matches the numpy backend: (len(thetas), n), rows sorted
    ascending.  h0 must be Hermitian for the family to be Hermitian; the
    kernel symmetrises explicitly to wash out representation noise.
    """
    cdef double complex[:, ::1] hv = np.ascontiguousarray(h0, dtype=np.complex128)
    cdef double complex[:, ::1] kv = np.ascontiguousarray(k, dtype=np.complex128)
    cdef double[::1] tv = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef int n = hv.shape[0]
    cdef int nt = tv.shape[0]
    if hv.shape[1] != n or kv.shape[0] != n or kv.shape[1] != n:
        raise ValueError("h0 and k must be square with equal sizes")
    out = np.empty((nt, n), dtype=np.float64)
    cdef double[:, ::1] outv = out
    cdef double complex* work = <double complex*> malloc(n * n * sizeof(double complex))
    if work == NULL:
        raise MemoryError()
    cdef int it, r, c
    cdef double complex lam, lamc, z
    cdef double frob, thr
    try:
        with nogil:
            for it in range(nt):
                lam = _expi(tv[it])
                lamc = lam.conjugate()
                frob = 0.0
                for r in range(n):
                    for c in range(n):
                        z = hv[r, c] + lam * kv[r, c] + lamc * kv[c, r].conjugate()
                        work[r * n + c] = z
                        frob += _cabs2(z)
                # enforce exact Hermitian symmetry
                for r in range(n):
                    work[r * n + r] = work[r * n + r].real
                    for c in range(r + 1, n):
                        z = 0.5 * (work[r * n + c] + work[c * n + r].conjugate())
                        work[r * n + c] = z
                        work[c * n + r] = z.conjugate()
                thr = 1e-15 * sqrt(frob)
                if thr < 1e-300:
                    thr = 1e-300
                _hermitian_eigvals(work, n, &outv[it, 0], thr)
    finally:
        free(work)
    return out
