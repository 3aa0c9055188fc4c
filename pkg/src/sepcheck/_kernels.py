"""Hot numeric kernels: cyclic complex Jacobi and product-vector alternating minimisation.

Each kernel exists twice. The ``*_loops`` variants are explicit scalar loops
compiled by numba; the ``*_numpy`` variants do the same arithmetic with
vectorised row/column updates. ``jacobi`` and ``altmin`` are bound to the
variant picked in :mod:`sepcheck._accel`.

Both Jacobi variants return ``(eigenvalues, eigenvectors, sweeps, converged)``
with eigenvalues unsorted (diagonal order) and eigenvectors as columns.
"""
from __future__ import annotations

import math

import numpy as np

from sepcheck._accel import USE_NUMBA, njit

# |zeta| beyond this makes zeta**2 overflow; use the asymptotic tangent.
_ZETA_BIG = 1e150


@njit
def _rotation(app, aqq, apq):
    # Returns (c, s, phase) with G = [[c, s], [-s*conj(phase), c*conj(phase)]]
    # annihilating apq in G^H [[app, apq], [conj(apq), aqq]] G.
    r = abs(apq)
    phase = apq / r
    zeta = (aqq - app) / (2.0 * r)
    if abs(zeta) > _ZETA_BIG:
        t = 0.5 / zeta
    else:
        sgn = 1.0 if zeta >= 0.0 else -1.0
        t = sgn / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
    c = 1.0 / math.sqrt(1.0 + t * t)
    return c, t * c, phase


@njit
def jacobi_loops(h, tol_rel, max_sweeps):
    n = h.shape[0]
    a = h.astype(np.complex128).copy()
    v = np.eye(n, dtype=np.complex128)
    fro2 = 0.0
    for i in range(n):
        for j in range(n):
            fro2 += a[i, j].real ** 2 + a[i, j].imag ** 2
    target = tol_rel * math.sqrt(fro2)
    sweeps = 0
    converged = False
    while True:
        off2 = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off2 += 2.0 * (a[i, j].real ** 2 + a[i, j].imag ** 2)
        if math.sqrt(off2) <= target:
            converged = True
            break
        if sweeps >= max_sweeps:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                c, s, ph = _rotation(a[p, p].real, a[q, q].real, apq)
                cph = ph.conjugate()
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * cph * akq
                    a[k, q] = s * akp + c * cph * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * ph * aqk
                    a[q, k] = s * apk + c * ph * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * cph * vkq
                    v[k, q] = s * vkp + c * cph * vkq
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v, sweeps, converged


def jacobi_numpy(h, tol_rel, max_sweeps):
    a = np.array(h, dtype=np.complex128)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    target = tol_rel * np.linalg.norm(a)
    iu = np.triu_indices(n, 1)
    sweeps = 0
    converged = False
    while True:
        if math.sqrt(2.0) * np.linalg.norm(a[iu]) <= target:
            converged = True
            break
        if sweeps >= max_sweeps:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                c, s, ph = _rotation_py(a[p, p].real, a[q, q].real, complex(apq))
                cph = ph.conjugate()
                colp = a[:, p].copy()
                colq = a[:, q]
                a[:, p] = c * colp - s * cph * colq
                a[:, q] = s * colp + c * cph * colq
                rowp = a[p, :].copy()
                rowq = a[q, :]
                a[p, :] = c * rowp - s * ph * rowq
                a[q, :] = s * rowp + c * ph * rowq
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * cph * vq
                v[:, q] = s * vp + c * cph * vq
    return a.diagonal().real.copy(), v, sweeps, converged


# Plain-Python rotation for the numpy path; the njit one would force a compile.
_rotation_py = getattr(_rotation, "py_func", _rotation)


@njit
def _conditioned_first(a, d1, d2, f):
    # M[m, n] = <f| block(m, n) |f>, hermitised.
    m_out = np.zeros((d1, d1), dtype=np.complex128)
    for m in range(d1):
        for n in range(d1):
            acc = 0.0 + 0.0j
            for mu in range(d2):
                fm = f[mu].conjugate()
                for nu in range(d2):
                    acc += fm * a[m * d2 + mu, n * d2 + nu] * f[nu]
            m_out[m, n] = acc
    return 0.5 * (m_out + m_out.conj().T)


@njit
def _conditioned_second(a, d1, d2, e):
    # M[mu, nu] = sum_{m,n} conj(e_m) a[(m,mu),(n,nu)] e_n, hermitised.
    m_out = np.zeros((d2, d2), dtype=np.complex128)
    for mu in range(d2):
        for nu in range(d2):
            acc = 0.0 + 0.0j
            for m in range(d1):
                em = e[m].conjugate()
                for n in range(d1):
                    acc += em * a[m * d2 + mu, n * d2 + nu] * e[n]
            m_out[mu, nu] = acc
    return 0.5 * (m_out + m_out.conj().T)


@njit
def _lowest(mat, tol_rel, max_sweeps):
    w, v, _, _ = jacobi_loops(mat, tol_rel, max_sweeps)
    k = np.argmin(w)
    return w[k], v[:, k].copy()


@njit
def altmin_loops(a, d1, d2, f0, tol, max_iter, tol_rel, max_sweeps):
    f = f0.astype(np.complex128).copy()
    e = np.zeros(d1, dtype=np.complex128)
    best = np.inf
    prev = np.inf
    for _ in range(max_iter):
        _, e = _lowest(_conditioned_first(a, d1, d2, f), tol_rel, max_sweeps)
        val, f = _lowest(_conditioned_second(a, d1, d2, e), tol_rel, max_sweeps)
        if val < best:
            best = val
        if abs(prev - val) < tol:
            break
        prev = val
    return best, e, f


def altmin_numpy(a, d1, d2, f0, tol, max_iter, tol_rel, max_sweeps):
    a4 = np.asarray(a, dtype=np.complex128).reshape(d1, d2, d1, d2)
    f = np.array(f0, dtype=np.complex128)
    e = np.zeros(d1, dtype=np.complex128)
    best = np.inf
    prev = np.inf

    def lowest(mat):
        mat = 0.5 * (mat + mat.conj().T)
        w, v, _, _ = jacobi_numpy(mat, tol_rel, max_sweeps)
        k = int(np.argmin(w))
        return w[k], v[:, k].copy()

    for _ in range(max_iter):
        _, e = lowest(np.einsum("manb,a,b->mn", a4, f.conj(), f))
        val, f = lowest(np.einsum("manb,m,n->ab", a4, e.conj(), e))
        best = min(best, val)
        if abs(prev - val) < tol:
            break
        prev = val
    return best, e, f


if USE_NUMBA:
    jacobi = jacobi_loops
    altmin = altmin_loops
else:
    jacobi = jacobi_numpy
    altmin = altmin_numpy
