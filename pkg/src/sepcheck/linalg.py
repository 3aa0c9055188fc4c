"""Dense complex linear algebra for small operators.

Matrices are plain ``numpy`` arrays of dtype complex128. Composite indices of
a bipartite operator follow ``k = i * d2 + mu``: the first subsystem is the
major index, so ``rho.reshape(d1, d2, d1, d2)[m, mu, n, nu]`` is the entry
``<e_m f_mu| rho |e_n f_nu>``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from sepcheck import _kernels
from sepcheck.errors import DimensionMismatch, NoConvergence, NotHermitian

EPS_HERM = 1e-10
EPS_PSD = 1e-9
EPS_SPEC = 1e-12
MAX_SWEEPS = 100


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite square complex128 matrix."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or infinite entries")
    return m


def _check_bipartite(rho: np.ndarray, d1: int, d2: int) -> None:
    if d1 < 1 or d2 < 1:
        raise DimensionMismatch(f"subsystem dimensions must be positive, got ({d1}, {d2})")
    if rho.shape[0] != d1 * d2:
        raise DimensionMismatch(f"matrix of dim {rho.shape[0]} is not {d1}x{d2}")


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt product ``Tr(b^H a)``."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return complex(np.vdot(b, a))


def hermiticity_error(h: np.ndarray) -> float:
    return float(np.max(np.abs(h - h.conj().T)))


def is_hermitian(h, tol: float = EPS_HERM) -> bool:
    return hermiticity_error(as_matrix(h)) <= tol


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues with orthonormal eigenvectors as the columns of ``eigenvectors``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def eig_hermitian(h) -> Spectrum:
    """Diagonalise a Hermitian matrix with cyclic complex Jacobi rotations.

    Raises NotHermitian when ``max|h - h^H|`` exceeds 1e-10 and NoConvergence
    if the off-diagonal mass is still above 1e-12 * ||h||_F after 100 sweeps.
    """
    h = as_matrix(h)
    err = hermiticity_error(h)
    if err > EPS_HERM:
        raise NotHermitian(f"max |h - h^H| = {err:.3e} exceeds {EPS_HERM:g}")
    h = 0.5 * (h + h.conj().T)
    w, v, sweeps, converged = _kernels.jacobi(h, EPS_SPEC, MAX_SWEEPS)
    if not converged:
        raise NoConvergence(f"Jacobi did not converge in {sweeps} sweeps")
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    w.flags.writeable = False
    v.flags.writeable = False
    return Spectrum(w, v)


def min_eigenvalue(h) -> float:
    return float(eig_hermitian(h).eigenvalues[0])


def is_psd(h, tol: float = EPS_PSD) -> bool:
    return min_eigenvalue(h) >= -tol


def partial_transpose(rho, d1: int, d2: int) -> np.ndarray:
    """Transpose the second tensor factor: ``out[(m,mu),(n,nu)] = rho[(m,nu),(n,mu)]``."""
    rho = as_matrix(rho)
    _check_bipartite(rho, d1, d2)
    return rho.reshape(d1, d2, d1, d2).transpose(0, 3, 2, 1).reshape(d1 * d2, d1 * d2).copy()


def partial_trace(rho, d1: int, d2: int, keep: int) -> np.ndarray:
    """Reduced operator on subsystem ``keep`` (1 or 2)."""
    rho = as_matrix(rho)
    _check_bipartite(rho, d1, d2)
    r = rho.reshape(d1, d2, d1, d2)
    if keep == 1:
        return np.einsum("ajbj->ab", r)
    if keep == 2:
        return np.einsum("iaib->ab", r)
    raise ValueError(f"keep must be 1 or 2, got {keep!r}")
