"""Entanglement witnesses for NPT states and a heuristic check of product positivity.

For an NPT state with a negative eigenvalue ``lam`` of ``rho^T2`` and
eigenvector ``phi``, the operator ``W = (|phi><phi|)^T2`` has
``Tr(W rho) = <phi|rho^T2|phi> = lam < 0`` while
``Tr(W P(x)Q) = Tr(|phi><phi| P(x)Q^T) >= 0`` for all product projectors.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from sepcheck import _kernels, linalg
from sepcheck.criteria import ppt_test
from sepcheck.errors import DimensionMismatch, NotHermitian, StatePPT
from sepcheck.states import BipartiteState

EPS_WITNESS = 1e-8
DEFAULT_RESTARTS = 32
ALTMIN_TOL = 1e-12
ALTMIN_MAX_ITER = 500


@dataclass(frozen=True, eq=False)
class Witness:
    operator: np.ndarray
    violation: float
    product_floor: float
    d1: int
    d2: int
    restarts: int = DEFAULT_RESTARTS

    @property
    def certified(self) -> bool:
        """Negative on the target and no product violation found over ``restarts`` starts."""
        return self.violation < 0 and self.product_floor >= -EPS_WITNESS


def witness_from_npt(s: BipartiteState, restarts: int = DEFAULT_RESTARTS, seed=None) -> Witness:
    ok, _ = ppt_test(s)
    if ok:
        raise StatePPT("state has a positive partial transpose; no eigenvector witness exists")
    spec = linalg.eig_hermitian(s.partial_transpose())
    phi = np.asarray(spec.eigenvectors[:, 0])
    op = linalg.partial_transpose(np.outer(phi, phi.conj()), s.d1, s.d2)
    op.flags.writeable = False
    floor = verify_witness(op, s.d1, s.d2, restarts=restarts, seed=seed)
    return Witness(
        operator=op,
        violation=float(spec.eigenvalues[0]),
        product_floor=floor,
        d1=s.d1,
        d2=s.d2,
        restarts=restarts,
    )


def random_unit_vectors(d: int, restarts: int, seed=None) -> np.ndarray:
    """One standard-complex-normal start per restart, each from its own spawned stream.

    Row ``k`` depends only on ``(seed, k)``, so batches can be generated in any
    order or in parallel without changing results.
    """
    children = np.random.SeedSequence(seed).spawn(restarts)
    out = np.empty((restarts, d), dtype=np.complex128)
    for k, child in enumerate(children):
        g = np.random.default_rng(child)
        v = g.standard_normal(d) + 1j * g.standard_normal(d)
        out[k] = v / np.linalg.norm(v)
    return out


def verify_witness(a, d1: int, d2: int, restarts: int = DEFAULT_RESTARTS, seed=None) -> float:
    """Estimate min over unit product vectors of <e(x)f| a |e(x)f>.

    Alternating minimisation: with f fixed the objective is a quadratic form in
    e, minimised by the lowest eigenvector of the conditioned d1 x d1 operator,
    and symmetrically for f. Nonconvex, so the value is an upper bound on the
    true minimum; a nonnegative result means no violation was found.
    """
    a = linalg.as_matrix(a)
    if a.shape[0] != d1 * d2:
        raise DimensionMismatch(f"operator of dim {a.shape[0]} does not match {d1}x{d2}")
    err = linalg.hermiticity_error(a)
    if err > linalg.EPS_HERM:
        raise NotHermitian(f"max |a - a^H| = {err:.3e}")
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    a = 0.5 * (a + a.conj().T)
    best = np.inf
    for f0 in random_unit_vectors(d2, restarts, seed):
        val, _, _ = _kernels.altmin(a, d1, d2, f0, ALTMIN_TOL, ALTMIN_MAX_ITER, linalg.EPS_SPEC, linalg.MAX_SWEEPS)
        best = min(best, float(val))
    return best


def evaluate(a, s: BipartiteState) -> float:
    """Re Tr(a rho); the imaginary part must vanish to 1e-10."""
    a = linalg.as_matrix(a)
    if a.shape != s.rho.shape:
        raise DimensionMismatch(f"operator of dim {a.shape[0]} does not match state of dim {s.dim}")
    val = complex(np.sum(a * s.rho.T))
    if abs(val.imag) >= 1e-10:
        raise NotHermitian(f"Tr(A rho) has imaginary part {val.imag:.3e}")
    return val.real
