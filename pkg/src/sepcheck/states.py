"""Bipartite density matrices: validated container, constructors and the two worked families."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from sepcheck import linalg
from sepcheck.errors import BadParameters, BadWeights, DimensionMismatch, InvalidState, NotNormalized

EPS_TRACE = 1e-10
EPS_NORM = 1e-10


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128)
    a.flags.writeable = False
    return a


def validate_density(rho, what: str = "state") -> np.ndarray:
    """Return ``rho`` as a read-only complex matrix, or raise InvalidState."""
    return _validated(rho, what)[0]


def _validated(rho, what: str) -> tuple[np.ndarray, float]:
    try:
        m = linalg.as_matrix(rho)
    except ValueError as exc:
        raise InvalidState(f"{what}: {exc}") from exc
    herr = linalg.hermiticity_error(m)
    if herr > linalg.EPS_HERM:
        raise InvalidState(f"{what} is not Hermitian (max deviation {herr:.3e})")
    tr = np.trace(m).real
    if abs(tr - 1.0) > EPS_TRACE:
        raise InvalidState(f"{what} has trace {tr!r}, expected 1")
    lam = linalg.min_eigenvalue(m)
    if lam < -linalg.EPS_PSD:
        raise InvalidState(f"{what} has negative eigenvalue {lam:.3e}")
    return _frozen(m), lam


@dataclass(frozen=True)
class BipartiteState:
    """Density matrix on C^d1 (x) C^d2, validated on construction."""

    rho: np.ndarray
    d1: int
    d2: int
    min_eigenvalue: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        d1, d2 = int(self.d1), int(self.d2)
        if d1 < 1 or d2 < 1:
            raise InvalidState(f"subsystem dimensions must be positive, got ({d1}, {d2})")
        try:
            m = linalg.as_matrix(self.rho)
        except ValueError as exc:
            raise InvalidState(str(exc)) from exc
        if m.shape[0] != d1 * d2:
            raise InvalidState(f"matrix of dim {m.shape[0]} does not match dims {d1}x{d2}")
        m, lam = _validated(m, "state")
        object.__setattr__(self, "rho", m)
        object.__setattr__(self, "d1", d1)
        object.__setattr__(self, "d2", d2)
        object.__setattr__(self, "min_eigenvalue", lam)

    @property
    def dims(self) -> tuple[int, int]:
        return self.d1, self.d2

    @property
    def dim(self) -> int:
        return self.d1 * self.d2

    def partial_transpose(self) -> np.ndarray:
        return linalg.partial_transpose(self.rho, self.d1, self.d2)

    def __eq__(self, other):
        if not isinstance(other, BipartiteState):
            return NotImplemented
        return self.dims == other.dims and np.array_equal(self.rho, other.rho)

    __hash__ = None


@dataclass(frozen=True)
class PureVector:
    amplitudes: np.ndarray
    d1: int
    d2: int

    def __post_init__(self):
        v = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        if v.shape[0] != self.d1 * self.d2:
            raise DimensionMismatch(f"vector of length {v.shape[0]} does not match dims {self.d1}x{self.d2}")
        if not np.all(np.isfinite(v)):
            raise NotNormalized("vector contains NaN or infinite entries")
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > EPS_NORM:
            raise NotNormalized(f"vector norm is {norm!r}, expected 1")
        v.flags.writeable = False
        object.__setattr__(self, "amplitudes", v)


def basis_vector(d: int, i: int) -> np.ndarray:
    e = np.zeros(d, dtype=np.complex128)
    e[i] = 1.0
    return e


def pure(v: PureVector) -> BipartiteState:
    a = v.amplitudes
    return BipartiteState(np.outer(a, a.conj()), v.d1, v.d2)


def mixture(weights: Sequence[float], states: Sequence[BipartiteState]) -> BipartiteState:
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or len(w) != len(states) or len(w) == 0:
        raise BadWeights(f"need one weight per state, got {len(w)} weights for {len(states)} states")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise BadWeights("weights must be finite and nonnegative")
    if abs(w.sum() - 1.0) > EPS_TRACE:
        raise BadWeights(f"weights sum to {w.sum()!r}, expected 1")
    dims = {s.dims for s in states}
    if len(dims) != 1:
        raise DimensionMismatch(f"states have differing dims {sorted(dims)}")
    rho = sum(wi * s.rho for wi, s in zip(w, states))
    d1, d2 = dims.pop()
    return BipartiteState(rho, d1, d2)


def product(rho_a, rho_b) -> BipartiteState:
    a = validate_density(rho_a, "first factor")
    b = validate_density(rho_b, "second factor")
    return BipartiteState(np.kron(a, b), a.shape[0], b.shape[0])


def maximally_mixed(d1: int, d2: int) -> BipartiteState:
    n = d1 * d2
    return BipartiteState(np.eye(n) / n, d1, d2)


def family_two_pure(a: float, b: float, p: float) -> BipartiteState:
    """p|psi1><psi1| + (1-p)|psi2><psi2| with psi1 = a e1e1 + b e2e2, psi2 = a e1e2 + b e2e1."""
    if not (a > 0 and b > 0):
        raise BadParameters(f"need a, b > 0, got a={a!r}, b={b!r}")
    if abs(a * a + b * b - 1.0) > EPS_NORM:
        raise BadParameters(f"need a^2 + b^2 = 1, got {a * a + b * b!r}")
    if not 0.0 <= p <= 1.0:
        raise BadParameters(f"p must lie in [0, 1], got {p!r}")
    q = 1.0 - p
    rho = np.array(
        [
            [p * a * a, 0, 0, p * a * b],
            [0, q * a * a, q * a * b, 0],
            [0, q * a * b, q * b * b, 0],
            [p * a * b, 0, 0, p * b * b],
        ],
        dtype=np.complex128,
    )
    return BipartiteState(rho, 2, 2)


def family_singlet_up(p: float) -> BipartiteState:
    """p|Psi-><Psi-| + (1-p)|e1e1><e1e1|."""
    if not 0.0 <= p <= 1.0:
        raise BadParameters(f"p must lie in [0, 1], got {p!r}")
    h = p / 2
    rho = np.array(
        [
            [1 - p, 0, 0, 0],
            [0, h, -h, 0],
            [0, -h, h, 0],
            [0, 0, 0, 0],
        ],
        dtype=np.complex128,
    )
    return BipartiteState(rho, 2, 2)


def singlet() -> BipartiteState:
    psi = (np.kron(basis_vector(2, 0), basis_vector(2, 1)) - np.kron(basis_vector(2, 1), basis_vector(2, 0))) / math.sqrt(2)
    return pure(PureVector(psi, 2, 2))


def reductions(s: BipartiteState) -> tuple[np.ndarray, np.ndarray]:
    return (
        linalg.partial_trace(s.rho, s.d1, s.d2, keep=1),
        linalg.partial_trace(s.rho, s.d1, s.d2, keep=2),
    )


# Random generators used by the property and acceptance suites.


def random_pure_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_density(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Ginibre-distributed density matrix of the given rank (full rank by default)."""
    k = d if rank is None else rank
    g = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def random_product(d1: int, d2: int, rng: np.random.Generator, pure_factors: bool = False) -> BipartiteState:
    if pure_factors:
        a, b = random_pure_vector(d1, rng), random_pure_vector(d2, rng)
        return product(np.outer(a, a.conj()), np.outer(b, b.conj()))
    return product(random_density(d1, rng), random_density(d2, rng))


def random_separable(d1: int, d2: int, rng: np.random.Generator, terms: int | None = None) -> BipartiteState:
    """Random convex combination of 1-6 product states (pure or mixed factors)."""
    k = int(rng.integers(1, 7)) if terms is None else terms
    w = rng.dirichlet(np.ones(k))
    rho = np.zeros((d1 * d2, d1 * d2), dtype=np.complex128)
    for wi in w:
        if rng.integers(2):
            a, b = random_pure_vector(d1, rng), random_pure_vector(d2, rng)
            rho += wi * np.kron(np.outer(a, a.conj()), np.outer(b, b.conj()))
        else:
            rho += wi * np.kron(random_density(d1, rng), random_density(d2, rng))
    return BipartiteState(rho / np.trace(rho).real, d1, d2)
