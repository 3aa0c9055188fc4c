"""Linear maps on operator spaces.

Three concrete map types are provided: :class:`KrausMap` (completely positive
by construction), the distinguished :class:`Transposition` (positive but not
completely positive, no Kraus form), and :class:`DecomposableMap`
``cp1 + cp2 o T``. Arbitrary linear maps are handled through their Choi
matrix, see :func:`choi` and :func:`map_from_choi`.

The Choi matrix uses the matrix-unit basis ``P_ij = |i><j|``::

    C(L) = sum_ij P_ij (x) L(P_ij)

so block ``(i, j)`` of ``C`` (size dout x dout) is ``L(P_ij)``. With this
convention the identity map goes to ``d * P0`` and transposition to the swap.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from sepcheck import linalg
from sepcheck.errors import DimensionMismatch
from sepcheck.states import BipartiteState


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False, init=False)
class KrausMap:
    """X -> sum_i K_i X K_i^H with every K_i of shape (dout, din)."""

    kraus_ops: tuple
    din: int
    dout: int

    def __init__(self, kraus_ops: Sequence):
        ops = [np.asarray(k, dtype=np.complex128) for k in kraus_ops]
        if not ops:
            raise ValueError("a Kraus map needs at least one operator")
        shapes = {k.shape for k in ops}
        if len(shapes) != 1 or ops[0].ndim != 2:
            raise DimensionMismatch(f"Kraus operators must share one 2-D shape, got {sorted(shapes)}")
        if not all(np.all(np.isfinite(k)) for k in ops):
            raise ValueError("Kraus operators contain NaN or infinite entries")
        dout, din = ops[0].shape
        object.__setattr__(self, "kraus_ops", tuple(_readonly(k) for k in ops))
        object.__setattr__(self, "din", din)
        object.__setattr__(self, "dout", dout)

    def _apply_batch(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros(x.shape[:-2] + (self.dout, self.dout), dtype=np.complex128)
        for k in self.kraus_ops:
            out += k @ x @ k.conj().T
        return out


@dataclass(frozen=True)
class Transposition:
    """Transposition in the standard basis on d x d matrices."""

    d: int

    @property
    def din(self) -> int:
        return self.d

    @property
    def dout(self) -> int:
        return self.d

    def _apply_batch(self, x: np.ndarray) -> np.ndarray:
        return np.swapaxes(x, -1, -2).copy()


@dataclass(frozen=True, eq=False)
class DecomposableMap:
    """cp1 + cp2 o T."""

    cp1: KrausMap
    cp2: KrausMap

    def __post_init__(self):
        if (self.cp1.din, self.cp1.dout) != (self.cp2.din, self.cp2.dout):
            raise DimensionMismatch(
                f"components map {self.cp1.din}->{self.cp1.dout} and {self.cp2.din}->{self.cp2.dout}"
            )

    @property
    def din(self) -> int:
        return self.cp1.din

    @property
    def dout(self) -> int:
        return self.cp1.dout

    def _apply_batch(self, x: np.ndarray) -> np.ndarray:
        return self.cp1._apply_batch(x) + self.cp2._apply_batch(np.swapaxes(x, -1, -2))


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    matrix: np.ndarray
    din: int
    dout: int

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        if m.shape[0] != self.din * self.dout:
            raise DimensionMismatch(f"Choi matrix of dim {m.shape[0]} does not match {self.din}x{self.dout}")
        object.__setattr__(self, "matrix", _readonly(m))

    def is_hermitian(self) -> bool:
        return linalg.is_hermitian(self.matrix)

    def is_psd(self) -> bool:
        return self.is_hermitian() and linalg.is_psd(self.matrix)


@dataclass(frozen=True, eq=False)
class ChoiMap:
    """Linear map reconstructed from its Choi matrix: L(X) = sum_ij X_ij C_block(i, j)."""

    choi: ChoiMatrix

    @property
    def din(self) -> int:
        return self.choi.din

    @property
    def dout(self) -> int:
        return self.choi.dout

    def _apply_batch(self, x: np.ndarray) -> np.ndarray:
        c4 = self.choi.matrix.reshape(self.din, self.dout, self.din, self.dout)
        return np.einsum("...ij,iajb->...ab", x, c4)


LinearMap = Union[KrausMap, Transposition, DecomposableMap, ChoiMap]


def identity_map(d: int) -> KrausMap:
    return KrausMap([np.eye(d)])


def apply(m: LinearMap, x) -> np.ndarray:
    x = linalg.as_matrix(x)
    if x.shape[0] != m.din:
        raise DimensionMismatch(f"map expects {m.din}x{m.din} input, got {x.shape}")
    return m._apply_batch(x)


def matrix_unit(d: int, i: int, j: int) -> np.ndarray:
    u = np.zeros((d, d), dtype=np.complex128)
    u[i, j] = 1.0
    return u


def choi(m: LinearMap) -> ChoiMatrix:
    if isinstance(m, ChoiMap):
        return m.choi
    din, dout = m.din, m.dout
    units = np.zeros((din, din, din, din), dtype=np.complex128)  # [i, j] = P_ij
    idx = np.arange(din)
    units[idx[:, None], idx[None, :], idx[:, None], idx[None, :]] = 1.0
    images = m._apply_batch(units)  # [i, j, a, b] = L(P_ij)[a, b]
    c = images.transpose(0, 2, 1, 3).reshape(din * dout, din * dout)
    return ChoiMatrix(c, din, dout)


def map_from_choi(c: ChoiMatrix) -> ChoiMap:
    return ChoiMap(c)


def p0_projector(d: int) -> np.ndarray:
    """(1/d) sum_ij P_ji (x) P_ji: projector onto (1/sqrt d) sum_i e_i (x) e_i."""
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    phi = np.eye(d, dtype=np.complex128).ravel() / np.sqrt(d)
    return np.outer(phi, phi.conj())


def flip_operator(d: int) -> np.ndarray:
    """Swap V on C^d (x) C^d: V (x (x) y) = y (x) x."""
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    v = np.zeros((d * d, d * d), dtype=np.complex128)
    i, j = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    v[(j * d + i).ravel(), (i * d + j).ravel()] = 1.0
    return v


def extend_and_apply(m: LinearMap, s: BipartiteState, side: int = 2) -> np.ndarray:
    """(I (x) L) rho for side=2, (L (x) I) rho for side=1."""
    d1, d2 = s.d1, s.d2
    r4 = s.rho.reshape(d1, d2, d1, d2)
    if side == 2:
        if m.din != d2:
            raise DimensionMismatch(f"map input dim {m.din} does not match subsystem 2 dim {d2}")
        out = m._apply_batch(r4.transpose(0, 2, 1, 3))  # [m, n, a, b]
        return out.transpose(0, 2, 1, 3).reshape(d1 * m.dout, d1 * m.dout)
    if side == 1:
        if m.din != d1:
            raise DimensionMismatch(f"map input dim {m.din} does not match subsystem 1 dim {d1}")
        out = m._apply_batch(r4.transpose(1, 3, 0, 2))  # [mu, nu, a, b]
        return out.transpose(2, 0, 3, 1).reshape(m.dout * d2, m.dout * d2)
    raise ValueError(f"side must be 1 or 2, got {side!r}")


def positive_map_probe(s: BipartiteState, maps: Sequence[LinearMap], side: int = 2) -> tuple[bool, int | None]:
    """Apply each extended map; ``(False, i)`` at the first non-PSD image, else ``(True, None)``.

    A ``False`` certifies entanglement, provided map ``i`` is positive. ``True``
    only means none of the given maps detected anything.
    """
    for i, m in enumerate(maps):
        out = extend_and_apply(m, s, side)
        out = 0.5 * (out + out.conj().T)
        if not linalg.is_psd(out):
            return False, i
    return True, None


def product_expectations(c, d1: int, d2: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """<e (x) f| c |e (x) f> for ``n`` random unit product vectors."""
    c = linalg.as_matrix(c)
    e = rng.standard_normal((n, d1)) + 1j * rng.standard_normal((n, d1))
    f = rng.standard_normal((n, d2)) + 1j * rng.standard_normal((n, d2))
    e /= np.linalg.norm(e, axis=1, keepdims=True)
    f /= np.linalg.norm(f, axis=1, keepdims=True)
    x = np.einsum("ka,kb->kab", e, f).reshape(n, d1 * d2)
    return np.einsum("ki,ij,kj->k", x.conj(), c, x).real


def random_kraus_map(din: int, dout: int, n_ops: int, rng: np.random.Generator) -> KrausMap:
    ops = [rng.standard_normal((dout, din)) + 1j * rng.standard_normal((dout, din)) for _ in range(n_ops)]
    return KrausMap([k / np.sqrt(n_ops * din) for k in ops])


def random_decomposable(din: int, dout: int, rng: np.random.Generator, n_ops: int = 2) -> DecomposableMap:
    return DecomposableMap(random_kraus_map(din, dout, n_ops, rng), random_kraus_map(din, dout, n_ops, rng))
