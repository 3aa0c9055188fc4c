import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import random_hermitian
from sepcheck import criteria, linalg, maps, states, witness
from sepcheck.errors import DimensionMismatch, NotHermitian, StatePPT

R2 = 1 / math.sqrt(2)


def test_witness_singlet():
    w = witness.witness_from_npt(states.family_singlet_up(1.0), seed=3)
    assert w.violation == pytest.approx(-0.5, abs=1e-12)
    assert w.product_floor >= -witness.EPS_WITNESS
    assert w.certified
    assert linalg.is_hermitian(w.operator)


def test_witness_maximally_entangled():
    w = witness.witness_from_npt(states.family_two_pure(R2, R2, 1.0), seed=3)
    assert w.violation == pytest.approx(-0.5, abs=1e-12)


@pytest.mark.parametrize("a", [0.3, 0.6, R2])
def test_witness_refuses_ppt(a):
    with pytest.raises(StatePPT):
        witness.witness_from_npt(states.family_two_pure(a, math.sqrt(1 - a * a), 0.5))


def test_witness_evaluates_to_violation(rng):
    s = states.family_singlet_up(0.4)
    w = witness.witness_from_npt(s, restarts=8, seed=0)
    assert witness.evaluate(w.operator, s) == pytest.approx(w.violation, abs=1e-12)
    assert w.violation == pytest.approx(linalg.min_eigenvalue(s.partial_transpose()), abs=1e-10)


def test_verify_witness_known_floors():
    assert witness.verify_witness(maps.flip_operator(2), 2, 2, restarts=32, seed=1) == pytest.approx(0, abs=1e-6)
    assert witness.verify_witness(-np.eye(4), 2, 2, restarts=32, seed=1) == pytest.approx(-1, abs=1e-6)
    assert witness.verify_witness(np.eye(6), 2, 3, restarts=32, seed=1) == pytest.approx(1, abs=1e-6)
    assert witness.verify_witness(maps.flip_operator(3), 3, 3, restarts=32, seed=1) == pytest.approx(0, abs=1e-6)


def test_verify_witness_singlet_witness_64_restarts():
    w = witness.witness_from_npt(states.family_singlet_up(1.0), restarts=1, seed=0)
    assert witness.verify_witness(w.operator, 2, 2, restarts=64, seed=11) >= -1e-8


def test_verify_witness_detects_non_witness():
    # the singlet projector minus a small shift is not product-positive
    a = states.singlet().rho - 0.1 * np.eye(4)
    assert witness.verify_witness(a, 2, 2, restarts=16, seed=0) == pytest.approx(-0.1, abs=1e-9)
    # -flip has product minimum -1 (attained at e = f)
    assert witness.verify_witness(-maps.flip_operator(2), 2, 2, restarts=16, seed=0) == pytest.approx(-1, abs=1e-9)


def test_verify_witness_upper_bounds_true_minimum(rng):
    h = random_hermitian(6, rng)
    est = witness.verify_witness(h, 2, 3, restarts=32, seed=5)
    samples = maps.product_expectations(h, 2, 3, 20000, rng)
    assert est <= samples.min() + 1e-9
    assert est >= linalg.min_eigenvalue(h) - 1e-12


def test_verify_witness_deterministic_for_seed(rng):
    h = random_hermitian(4, rng)
    assert witness.verify_witness(h, 2, 2, restarts=8, seed=42) == witness.verify_witness(h, 2, 2, restarts=8, seed=42)


def test_restart_streams_are_independent_of_count():
    a = witness.random_unit_vectors(3, 4, seed=9)
    b = witness.random_unit_vectors(3, 10, seed=9)
    assert np.array_equal(a, b[:4])
    np.testing.assert_allclose(np.linalg.norm(b, axis=1), 1, atol=1e-15)


def test_verify_witness_errors():
    with pytest.raises(NotHermitian):
        witness.verify_witness([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]], 2, 2)
    with pytest.raises(DimensionMismatch):
        witness.verify_witness(np.eye(4), 2, 3)


def test_evaluate_examples():
    s = states.family_singlet_up(0.3)
    assert witness.evaluate(np.eye(4), s) == pytest.approx(1, abs=1e-15)
    assert witness.evaluate(maps.flip_operator(2), states.singlet()) == pytest.approx(-1, abs=1e-15)
    with pytest.raises(DimensionMismatch):
        witness.evaluate(np.eye(6), s)


def test_evaluate_rejects_complex_expectation():
    s = states.family_two_pure(0.6, 0.8, 0.3)
    a = np.zeros((4, 4), dtype=complex)
    a[0, 3] = 1j
    with pytest.raises(NotHermitian):
        witness.evaluate(a, s)


def _random_npt(d1, d2, g):
    while True:
        q = g.uniform(0.05, 1)
        psi = states.random_pure_vector(d1 * d2, g)
        sep = states.random_separable(d1, d2, g)
        s = states.BipartiteState(q * np.outer(psi, psi.conj()) + (1 - q) * sep.rho, d1, d2)
        if not criteria.ppt_test(s)[0]:
            return s


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([(2, 2), (2, 3), (3, 3)]))
def test_witness_soundness(seed, dims):
    g = np.random.default_rng(seed)
    s = _random_npt(*dims, g)
    w = witness.witness_from_npt(s, restarts=4, seed=seed)
    assert w.violation < 0
    assert w.violation == pytest.approx(linalg.min_eigenvalue(s.partial_transpose()), abs=1e-10)
    for _ in range(20):
        assert witness.evaluate(w.operator, states.random_separable(*dims, g)) >= -1e-9


@pytest.mark.parametrize("c", [0.01, 1.0, 37.5])
def test_positive_rescaling_preserves_signs(c, rng):
    s = states.family_singlet_up(0.6)
    w = witness.witness_from_npt(s, restarts=2, seed=0)
    sep = states.random_separable(2, 2, rng)
    for target in (s, sep):
        assert np.sign(witness.evaluate(c * w.operator, target)) == np.sign(witness.evaluate(w.operator, target))


def test_local_unitary_invariance(rng):
    s = _random_npt(2, 2, rng)

    def haar(d):
        q, r = np.linalg.qr(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
        return q * (np.diag(r) / np.abs(np.diag(r)))

    u = np.kron(haar(2), haar(2))
    t = states.BipartiteState(u @ s.rho @ u.conj().T, 2, 2)
    v1 = witness.witness_from_npt(s, restarts=2, seed=0).violation
    v2 = witness.witness_from_npt(t, restarts=2, seed=0).violation
    assert v1 == pytest.approx(v2, abs=1e-10)
