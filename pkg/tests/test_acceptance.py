"""Acceptance gate.

Each test tags itself with ``record_property("acceptance", (num, title))`` and
the terminal summary (see conftest) prints one PASS/FAIL line per criterion.
Run alone with ``pytest tests/test_acceptance.py -v``.
Timings are taken after a warm-up call so numba compilation is excluded.
"""
import math
import statistics
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from oracles import charpoly_eigenvalues, det2, random_hermitian
from sepcheck import cli, criteria, linalg, maps, matrixfile, states, witness
from sepcheck.criteria import Outcome
from sepcheck.maps import Transposition

DATA = Path(__file__).parent / "data"


def _median_time(fn, reps):
    fn()
    ts = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        ts.append(time.perf_counter() - t0)
    return statistics.median(ts)


def _two_pure_expected(a, b, p):
    q = 1 - p
    rho = np.array(
        [
            [p * a * a, 0, 0, p * a * b],
            [0, q * a * a, q * a * b, 0],
            [0, q * a * b, q * b * b, 0],
            [p * a * b, 0, 0, p * b * b],
        ]
    )
    pt = np.array(
        [
            [p * a * a, 0, 0, q * a * b],
            [0, q * a * a, p * a * b, 0],
            [0, p * a * b, q * b * b, 0],
            [q * a * b, 0, 0, p * b * b],
        ]
    )
    return rho, pt


def _singlet_up_expected(p):
    h = p / 2
    rho = np.array([[1 - p, 0, 0, 0], [0, h, -h, 0], [0, -h, h, 0], [0, 0, 0, 0]])
    pt = np.array([[1 - p, 0, 0, -h], [0, h, 0, 0], [0, 0, h, 0], [-h, 0, 0, 0]])
    return rho, pt


def test_01_two_pure_golden(record_property):
    record_property("acceptance", (1, "two-pure matrices, W1 = 0.09216, W2 = -W1, < 1 ms"))
    a, b, p = 0.8, 0.6, 0.7
    rho, pt = _two_pure_expected(a, b, p)

    def run():
        s = states.family_two_pure(a, b, p)
        return s, s.partial_transpose(), criteria.det_shortcut(s), criteria.verdict(s)

    s, got_pt, (w1, w2), v = run()
    assert np.max(np.abs(s.rho - rho)) <= 1e-12
    assert np.max(np.abs(got_pt - pt)) <= 1e-12
    assert w1 == pytest.approx(0.09216, abs=1e-12)
    assert w2 == pytest.approx(-0.09216, abs=1e-12)
    assert v.outcome is Outcome.ENTANGLED
    golden = matrixfile.read(DATA / "two_pure_a0.8_p0.7.txt").matrix
    assert np.max(np.abs(golden - rho)) <= 1e-12
    elapsed = _median_time(run, 200)
    assert elapsed < 1e-3, f"median {elapsed * 1e3:.3f} ms"


def test_02_singlet_up_golden(record_property):
    record_property("acceptance", (2, "singlet-up matrices, negative determinant -p^2/4, verdicts"))
    for p in (0.1, 0.5, 1.0):
        rho, pt = _singlet_up_expected(p)
        s = states.family_singlet_up(p)
        assert np.max(np.abs(s.rho - rho)) <= 1e-12
        assert np.max(np.abs(s.partial_transpose() - pt)) <= 1e-12
        w1, w2 = criteria.det_shortcut(s)
        # W1 is the {11, 22} block; the {12, 21} block stays positive
        assert w1 == pytest.approx(det2(pt[np.ix_([0, 3], [0, 3])]), abs=1e-12)
        assert w1 == pytest.approx(-p * p / 4, abs=1e-12)
        assert w2 == pytest.approx(p * p / 4, abs=1e-12)
        golden = matrixfile.read(DATA / f"singlet_up_p{p}.txt").matrix
        assert np.max(np.abs(golden - rho)) <= 1e-12
    for p in [k / 100 for k in range(1, 101)]:
        assert criteria.verdict(states.family_singlet_up(p)).outcome is Outcome.ENTANGLED
    assert criteria.verdict(states.family_singlet_up(0.0)).outcome is Outcome.SEPARABLE


def test_03_two_pure_boundary(record_property):
    record_property("acceptance", (3, "two-pure grid Entangled except p = 1/2, < 1 s"))
    ps = [k / 100 for k in range(101)]
    as_ = [k / 10 for k in range(1, 10)]

    def run():
        return {
            (a, p): criteria.verdict(states.family_two_pure(a, math.sqrt(1 - a * a), p)).outcome
            for a in as_
            for p in ps
        }

    criteria.verdict(states.family_two_pure(0.5, math.sqrt(0.75), 0.3))
    t0 = time.perf_counter()
    grid = run()
    elapsed = time.perf_counter() - t0
    for (a, p), outcome in grid.items():
        expected = Outcome.SEPARABLE if p == 0.5 else Outcome.ENTANGLED
        assert outcome is expected, (a, p)
    assert elapsed < 1.0, f"{elapsed:.3f} s"


def test_04_entropy_vs_ppt(record_property):
    record_property("acceptance", (4, "singlet-up alpha=2 flag true for p <= 0.33, false for p >= 0.34"))
    grid = [k / 1000 for k in range(1001)]
    flags = {p: criteria.entropy_inequality(states.family_singlet_up(p), 2).satisfied for p in grid}
    for p in grid[1:]:
        assert criteria.verdict(states.family_singlet_up(p)).outcome is Outcome.ENTANGLED
    wrong_low = [p for p in grid if p <= 0.33 and not flags[p]]
    wrong_high = [p for p in grid if p >= 0.34 and flags[p]]
    flips = [p for p, q in zip(grid, grid[1:]) if flags[p] != flags[q]]
    assert not wrong_low and not wrong_high, (
        f"flag flips after p = {flips}; {len(wrong_high)} points >= 0.34 still satisfy the inequality"
    )
    assert len(flips) == 1 and abs(flips[0] - 1 / 3) <= 0.01


def _random_npt_2x2(g):
    while True:
        q = g.uniform(0.05, 1)
        psi = states.random_pure_vector(4, g)
        sep = states.random_separable(2, 2, g)
        s = states.BipartiteState(q * np.outer(psi, psi.conj()) + (1 - q) * sep.rho, 2, 2)
        if not criteria.ppt_test(s)[0]:
            return s


def test_05_witness_soundness(record_property):
    record_property("acceptance", (5, "witness soundness on 50 NPT states x 200 separable, < 10 s"))
    g = np.random.default_rng(5)
    witness.witness_from_npt(states.singlet(), restarts=2, seed=0)
    t0 = time.perf_counter()
    for k in range(50):
        s = _random_npt_2x2(g)
        w = witness.witness_from_npt(s, seed=k)
        lam = linalg.min_eigenvalue(s.partial_transpose())
        assert w.violation < 0
        assert w.violation == pytest.approx(lam, abs=1e-10)
        assert witness.evaluate(w.operator, s) == pytest.approx(w.violation, abs=1e-10)
        for _ in range(200):
            assert witness.evaluate(w.operator, states.random_separable(2, 2, g)) >= -1e-9
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0, f"{elapsed:.2f} s"


def test_06_choi_roundtrip(record_property):
    record_property("acceptance", (6, "Choi roundtrip, choi(T) = flip, min eig -1, product floor >= -1e-8"))
    g = np.random.default_rng(6)
    basis = [maps.matrix_unit(2, i, j) for i in range(2) for j in range(2)]
    candidates = [maps.identity_map(2), Transposition(2)] + [maps.random_kraus_map(2, 2, 2, g) for _ in range(5)]
    for m in candidates:
        back = maps.map_from_choi(maps.choi(m))
        for x in basis:
            assert np.max(np.abs(maps.apply(back, x) - maps.apply(m, x))) <= 1e-10
    c = maps.choi(Transposition(2)).matrix
    assert np.array_equal(c, maps.flip_operator(2))
    assert linalg.min_eigenvalue(c) == pytest.approx(-1, abs=1e-9)
    assert witness.verify_witness(c, 2, 2, seed=6) >= -1e-8


def test_07_positive_maps_on_separable(record_property):
    record_property("acceptance", (7, "extended positive maps keep 100 separable states PSD"))
    g = np.random.default_rng(7)
    for _ in range(100):
        d1, d2 = int(g.integers(1, 4)), int(g.integers(1, 4))
        s = states.random_separable(d1, d2, g)
        probes = [Transposition(d2)] + [maps.random_decomposable(d2, int(g.integers(1, 4)), g) for _ in range(3)]
        for m in probes:
            out = maps.extend_and_apply(m, s)
            assert linalg.is_hermitian(out)
            assert linalg.min_eigenvalue(0.5 * (out + out.conj().T)) >= -linalg.EPS_PSD
        assert maps.positive_map_probe(s, probes) == (True, None)


def test_08_dimension_gate(record_property):
    record_property("acceptance", (8, "PPT 3x3 state I9/9 is Undecided"))
    v = criteria.verdict(states.maximally_mixed(3, 3))
    assert v.outcome is Outcome.UNDECIDED
    assert v.evidence.min_eig_pt == pytest.approx(1 / 9, abs=1e-12)
    assert v.exit_code == 2


def test_09_eigensolver_oracle(record_property):
    record_property("acceptance", (9, "Jacobi spectra match characteristic-polynomial roots within 1e-8"))
    g = np.random.default_rng(9)
    for _ in range(100):
        n = int(g.integers(2, 9))
        h = random_hermitian(n, g)
        got = linalg.eig_hermitian(h).eigenvalues
        assert np.max(np.abs(got - charpoly_eigenvalues(h))) <= 1e-8


GOLDEN_EXIT = {
    "two_pure_a0.8_p0.7.txt": 1,
    "singlet_up_p0.1.txt": 1,
    "singlet_up_p0.5.txt": 1,
    "singlet_up_p1.0.txt": 1,
    "up_up.txt": 0,
}


def test_10_cli_determinism(record_property, tmp_path):
    record_property("acceptance", (10, "sweep CSV byte-identical across runs, check exit codes on golden files"))
    args = ["sweep", "singlet-up", "--grid", "p=0:1:0.01", "--seed", "17"]
    outs = []
    for k in range(2):
        target = tmp_path / f"run{k}.csv"
        proc = subprocess.run([sys.executable, "-m", "sepcheck", *args, "--out", str(target)], check=False)
        assert proc.returncode == 0
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]
    assert outs[0].count(b"\n") == 5 + 101
    in_process = cli.sweep_csv("singlet-up", "p=0:1:0.01", 17).encode()
    assert in_process == outs[0]
    two = cli.sweep_csv("two-pure", "a=0.1:0.9:0.1,p=0:1:0.05", 17)
    assert two == cli.sweep_csv("two-pure", "a=0.1:0.9:0.1,p=0:1:0.05", 17)
    for name, code in GOLDEN_EXIT.items():
        assert cli.main(["check", str(DATA / name)]) == code, name
