import numpy as np
import pytest

from sepcheck import _kernels

BACKENDS = {
    "numba": (_kernels.jacobi_loops, _kernels.altmin_loops),
    "numpy": (_kernels.jacobi_numpy, _kernels.altmin_numpy),
}


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(params=sorted(BACKENDS))
def kernels(request):
    return BACKENDS[request.param]


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if getattr(rep, "when", None) != "call":
                continue
            for name, value in rep.user_properties:
                if name == "acceptance":
                    lines.append((value, "PASS" if rep.passed else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for (num, title), status in sorted(lines):
            terminalreporter.write_line(f"[{status}] criterion {num:>2}: {title}")
