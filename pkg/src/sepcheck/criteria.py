"""Separability tests: PPT, the dimension-aware verdict, the 2x2 determinant shortcut
and alpha-entropy inequalities.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from sepcheck import linalg
from sepcheck.errors import InvalidAlpha, WrongDims
from sepcheck.states import BipartiteState, reductions, validate_density

EPS_ENTROPY = 1e-9
EPS_DET = 1e-12
# Largest d1*d2 for which PPT is also sufficient (2x2 and 2x3).
PPT_SUFFICIENT_MAX_DIM = 6

INF = math.inf
DEFAULT_ALPHAS = (1.0, 2.0, INF)


class Outcome(str, enum.Enum):
    SEPARABLE = "Separable"
    ENTANGLED = "Entangled"
    UNDECIDED = "Undecided"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Evidence:
    min_eig_pt: float
    dims: tuple[int, int]
    determinants: tuple[float, float] | None = None


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    evidence: Evidence

    @property
    def exit_code(self) -> int:
        return {Outcome.SEPARABLE: 0, Outcome.ENTANGLED: 1, Outcome.UNDECIDED: 2}[self.outcome]


def ppt_test(s: BipartiteState) -> tuple[bool, float]:
    """Return ``(rho^T2 is PSD within 1e-9, min eigenvalue of rho^T2)``."""
    lam = linalg.min_eigenvalue(s.partial_transpose())
    return lam >= -linalg.EPS_PSD, lam


def verdict(s: BipartiteState) -> Verdict:
    """Entangled if NPT; otherwise Separable for d1*d2 <= 6 and Undecided above.

    The determinant shortcut is attached as evidence for 2x2 inputs but never
    consulted for the decision.
    """
    ok, lam = ppt_test(s)
    dets = det_shortcut(s) if s.dims == (2, 2) else None
    ev = Evidence(min_eig_pt=lam, dims=s.dims, determinants=dets)
    if not ok:
        return Verdict(Outcome.ENTANGLED, ev)
    if s.dim <= PPT_SUFFICIENT_MAX_DIM:
        return Verdict(Outcome.SEPARABLE, ev)
    return Verdict(Outcome.UNDECIDED, ev)


def det_shortcut(s: BipartiteState) -> tuple[float, float]:
    """The two 2x2 principal minors of rho^T2 on index pairs {11, 22} and {12, 21}."""
    if s.dims != (2, 2):
        raise WrongDims(f"determinant shortcut needs a 2x2 system, got {s.d1}x{s.d2}")
    r = s.partial_transpose()
    # row index m*2 + mu: 11 -> 0, 12 -> 1, 21 -> 2, 22 -> 3
    w1 = r[0, 0] * r[3, 3] - r[0, 3] * r[3, 0]
    w2 = r[1, 1] * r[2, 2] - r[1, 2] * r[2, 1]
    return float(w1.real), float(w2.real)


def parse_alpha(token) -> float:
    """Accept 1, any real > 1, or inf (also the strings ``"inf"``/``"infinity"``)."""
    if isinstance(token, str):
        t = token.strip().lower()
        if t in ("inf", "infinity", "oo"):
            return INF
        try:
            token = float(t)
        except ValueError:
            raise InvalidAlpha(f"cannot parse alpha {token!r}") from None
    try:
        alpha = float(token)
    except (TypeError, ValueError):
        raise InvalidAlpha(f"cannot parse alpha {token!r}") from None
    if math.isnan(alpha) or alpha < 1.0:
        raise InvalidAlpha(f"alpha must be 1, a real > 1, or inf; got {token!r}")
    return alpha


def _spectrum_for_entropy(rho) -> np.ndarray:
    w = np.asarray(linalg.eig_hermitian(rho).eigenvalues)
    return np.clip(w, 0.0, 1.0)


def alpha_entropy(rho, alpha) -> float:
    """Renyi entropy in nats; alpha = 1 is von Neumann and alpha = inf is -ln(lambda_max)."""
    alpha = parse_alpha(alpha)
    lam = _spectrum_for_entropy(validate_density(rho, "density matrix"))
    if alpha == 1.0:
        nz = lam[lam > 0.0]
        return float(-np.sum(nz * np.log(nz))) + 0.0
    if math.isinf(alpha):
        return float(-math.log(lam.max())) + 0.0
    return float(math.log(np.sum(lam**alpha)) / (1.0 - alpha)) + 0.0


@dataclass(frozen=True)
class EntropyReport:
    """Both sides of the alpha-entropy inequality for one state.

    ``satisfied`` is the separability-consistent direction
    ``max(S(rho_1), S(rho_2)) <= S(rho)`` (within 1e-9). Separable states always
    satisfy it; a violation certifies entanglement.
    """

    alpha: float
    s_total: float
    s_red1: float
    s_red2: float
    satisfied: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "satisfied", self.max_reduction <= self.s_total + EPS_ENTROPY)

    @property
    def max_reduction(self) -> float:
        return max(self.s_red1, self.s_red2)

    @property
    def alpha_label(self) -> str:
        return format_alpha(self.alpha)


def format_alpha(alpha: float) -> str:
    if math.isinf(alpha):
        return "inf"
    return f"{alpha:g}"


def entropy_inequality(s: BipartiteState, alpha) -> EntropyReport:
    alpha = parse_alpha(alpha)
    r1, r2 = reductions(s)
    return EntropyReport(
        alpha=alpha,
        s_total=alpha_entropy(s.rho, alpha),
        s_red1=alpha_entropy(r1, alpha),
        s_red2=alpha_entropy(r2, alpha),
    )


@dataclass(frozen=True)
class ComparisonReport:
    verdict: Verdict
    entropy: dict[str, EntropyReport]

    @property
    def ppt_ok(self) -> bool:
        return self.verdict.outcome is not Outcome.ENTANGLED

    @property
    def entropy_ok(self) -> bool:
        return all(r.satisfied for r in self.entropy.values())

    @property
    def all_pass(self) -> bool:
        return self.ppt_ok and self.entropy_ok

    @property
    def ppt_stronger(self) -> bool:
        """True when PPT detects entanglement that every entropy inequality misses."""
        return not self.ppt_ok and self.entropy_ok


def criterion_comparison(s: BipartiteState, alphas=DEFAULT_ALPHAS) -> ComparisonReport:
    if s.dims != (2, 2):
        raise WrongDims(f"criterion comparison is defined for 2x2 systems, got {s.d1}x{s.d2}")
    reports = {}
    for a in alphas:
        rep = entropy_inequality(s, a)
        reports[rep.alpha_label] = rep
    return ComparisonReport(verdict=verdict(s), entropy=reports)
