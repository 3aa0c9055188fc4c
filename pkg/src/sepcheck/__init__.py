"""Separability of bipartite mixed states: PPT verdicts, witnesses and positive-map calculus."""

__version__ = "0.1.0"

from sepcheck._accel import BACKEND
from sepcheck.criteria import (
    EntropyReport,
    Outcome,
    Verdict,
    alpha_entropy,
    criterion_comparison,
    det_shortcut,
    entropy_inequality,
    ppt_test,
    verdict,
)
from sepcheck.linalg import (
    Spectrum,
    dagger,
    eig_hermitian,
    hs_inner,
    kron,
    min_eigenvalue,
    partial_trace,
    partial_transpose,
)
from sepcheck.maps import (
    ChoiMatrix,
    DecomposableMap,
    KrausMap,
    Transposition,
    apply,
    choi,
    extend_and_apply,
    flip_operator,
    map_from_choi,
    p0_projector,
    positive_map_probe,
)
from sepcheck.states import (
    BipartiteState,
    PureVector,
    family_singlet_up,
    family_two_pure,
    mixture,
    product,
    pure,
    reductions,
)
from sepcheck.witness import Witness, evaluate, verify_witness, witness_from_npt
