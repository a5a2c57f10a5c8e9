"""Symmetry-verification error mitigation for MaxCut QAOA: simulation and closed-form theory."""

__version__ = "0.1.0"

from .errors import (
    GenerationError,
    InvalidArgumentError,
    PostselectionError,
    ResourceLimitError,
    UnsupportedChannelError,
)
from .graphs import Graph, MaxCutInstance, build_instance, random_regular, small_graph_catalog
from .noise import NoiseSpec, layered_noisy_qaoa, noisy_gate_run
from .pauli import PauliString, commutes, f_dephasing, f_depolarizing
from .qaoa import QaoaParams, decompose, objective, optimize_params, qaoa_state_exact
from .symmetry import SVOutcome, SymmetryOp, eigenprojector_plus, sv_ideal, sv_noisy
from .theory import ratio_dephasing, ratio_depolarizing, script_f_sum
