"""
Symmetry operators, +1 eigenspace projectors and symmetry-verification runs.

Two verification paths exist:

* ``sv_ideal`` applies the dense projector to a given noisy state (noise-free check);
* ``sv_noisy`` appends an ancilla parity check for the bit-flip symmetry and runs
  the whole circuit, check included, under gate-level noise.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .dense import (
    DensityState,
    StateVector,
    fidelity_pure,
    postselect_qubit,
    project,
)
from .errors import InvalidArgumentError, ResourceLimitError
from .graphs import MaxCutInstance
from .noise import GATE_KIND, NoiseSpec, noisy_gate_run
from .qaoa import Gate, GateCircuit, QaoaParams, concatenate, decompose, objective, qaoa_state_exact
from .trajectories import ratio_estimate, sample_expectations

MAX_PROJECTOR_QUBITS = 10
EXACT_ENGINE_MAX_QUBITS = 12


@dataclass(frozen=True)
class SymmetryOp:
    """
    Qubit representation of a symmetry of the cost function.

    ``kind`` is ``"bitflip"``, ``"transposition"`` or ``"cycle"``.  For the
    permutation kinds, ``nodes`` lists the moved nodes and node ``nodes[k]``
    is sent to ``nodes[k + 1]`` (cyclically).
    """

    kind: str
    n_qubits: int
    nodes: tuple = ()

    def __post_init__(self):
        if self.kind == "bitflip":
            if self.nodes:
                raise InvalidArgumentError("bitflip takes no nodes")
        elif self.kind in ("transposition", "cycle"):
            if len(set(self.nodes)) != len(self.nodes) or len(self.nodes) < 2:
                raise InvalidArgumentError(f"invalid node list {self.nodes}")
            if self.kind == "transposition" and len(self.nodes) != 2:
                raise InvalidArgumentError("a transposition moves exactly two nodes")
            if any(not 0 <= v < self.n_qubits for v in self.nodes):
                raise InvalidArgumentError(f"nodes {self.nodes} out of range")
        else:
            raise InvalidArgumentError(f"unknown symmetry kind {self.kind!r}")

    @classmethod
    def bitflip(cls, n: int) -> "SymmetryOp":
        return cls("bitflip", n)

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "SymmetryOp":
        return cls("transposition", n, (int(i), int(j)))

    @classmethod
    def cycle(cls, n: int, nodes: Sequence[int]) -> "SymmetryOp":
        return cls("cycle", n, tuple(int(v) for v in nodes))

    @property
    def order(self) -> int:
        return 2 if self.kind != "cycle" else len(self.nodes)

    def node_permutation(self) -> list:
        """``perm[i]`` is the image of node ``i``; identity for the bit flip."""
        perm = list(range(self.n_qubits))
        k = len(self.nodes)
        for a in range(k):
            perm[self.nodes[a]] = self.nodes[(a + 1) % k]
        return perm

    def index_map(self) -> np.ndarray:
        """``m`` with ``S |x> = |m[x]>``."""
        n = self.n_qubits
        x = np.arange(1 << n, dtype=np.int64)
        if self.kind == "bitflip":
            return x ^ ((1 << n) - 1)
        out = np.zeros_like(x)
        for i, target in enumerate(self.node_permutation()):
            out |= ((x >> i) & 1) << target
        return out

    def apply(self, psi: StateVector) -> StateVector:
        out = np.empty_like(psi.amplitudes)
        out[self.index_map()] = psi.amplitudes
        return StateVector(out, psi.n_qubits)

    def matrix(self) -> np.ndarray:
        if self.n_qubits > MAX_PROJECTOR_QUBITS:
            raise ResourceLimitError(f"dense symmetry matrices limited to {MAX_PROJECTOR_QUBITS} qubits")
        dim = 1 << self.n_qubits
        m = np.zeros((dim, dim), dtype=complex)
        m[self.index_map(), np.arange(dim)] = 1.0
        return m


def eigenprojector_plus(sym: SymmetryOp) -> np.ndarray:
    """Projector onto the +1 eigenspace: the average of ``S^k`` for ``k < order``."""
    if sym.n_qubits > MAX_PROJECTOR_QUBITS:
        raise ResourceLimitError(f"projectors limited to {MAX_PROJECTOR_QUBITS} qubits")
    dim = 1 << sym.n_qubits
    step = sym.index_map()
    cols = np.arange(dim)
    images = cols.copy()
    proj = np.zeros((dim, dim), dtype=complex)
    for _ in range(sym.order):
        np.add.at(proj, (images, cols), 1.0)
        images = step[images]
    return proj / sym.order


def r_metric(obj_sv: float, obj_no_sv: float) -> float:
    """Relative objective change from verification, ``<H>_SV / <H>_noSV - 1``."""
    if not obj_no_sv > 0:
        raise InvalidArgumentError(f"obj_no_sv must be positive, got {obj_no_sv}")
    return obj_sv / obj_no_sv - 1.0


@dataclass
class SVOutcome:
    f_noisy: float
    f_sv: float
    postselect_prob: float
    obj_no_sv: float
    obj_sv: float
    ratio: float
    r_metric: float
    engine: str = "exact"
    obj_no_sv_se: float = 0.0
    obj_sv_se: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **identifiers) -> str:
        return json.dumps({**identifiers, **self.to_dict()})


def _safe_r(obj_sv, obj_no_sv):
    return r_metric(obj_sv, obj_no_sv) if obj_no_sv > 0 else math.nan


def sv_ideal(rho: DensityState, sym: SymmetryOp, psi_ideal: StateVector, inst: MaxCutInstance) -> SVOutcome:
    """Noise-free parity check: project ``rho`` onto the +1 eigenspace of ``sym``."""
    if not (rho.n_qubits == sym.n_qubits == psi_ideal.n_qubits == inst.n_qubits):
        raise InvalidArgumentError("state, symmetry and instance sizes differ")
    rho_sv, prob = project(rho, eigenprojector_plus(sym))
    f_noisy = fidelity_pure(rho, psi_ideal)
    f_sv = fidelity_pure(rho_sv, psi_ideal)
    obj_no_sv = objective(inst, rho)
    obj_sv = objective(inst, rho_sv)
    ratio = f_sv / f_noisy if f_noisy > 0 else math.nan
    return SVOutcome(f_noisy, f_sv, prob, obj_no_sv, obj_sv, ratio, _safe_r(obj_sv, obj_no_sv))


def parity_check_circuit(n: int) -> GateCircuit:
    """Hadamard-test check of the all-X symmetry with the ancilla at qubit ``n``."""
    gates = [Gate("H", (n,))]
    gates += [Gate("CX", (n, q)) for q in range(n)]
    gates.append(Gate("H", (n,)))
    return GateCircuit(n + 1, tuple(gates), (n,))


def choose_engine(n_data: int, engine: str = "auto") -> str:
    if engine == "auto":
        return "exact" if n_data + 1 <= EXACT_ENGINE_MAX_QUBITS else "trajectory"
    if engine not in ("exact", "trajectory"):
        raise InvalidArgumentError(f"unknown engine {engine!r}")
    return engine


def sv_noisy(
    inst: MaxCutInstance,
    params: QaoaParams,
    spec: NoiseSpec,
    engine: str = "auto",
    shots: int = 50_000,
    seed: int = 0,
) -> SVOutcome:
    """
    Gate-level noisy QAOA with and without a noisy bit-flip parity check.

    The exact engine postselects the ancilla on |0> in the density matrix; the
    trajectory engine estimates the conditional objective as a ratio of
    per-shot means and leaves the fidelity fields as NaN.
    """
    if spec.kind != GATE_KIND:
        raise InvalidArgumentError(f"sv_noisy needs gate-level noise, got {spec.kind!r}")
    n = inst.n_qubits
    engine = choose_engine(n, engine)
    qaoa = decompose(inst, params)
    full = concatenate(qaoa, parity_check_circuit(n))

    if engine == "exact":
        rho_no_sv = noisy_gate_run(qaoa, spec)
        rho_full = noisy_gate_run(full, spec)
        rho_sv, prob = postselect_qubit(rho_full, n, 0)
        psi = qaoa_state_exact(inst, params)
        f_noisy = fidelity_pure(rho_no_sv, psi)
        f_sv = fidelity_pure(rho_sv, psi)
        obj_no_sv = objective(inst, rho_no_sv)
        obj_sv = objective(inst, rho_sv)
        return SVOutcome(
            f_noisy, f_sv, prob, obj_no_sv, obj_sv, f_sv / f_noisy, _safe_r(obj_sv, obj_no_sv)
        )

    cost = inst.cost_diagonal
    no_sv = sample_expectations(qaoa, spec, [cost], shots, seed)[:, 0]
    anc0 = np.concatenate([np.ones_like(cost), np.zeros_like(cost)])
    with_sv = sample_expectations(full, spec, [anc0, np.concatenate([cost, np.zeros_like(cost)])], shots, seed)
    prob = float(with_sv[:, 0].mean())
    obj_sv, obj_sv_se = ratio_estimate(with_sv[:, 1], with_sv[:, 0])
    obj_no_sv = float(no_sv.mean())
    obj_no_sv_se = float(no_sv.std(ddof=1) / np.sqrt(shots)) if shots > 1 and not spec.is_noiseless else 0.0
    if spec.is_noiseless:
        obj_sv_se = 0.0
    return SVOutcome(
        math.nan, math.nan, prob, obj_no_sv, obj_sv, math.nan,
        _safe_r(obj_sv, obj_no_sv), "trajectory", obj_no_sv_se, obj_sv_se,
    )
